"""Theta series, flatness factors and smoothing parameters of unimodular and
Construction A lattices, with exact checks on the h-basis form of the theta
series ratio."""

__version__ = "0.1.0"

from .codes import (  # noqa: E402
    BinaryLinearCode,
    CodeCatalogEntry,
    WeightDistribution,
    is_self_dual,
    load_catalog,
    macwilliams_transform,
    pure_double_circulant,
    ub_distribution,
    weight_distribution,
)
from .criteria import (  # noqa: E402
    global_min_check,
    necessary_condition,
    sufficient_condition,
    ushape_exact,
    ushape_sampled,
)
from .ensemble import EnsembleSpec, ensemble_ratio, ensemble_ushape_check, expected_weight_enumerator  # noqa: E402
from .numerics import (  # noqa: E402
    PrecisionReal,
    ThetaArgument,
    h_eval,
    precision,
    t_of_tau,
    theta2,
    theta3,
    theta3_upper_bound,
    theta4,
)
from .ratio import (  # noqa: E402
    LatticeSpec,
    RatioPolynomial,
    decompose_h_basis,
    ratio_eval,
    ratio_poly_from_code,
    scaled_ratio_eval,
    theta_eval,
)
from .secrecy import (  # noqa: E402
    figure1_sweep,
    flatness_factor,
    smoothing_parameter,
    tau_eps_solve,
    tau_lower_bound_solve,
)
