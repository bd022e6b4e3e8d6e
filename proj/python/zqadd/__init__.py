"""Exact additive structure in Z_q: sumsets, impact functions, digital sets and chains."""

import json as _json

from . import _zqadd
from ._zqadd import (
    BudgetExceeded,
    InvalidArgument,
    ResidueSet,
    alpha,
    alpha_profile,
    digital_set_at,
    digital_set_count,
    interval,
    is_digital,
    min_alpha,
    parse_set,
    period_order,
    prime_condition,
    seminorm,
    suites,
)

__all__ = [
    "BudgetExceeded",
    "InvalidArgument",
    "ResidueSet",
    "alpha",
    "alpha_profile",
    "carries",
    "carry_extremality",
    "chains",
    "construction",
    "decompose",
    "digital_set_at",
    "digital_set_count",
    "interval",
    "is_digital",
    "kneser",
    "min_alpha",
    "mu",
    "normalize",
    "parse_set",
    "period_order",
    "pluennecke",
    "prime_condition",
    "projection",
    "range_thresholds",
    "ruzsa",
    "run_suite",
    "seminorm",
    "sidon",
    "stability",
    "suites",
    "uniqueness",
    "xi",
    "xi2_xi3",
]


def _decoded(name):
    raw = getattr(_zqadd, name)

    def call(*args, **kwargs):
        return _json.loads(raw(*args, **kwargs))

    call.__name__ = name
    call.__doc__ = raw.__doc__
    return call


kneser = _decoded("kneser")
normalize = _decoded("normalize")
decompose = _decoded("decompose")
uniqueness = _decoded("uniqueness")
stability = _decoded("stability")
xi = _decoded("xi")
sidon = _decoded("sidon")
ruzsa = _decoded("ruzsa")
pluennecke = _decoded("pluennecke")
range_thresholds = _decoded("range_thresholds")
carries = _decoded("carries")
carry_extremality = _decoded("carry_extremality")
xi2_xi3 = _decoded("xi2_xi3")
chains = _decoded("chains")
construction = _decoded("construction")
projection = _decoded("projection")
mu = _decoded("mu")
run_suite = _decoded("run_suite")
