"""Exact arithmetic for Goss t-adic zeta functions over F_q[t].

The heavy lifting lives in the compiled extension module; this package
re-exports its surface.
"""

from gosszeta._core import (  # noqa: F401
    Field,
    GossZetaError,
    base_digits,
    carry_free,
    closed_form_valuation,
    digit_sum,
    exhaustive_min_decomposition,
    greedy_decomposition,
    multinomial_mod_p,
    newton_polygon,
    power_sum,
    run,
    slope_prediction,
    verify,
)

__all__ = [
    "Field",
    "GossZetaError",
    "base_digits",
    "carry_free",
    "closed_form_valuation",
    "digit_sum",
    "exhaustive_min_decomposition",
    "greedy_decomposition",
    "multinomial_mod_p",
    "newton_polygon",
    "power_sum",
    "run",
    "slope_prediction",
    "verify",
]
