"""Byte-stable CSV/JSON emission and the smoothed valuation dataset.

Formatting rules shared by every writer: LF line endings, headers spelled
once here, floats printed with Python's shortest round-trip repr, booleans
lowercased.  The plot layer downstream renders these files without any
recomputation, so the smoothing lives here.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .valuations import binomial_valuation, carry_count

CENSUS_HEADER = [
    "p",
    "L_p",
    "mu_p",
    "J_p",
    "t",
    "bad_carry_count",
    "bad_carry_bound",
    "bad_spike_count",
    "bad_spike_bound",
    "within_bounds",
]
CHAIN_HEADER = ["p", "L", "s", "exact_tail", "tilted_bound", "chernoff_bound", "rho", "C"]
RATE_HEADER = ["delta", "I_delta", "lambda_star", "identity_residual"]
DENSITY_HEADER = ["N", "c", "kind", "k_rule", "total", "hits", "fraction"]
SHARPNESS_HEADER = ["N", "c", "blocked", "total"]
FIGURE1_HEADER = ["m", "nu_binom", "kappa", "nu_binom_smooth", "kappa_smooth"]


def format_cell(value) -> str:
    """One CSV cell: ints plain, floats shortest round-trip, bools lowercase."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return repr(float(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(format_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(obj) -> str:
    """Stable JSON: insertion-ordered keys, 2-space indent, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"


def moving_average(values, window: int) -> list[float]:
    """Centered simple moving average, truncated (shrunk) at the edges.

    window must be odd and >= 1 so the center is well defined; window = 1
    returns the input as floats.  Edge cells average over whatever part of
    the window is in range, keeping the output the same length as the input.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    half = window // 2
    n = len(values)
    out = []
    for i in range(n):
        lo = max(0, i - half)
        hi = min(n, i + half + 1)
        out.append(sum(values[lo:hi]) / (hi - lo))
    return out


def figure1_rows(m_lo: int, m_hi: int, k: int, p: int, window: int) -> list[list]:
    """Rows m, nu_p(C(m+k,k)), kappa_p(m), and their smoothed versions."""
    if m_lo > m_hi:
        raise ValueError("need m_lo <= m_hi")
    ms = range(m_lo, m_hi + 1)
    nu = [binomial_valuation(m + k, k, p) for m in ms]
    kappa = [carry_count(m, p) for m in ms]
    nu_s = moving_average(nu, window)
    kappa_s = moving_average(kappa, window)
    return [
        [m, nu[i], kappa[i], nu_s[i], kappa_s[i]]
        for i, m in enumerate(ms)
    ]
