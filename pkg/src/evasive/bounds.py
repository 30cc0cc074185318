"""Upper and lower bounds on the size of (r, s)-sets in PG(n, q).

Three upper bounds are combined: a Rao-type bound C_{d,e} q^((n-e+1)/e) + e
available when (r, s) decomposes as r = de-1, s = d(e-1); a pigeonhole
bound r ([n-s+1 choose 1]_q + 1); and a projection recursion that trades an
(r, s)-set for an (r-m, s-m)-set in PG(n-m, q) at the cost of m points.
The lower bound is the random-deletion estimate ((r!-1)/r!) q^(n-s-s(n-s)/r).

Real-valued bounds are computed with mpmath at 30 decimal digits (q-powers
as exact rationals, e-th roots by mpmath.root), comfortably above the
12-significant-digit contract.  Out-of-hypothesis requests yield entries
marked inapplicable with a reason instead of extrapolated numbers.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import ParameterError
from .projgeom import count_points, gaussian_binomial

_DPS = 30


def _as_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _qpow(q: int, exponent: Fraction):
    """q**exponent with an exact integer power under the e-th root."""
    base = mpmath.mpf(q ** exponent.numerator)
    return mpmath.root(base, exponent.denominator)


@dataclass(frozen=True)
class BoundEntry:
    label: str
    value: object            # int, Fraction, or mpmath.mpf; None if inapplicable
    provenance: str
    params: dict = dc_field(default_factory=dict)
    applicable: bool = True
    reason: Optional[str] = None

    def value_float(self) -> Optional[float]:
        return None if self.value is None else float(self.value)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    q: int
    r: int
    s: int
    entries: tuple

    def best(self) -> BoundEntry:
        """The smallest applicable entry; ties break toward the earliest label."""
        live = [e for e in self.entries if e.applicable]
        return min(live, key=lambda e: (_as_mpf(e.value), e.label))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "s": self.s,
            "best": self.best().label,
            "entries": [
                {
                    "label": e.label,
                    "value": e.value_float(),
                    "provenance": e.provenance,
                    "params": {k: str(v) if isinstance(v, Fraction) else v
                               for k, v in sorted(e.params.items())},
                    "applicable": e.applicable,
                    "reason": e.reason,
                }
                for e in self.entries
            ],
        }


def rao_decomposition(r: int, s: int):
    """The unique (d, e), both >= 2, with r = de-1 and s = d(e-1), or None.

    The two equations force d = r+1-s, so this only checks that e = (r+1)/d
    comes out a whole number of the right size.
    """
    if not r > s >= 1:
        raise ParameterError(f"need r > s >= 1, got r={r}, s={s}")
    d = r + 1 - s
    if d < 2 or (r + 1) % d:
        return None
    e = (r + 1) // d
    return (d, e) if e >= 2 else None


def rao_constant(d: int, e: int, q: int):
    """C_{d,e} = (e!(d-1)(1+2/q) / (1-2e/q))^(1/e), defined for q > 2e."""
    if q <= 2 * e:
        raise ParameterError(f"need q > 2e, got q={q}, e={e}")
    radicand = Fraction(math.factorial(e) * (d - 1) * (q + 2), q - 2 * e)
    with mpmath.workdps(_DPS):
        return mpmath.root(_as_mpf(radicand), e)


def rao_bound(n: int, q: int, r: int, s: int) -> BoundEntry:
    """C_{d,e} q^((n-e+1)/e) + e, or an inapplicable entry with the reason."""
    dec = rao_decomposition(r, s)
    if dec is None:
        return BoundEntry("rao", None, "moment bound", applicable=False,
                          reason=f"no integers d,e >= 2 with r={r} = de-1, s={s} = d(e-1)")
    d, e = dec
    if q <= 2 * e:
        return BoundEntry("rao", None, "moment bound", params={"d": d, "e": e},
                          applicable=False, reason=f"hypothesis q > 2e fails (q={q}, e={e})")
    with mpmath.workdps(_DPS):
        value = rao_constant(d, e, q) * _qpow(q, Fraction(n - e + 1, e)) + e
    return BoundEntry("rao", value, "moment bound",
                      params={"d": d, "e": e, "exponent": Fraction(n - e + 1, e)})


def pigeonhole_bound(n: int, q: int, r: int, s: int) -> int:
    """r ([n-s+1 choose 1]_q + 1): distribute X over the lines through a point
    of an (n-s)-space meeting X maximally."""
    if not (s >= 1 and n > s):
        raise ParameterError(f"need n > s >= 1, got n={n}, s={s}")
    return r * (gaussian_binomial(n - s + 1, 1, q) + 1)


@functools.lru_cache(maxsize=None)
def best_upper_bound(n: int, q: int, r: int, s: int) -> BoundsReport:
    """Minimum of all applicable upper bounds, including projected ones.

    Projecting from a generic m-space turns an (r, s)-set into an
    (r-m, s-m)-set in PG(n-m, q) while losing at most m points, so every
    bound for the smaller parameters lifts back up at a cost of +m.
    """
    if not (n > s >= 1 and r > s):
        raise ParameterError(f"need n > s >= 1 and r > s, got n={n}, r={r}, s={s}")
    entries = [
        BoundEntry("pigeonhole", pigeonhole_bound(n, q, r, s), "line pigeonhole"),
        rao_bound(n, q, r, s),
    ]
    for m in range(1, s):
        sub = best_upper_bound(n - m, q, r - m, s - m).best()
        entries.append(BoundEntry(
            f"projection(m={m})", _as_mpf(sub.value) + m,
            f"projection to ({r - m},{s - m}) in PG({n - m},{q}) via {sub.label}",
            params={"m": m},
        ))
    entries.append(BoundEntry("trivial", count_points(n, q), "all points of PG(n,q)"))
    return BoundsReport(n=n, q=q, r=r, s=s, entries=tuple(entries))


def gv_constant(r: int) -> Fraction:
    return Fraction(math.factorial(r) - 1, math.factorial(r))


def gv_exponent(n: int, r: int, s: int) -> Fraction:
    return Fraction(n - s) - Fraction(s * (n - s), r)


def gv_lower_size(n: int, q: int, r: int, s: int) -> BoundEntry:
    """Asymptotic leading term of the random-deletion lower bound."""
    if not (n > s >= 1):
        raise ParameterError(f"need n > s >= 1, got n={n}, s={s}")
    if not (s + 1 >= r >= 3):
        return BoundEntry("gv", None, "random deletion", applicable=False,
                          reason=f"hypothesis s+1 >= r >= 3 fails (r={r}, s={s})")
    with mpmath.workdps(_DPS):
        value = _as_mpf(gv_constant(r)) * _qpow(q, gv_exponent(n, r, s))
    return BoundEntry("gv", value, "random deletion",
                      params={"constant": gv_constant(r),
                              "exponent": gv_exponent(n, r, s)},
                      reason="asymptotic leading term")


@functools.lru_cache(maxsize=None)
def _best_exponent(n: int, r: int, s: int) -> Fraction:
    # q-free version of best_upper_bound: the growth exponent of the minimum
    best = Fraction(n - s)  # pigeonhole grows like q^(n-s)
    dec = rao_decomposition(r, s)
    if dec is not None:
        best = min(best, Fraction(n - dec[1] + 1, dec[1]))
    for m in range(1, s):
        best = min(best, _best_exponent(n - m, r - m, s - m))
    return best


def exponent_table(n: int, s_max: int, gap_max: int) -> dict:
    """{(s, r-s): minimal upper-bound exponent} as exact fractions in n.

    Gates on q are ignored here: exponents describe the q -> infinity regime.
    """
    if s_max < 1 or gap_max < 1:
        raise ParameterError(f"need s_max, gap_max >= 1, got {s_max}, {gap_max}")
    if n < 2 * s_max:
        raise ParameterError(f"need n >= 2*s_max for positive entries, got n={n}")
    return {
        (s, gap): _best_exponent(n, s + gap, s)
        for s in range(1, s_max + 1)
        for gap in range(1, gap_max + 1)
    }
