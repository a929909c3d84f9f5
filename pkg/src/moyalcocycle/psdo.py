"""Formal pseudodifferential symbols on C^* with [d, x] = hbar.

A symbol is ``sum_j a_j(x) d^j`` with Laurent coefficients a_j, kept on the
window ``top - depth <= j <= top``.  Everything below the window is unknown,
not zero; every operation here only lowers d-exponents, so results are exact
on their own window.

ln d and ln x are never materialised: they act through the closed-form
adjoint actions :func:`ad_ln_d` and :func:`ad_ln_x`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Mapping

from .algebra import (
    ONE,
    QQ,
    ParamPoly,
    Scalar,
    _accumulate,
    _clean,
    _scalar_terms,
    falling,
    format_laurent,
    gen_binom,
    mono_mul,
)

HBAR = "hbar"


def _hbar(k: int):
    return ((HBAR, k),) if k else ONE


class PsdoSymbol:
    """Terms ``(a, j, mono) -> QQ`` meaning ``coeff * x^a d^j``."""

    __slots__ = ("top", "depth", "terms")

    def __init__(self, top: int, depth: int, terms: Mapping[tuple, QQ] | None = None):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.top = top
        self.depth = depth
        floor = top - depth
        terms = _clean(terms or {})
        if any(j > top for _, j, _ in terms):
            raise ValueError(f"term above the top order {top}")
        self.terms = {k: c for k, c in terms.items() if k[1] >= floor}

    @property
    def floor(self) -> int:
        return self.top - self.depth

    @classmethod
    def monomial(cls, a: int, j: int, depth: int, coeff: Scalar = 1) -> "PsdoSymbol":
        """coeff * x^a d^j."""
        return cls(j, depth, {(a, j, m): c for m, c in _scalar_terms(coeff).items()})

    @classmethod
    def identity(cls, depth: int) -> "PsdoSymbol":
        return cls.monomial(0, 0, depth)

    @classmethod
    def zero(cls, top: int, depth: int) -> "PsdoSymbol":
        return cls(top, depth)

    def is_zero(self) -> bool:
        return not self.terms

    def restrict(self, floor: int) -> "PsdoSymbol":
        """Forget everything below d^floor."""
        floor = max(floor, self.floor)
        return PsdoSymbol(self.top, self.top - floor, self.terms)

    def _combine(self, other: "PsdoSymbol", sign: int) -> "PsdoSymbol":
        top = max(self.top, other.top)
        floor = max(self.floor, other.floor)
        out = {k: c for k, c in self.terms.items() if k[1] >= floor}
        for k, c in other.terms.items():
            if k[1] >= floor:
                _accumulate(out, k, sign * c)
        return PsdoSymbol(top, top - floor, out)

    def __add__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        return self._combine(other, 1)

    def __sub__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        return self._combine(other, -1)

    def __neg__(self):
        return PsdoSymbol(self.top, self.depth, {k: -c for k, c in self.terms.items()})

    def scale(self, s: Scalar) -> "PsdoSymbol":
        out: dict = {}
        for m2, c2 in _scalar_terms(s).items():
            for (a, j, m1), c1 in self.terms.items():
                _accumulate(out, (a, j, mono_mul(m1, m2)), c1 * c2)
        return PsdoSymbol(self.top, self.depth, out)

    def __matmul__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        return psdo_compose(self, other)

    def grouped(self) -> dict[tuple[int, int], ParamPoly]:
        acc: dict = {}
        for (a, j, m), c in self.terms.items():
            acc.setdefault((a, j), {})[m] = c
        return {k: ParamPoly(v) for k, v in acc.items()}

    def same_window(self, other: "PsdoSymbol") -> bool:
        """Equality on the common window of both symbols."""
        floor = max(self.floor, other.floor)
        return self.restrict(floor).terms == other.restrict(floor).terms

    def __eq__(self, other):
        if not isinstance(other, PsdoSymbol):
            return NotImplemented
        return self.floor == other.floor and self.terms == other.terms

    def __hash__(self):
        return hash((self.floor, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {
            "top": self.top,
            "depth": self.depth,
            "terms": [
                {"x": a, "d": j, "coeff": c.to_json()}
                for (a, j), c in sorted(self.grouped().items(), key=lambda t: (-t[0][1], t[0][0]))
            ],
        }

    def __str__(self):
        return format_laurent(self.grouped(), ("x", "d"))

    def __repr__(self):
        return f"PsdoSymbol(top={self.top}, depth={self.depth}, {self})"


def psdo_compose(a: PsdoSymbol, b: PsdoSymbol) -> PsdoSymbol:
    """(f d^s) o (g d^t) = sum_k binom(s, k) hbar^k f g^(k) d^{s+t-k}."""
    top = a.top + b.top
    floor = max(a.floor + b.top, a.top + b.floor)
    out: dict = {}
    for (e1, s, m1), c1 in a.terms.items():
        for (e2, t, m2), c2 in b.terms.items():
            m = mono_mul(m1, m2)
            for k in range(s + t - floor + 1):
                coef = gen_binom(s, k) * falling(e2, k)
                if coef:
                    _accumulate(out, (e1 + e2 - k, s + t - k, mono_mul(m, _hbar(k))), c1 * c2 * coef)
    return PsdoSymbol(top, top - floor, out)


def ad_ln_d(a: PsdoSymbol) -> PsdoSymbol:
    """[ln d, g d^b] = sum_{k>=1} (-1)^{k-1}/k hbar^k g^(k) d^{b-k}."""
    out: dict = {}
    floor = a.floor
    for (e, b, m), c in a.terms.items():
        k = 1
        while b - k >= floor:
            f = falling(e, k)
            if f == 0 and e >= 0:
                break
            _accumulate(out, (e - k, b - k, mono_mul(m, _hbar(k))), c * f * QQ((-1) ** (k - 1), k))
            k += 1
    return PsdoSymbol(a.top, a.depth, out)


def ad_ln_x(a: PsdoSymbol) -> PsdoSymbol:
    """[ln x, g d^b] = -g sum_{k>=1} binom(b,k) (-1)^{k-1} (k-1)! hbar^k x^{-k} d^{b-k}."""
    out: dict = {}
    floor = a.floor
    for (e, b, m), c in a.terms.items():
        k = 1
        while b - k >= floor:
            binom = gen_binom(b, k)
            if binom == 0 and b >= 0:
                break
            coef = -binom * (-1) ** (k - 1) * factorial(k - 1)
            _accumulate(out, (e - k, b - k, mono_mul(m, _hbar(k))), c * coef)
            k += 1
    return PsdoSymbol(a.top, a.depth, out)


def r_coefficient(k: int) -> QQ:
    """(k-1)!/k, the coefficient of hbar^k x^{-k} d^{-k}."""
    return QQ(factorial(k - 1), k)


def build_r(depth: int) -> PsdoSymbol:
    """R = sum_{k>=1} hbar^k (k-1)!/k x^{-k} d^{-k}, kept down to d^{-depth}."""
    terms = {(-k, -k, _hbar(k)): r_coefficient(k) for k in range(1, depth + 1)}
    return PsdoSymbol(-1, depth - 1, terms)


def derivation_bracket(s: PsdoSymbol) -> PsdoSymbol:
    """[ad ln d, ad ln x](s)."""
    return ad_ln_d(ad_ln_x(s)) - ad_ln_x(ad_ln_d(s))


def ad(r: PsdoSymbol, s: PsdoSymbol) -> PsdoSymbol:
    return psdo_compose(r, s) - psdo_compose(s, r)


@dataclass
class PsdoReport:
    passed: bool = True
    checked: int = 0
    results: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "results": self.results}


def verify_psdo_comparison(grid_bound: int, depth: int) -> PsdoReport:
    """[ad ln d, ad ln x](x^a d^b) == [R, x^a d^b] on |a|, |b| <= grid_bound."""
    r = build_r(depth)
    report = PsdoReport()
    for a in range(-grid_bound, grid_bound + 1):
        for b in range(-grid_bound, grid_bound + 1):
            s = PsdoSymbol.monomial(a, b, depth)
            lhs = derivation_bracket(s)
            rhs = ad(r, s)
            floor = max(lhs.floor, rhs.floor)
            lhs, rhs = lhs.restrict(floor), rhs.restrict(floor)
            ok = lhs.terms == rhs.terms
            entry: dict = {"passed": ok, "window": [floor, b]}
            if not ok:
                diff = lhs - rhs
                entry["first_mismatch_d_order"] = max(j for _, j, _ in diff.terms)
            report.results[f"{a},{b}"] = entry
            report.checked += 1
            report.passed &= ok
    return report
