"""Moyal star product on Q[params][p^{+-1}, q^{+-1}][[hbar]].

The Poisson bivector is alpha^{pq} = +1, alpha^{qp} = -1, and ``bn`` is the
*total* hbar^n coefficient of the star product (the 1/n! of the exponential
series is part of it)::

    B_n(f, g) = 1/n! sum_k C(n,k) (-1)^k (d_p^{n-k} d_q^k f) (d_p^k d_q^{n-k} g)

Under this normalisation [p, q]_* = 2 hbar.

All products of Laurent polynomials are computed order by order in hbar up to
the truncation order of the operands; p^{-1} * q^{-1} for instance is an
infinite series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Iterable

from .algebra import (
    QQ,
    ONE,
    HElement,
    LaurentPoly,
    ScalarSeries,
    _accumulate,
    falling,
    mono_mul,
)

DEFAULT_ORDER = 9

# "total": B_n is the full hbar^n coefficient (the convention used everywhere).
# "factorial": an extra 1/n! in front of B_n, the other literal reading of the
# Moyal series.  Kept only to show that it is not the right one.
CONVENTIONS = ("total", "factorial")


@dataclass(frozen=True)
class MoyalContext:
    order: int = DEFAULT_ORDER
    alpha: int = field(default=1)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"truncation order must be >= 1, got {self.order}")
        if self.alpha != 1:
            raise ValueError("only the alpha^{pq} = +1 normalisation is supported")

    def lift(self, x) -> HElement:
        return HElement.lift(x, self.order)

    def q_element(self) -> HElement:
        return build_q(self.order)


def _weight(n: int, convention: str) -> QQ:
    if convention == "total":
        return QQ(1)
    if convention == "factorial":
        return QQ(1, factorial(n))
    raise ValueError(f"unknown convention {convention!r}")


@lru_cache(maxsize=None)
def bn_monomial(a: int, b: int, c: int, d: int, n: int) -> QQ:
    """Coefficient of p^{a+c-n} q^{b+d-n} in B_n(p^a q^b, p^c q^d)."""
    total = 0
    for k in range(n + 1):
        t = falling(a, n - k) * falling(b, k)
        if t:
            t *= falling(c, k) * falling(d, n - k)
            if t:
                total += (-1) ** k * comb(n, k) * t
    return QQ(total, factorial(n))


@lru_cache(maxsize=None)
def _star_monomials(a: int, b: int, c: int, d: int, nmax: int, convention: str):
    """Non-zero (n, coefficient) pairs of p^a q^b * p^c q^d for n <= nmax."""
    out = []
    for n in range(nmax + 1):
        coef = bn_monomial(a, b, c, d, n)
        if coef:
            out.append((n, coef * _weight(n, convention)))
    return tuple(out)


def bn(f: LaurentPoly, g: LaurentPoly, n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("n must be non-negative")
    out: dict = {}
    for (a, b, m1), c1 in f.terms.items():
        for (c, d, m2), c2 in g.terms.items():
            coef = bn_monomial(a, b, c, d, n)
            if coef:
                _accumulate(out, (a + c - n, b + d - n, mono_mul(m1, m2)), c1 * c2 * coef)
    return LaurentPoly(out)


def _as_h(x, order: int | None) -> HElement:
    if isinstance(x, HElement):
        return x
    return HElement.lift(x, DEFAULT_ORDER if order is None else order)


def star(f, g, convention: str = "total") -> HElement:
    """Graded star product, truncated at the smaller of the two orders."""
    f = _as_h(f, getattr(g, "order", None))
    g = _as_h(g, f.order)
    order = min(f.order, g.order)
    out: dict = {}
    for (h1, a, b, m1), c1 in f.terms.items():
        for (h2, c, d, m2), c2 in g.terms.items():
            room = order - h1 - h2
            if room < 0:
                continue
            m = mono_mul(m1, m2)
            cc = c1 * c2
            for n, coef in _star_monomials(a, b, c, d, room, convention):
                _accumulate(out, (h1 + h2 + n, a + c - n, b + d - n, m), cc * coef)
    return HElement(order, out)


def commutator(f, g, convention: str = "total") -> HElement:
    return star(f, g, convention) - star(g, f, convention)


def trace(f: HElement) -> ScalarSeries:
    """Per hbar order, the coefficient of p^{-1} q^{-1}."""
    return ScalarSeries.from_terms(
        f.order,
        {(h, m): c for (h, i, j, m), c in f.terms.items() if i == -1 and j == -1},
    )


def trace_pair(f: HElement, g: HElement) -> ScalarSeries:
    """trace(star(f, g)) without forming the product.

    Only one B_n can land on p^{-1} q^{-1} for a given pair of monomials.
    """
    order = min(f.order, g.order)
    acc: dict = {}
    for (h1, a, b, m1), c1 in f.terms.items():
        for (h2, c, d, m2), c2 in g.terms.items():
            n = a + c + 1
            if n < 0 or b + d + 1 != n or h1 + h2 + n > order:
                continue
            coef = bn_monomial(a, b, c, d, n)
            if coef:
                _accumulate(acc, (h1 + h2 + n, mono_mul(m1, m2)), c1 * c2 * coef)
    return ScalarSeries.from_terms(order, acc)


def trace_triple(f: HElement, g: HElement, k: HElement) -> ScalarSeries:
    """trace(star(star(f, g), k)) without forming the full products."""
    order = min(f.order, g.order, k.order)
    by_diff: dict[int, list] = {}
    for (h3, e, s, m3), c3 in k.terms.items():
        by_diff.setdefault(e - s, []).append((h3, e, s, m3, c3))
    acc: dict = {}
    for (h1, a, b, m1), c1 in f.terms.items():
        for (h2, c, d, m2), c2 in g.terms.items():
            partners = by_diff.get(-(a - b) - (c - d))
            if not partners:
                continue
            room = order - h1 - h2
            if room < 0:
                continue
            m12 = mono_mul(m1, m2)
            c12 = c1 * c2
            for n, coef in _star_monomials(a, b, c, d, room, "total"):
                x, y = a + c - n, b + d - n
                for h3, e, s, m3, c3 in partners:
                    n2 = x + e + 1
                    h = h1 + h2 + n + h3 + n2
                    if n2 < 0 or h > order:
                        continue
                    coef2 = bn_monomial(x, y, e, s, n2)
                    if coef2:
                        _accumulate(acc, (h, mono_mul(m12, m3)), c12 * coef * c3 * coef2)
    return ScalarSeries.from_terms(order, acc)


def _log_derivation(f: HElement, var: str, convention: str) -> HElement:
    # (ln p) * f - f * (ln p): only the all-p index tuples survive, and the even
    # orders cancel.  ln q is the mirror image with the opposite sign.
    out: dict = {}
    sign = 1 if var == "p" else -1
    for (h, i, j, m), c in f.terms.items():
        for n in range(1, f.order - h + 1, 2):
            k = falling(j, n) if var == "p" else falling(i, n)
            if not k:
                continue
            coef = QQ(2 * sign * factorial(n - 1), factorial(n)) * _weight(n, convention)
            _accumulate(out, (h + n, i - n, j - n, m), c * k * coef)
    return HElement(f.order, out)


def d1(f: HElement, convention: str = "total") -> HElement:
    """Commutator with ln p:  2 sum_k hbar^{2k+1}/(2k+1) p^{-(2k+1)} d_q^{2k+1} f."""
    return _log_derivation(_as_h(f, None), "p", convention)


def d2(f: HElement, convention: str = "total") -> HElement:
    """Commutator with ln q: -2 sum_k hbar^{2k+1}/(2k+1) q^{-(2k+1)} d_p^{2k+1} f."""
    return _log_derivation(_as_h(f, None), "q", convention)


def q_coefficient(k: int) -> QQ:
    """Coefficient of hbar^{2k+1} p^{-(2k+1)} q^{-(2k+1)} in Q."""
    return QQ(2 * factorial(2 * k), 2 * k + 1)


def build_q(order: int = DEFAULT_ORDER) -> HElement:
    """Q with [D1, D2] = ad Q."""
    if order < 1:
        raise ValueError("order must be >= 1")
    terms = {}
    for k in range(order):
        n = 2 * k + 1
        if n > order:
            break
        terms[(n, -n, -n, ONE)] = q_coefficient(k)
    return HElement(order, terms)


@dataclass
class DerivationReport:
    passed: bool
    checked: int
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "counterexample": self.counterexample}


def derivation_bracket(f: HElement, convention: str = "total") -> HElement:
    """(D1 D2 - D2 D1)(f)."""
    return d1(d2(f, convention), convention) - d2(d1(f, convention), convention)


def verify_inner_derivation(
    test_set: Iterable, order: int = DEFAULT_ORDER, q: HElement | None = None,
    convention: str = "total",
) -> DerivationReport:
    """Check [D1, D2](f) == [Q, f] exactly for every f."""
    q = build_q(order) if q is None else q
    checked = 0
    for f in test_set:
        f = HElement.lift(f, order)
        lhs = derivation_bracket(f, convention)
        rhs = commutator(q, f, convention)
        checked += 1
        diff = lhs - rhs
        if not diff.is_zero():
            first = min(diff.terms)
            return DerivationReport(False, checked, {
                "element": f.to_json(),
                "hbar_order": first[0],
                "monomial": [first[1], first[2]],
                "lhs": lhs.to_json(),
                "rhs": rhs.to_json(),
            })
    return DerivationReport(True, checked)


def monomial_grid(bound: int, order: int = DEFAULT_ORDER) -> list[HElement]:
    return [
        HElement.lift(LaurentPoly.monomial(i, j), order)
        for i in range(-bound, bound + 1)
        for j in range(-bound, bound + 1)
    ]


def factorial_convention_report(order: int = DEFAULT_ORDER, bound: int = 3) -> DerivationReport:
    """Run the inner-derivation check with an extra 1/n! in front of every B_n.

    Expected to fail: with that weighting the star product is not associative
    and Q does not generate [D1, D2].
    """
    return verify_inner_derivation(monomial_grid(bound, order), order, convention="factorial")


def hbar_reflect(f: HElement) -> HElement:
    """hbar -> -hbar.  An anti-automorphism: reflect(f * g) == reflect(g) * reflect(f)."""
    return HElement(f.order, {k: c if k[0] % 2 == 0 else -c for k, c in f.terms.items()})
