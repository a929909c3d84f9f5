"""Polynomial differential operators and the symmetrization map C = I_PBW.

Operators are kept in normal order, x's to the left: ``(j, i, mono) -> QQ``
stands for ``coeff * x^j d^i``.  hbar is the formal parameter ``"hbar"`` of
the coefficient ParamPolys and is never truncated.

The defining relation is [d, x] = scale * hbar with ``scale = 2`` by default:
this is the only scale for which C(p) = d, C(q) = x extends to an algebra map
from the Moyal product with [p, q]_* = 2 hbar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Mapping

from .algebra import (
    ONE,
    QQ,
    HElement,
    LaurentPoly,
    ParamPoly,
    Scalar,
    _accumulate,
    _clean,
    _scalar_terms,
    falling,
    format_laurent,
    mono_mul,
)
from .moyal import star

HBAR = "hbar"
COMMUTATOR_SCALE = 2


def _hbar_mono(k: int):
    return ((HBAR, k),) if k else ONE


class WeylOp:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, QQ] | None = None):
        self.terms: dict[tuple, QQ] = _clean(terms or {})

    @classmethod
    def monomial(cls, j: int, i: int, coeff: Scalar = 1) -> "WeylOp":
        """coeff * x^j d^i."""
        if i < 0 or j < 0:
            raise ValueError("Weyl monomials have non-negative exponents")
        return cls({(j, i, m): c for m, c in _scalar_terms(coeff).items()})

    @classmethod
    def identity(cls) -> "WeylOp":
        return cls.monomial(0, 0)

    @classmethod
    def x(cls) -> "WeylOp":
        return cls.monomial(1, 0)

    @classmethod
    def d(cls) -> "WeylOp":
        return cls.monomial(0, 1)

    def coefficient(self, j: int, i: int) -> ParamPoly:
        return ParamPoly({m: c for (a, b, m), c in self.terms.items() if (a, b) == (j, i)})

    def grouped(self) -> dict[tuple[int, int], ParamPoly]:
        acc: dict = {}
        for (j, i, m), c in self.terms.items():
            acc.setdefault((j, i), {})[m] = c
        return {k: ParamPoly(v) for k, v in acc.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WeylOp") -> "WeylOp":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return WeylOp(out)

    def __neg__(self):
        return WeylOp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "WeylOp":
        out: dict = {}
        for m2, c2 in _scalar_terms(s).items():
            for (j, i, m1), c1 in self.terms.items():
                _accumulate(out, (j, i, mono_mul(m1, m2)), c1 * c2)
        return WeylOp(out)

    def __matmul__(self, other: "WeylOp") -> "WeylOp":
        return weyl_compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list[dict]:
        return [
            {"x": j, "d": i, "coeff": c.to_json()}
            for (j, i), c in sorted(self.grouped().items())
        ]

    def __str__(self):
        return format_laurent(self.grouped(), ("x", "d"))

    def __repr__(self):
        return f"WeylOp({self})"


def weyl_compose(a: WeylOp, b: WeylOp, scale: int = COMMUTATOR_SCALE) -> WeylOp:
    """a o b in normal order, using d^i x^c = sum_k C(i,k) c!/(c-k)! (scale hbar)^k x^{c-k} d^{i-k}."""
    out: dict = {}
    for (j1, i1, m1), c1 in a.terms.items():
        for (j2, i2, m2), c2 in b.terms.items():
            m = mono_mul(m1, m2)
            for k in range(min(i1, j2) + 1):
                coef = comb(i1, k) * falling(j2, k) * scale ** k
                _accumulate(out, (j1 + j2 - k, i1 + i2 - k, mono_mul(m, _hbar_mono(k))), c1 * c2 * coef)
    return WeylOp(out)


def _require_polynomial(f: LaurentPoly) -> None:
    if not f.is_polynomial():
        raise ValueError(f"negative exponent in {f}: the Weyl algebra has no p^-1 or q^-1")


def normal_order_map(f: LaurentPoly) -> WeylOp:
    """O: p^i q^j -> x^j d^i, extended linearly."""
    f = LaurentPoly.coerce(f)
    _require_polynomial(f)
    return WeylOp({(j, i, m): c for (i, j, m), c in f.terms.items()})


@lru_cache(maxsize=None)
def _word_sum(i: int, j: int, scale: int) -> WeylOp:
    # sum over the distinct words with i letters d and j letters x,
    # split by the first letter
    if i == 0 and j == 0:
        return WeylOp.identity()
    out = WeylOp()
    if i:
        out = out + weyl_compose(WeylOp.d(), _word_sum(i - 1, j, scale), scale)
    if j:
        out = out + weyl_compose(WeylOp.x(), _word_sum(i, j - 1, scale), scale)
    return out


def pbw_monomial(i: int, j: int, scale: int = COMMUTATOR_SCALE) -> WeylOp:
    """C(p^i q^j): the average of all orderings of i d's and j x's."""
    return _word_sum(i, j, scale).scale(QQ(1, comb(i + j, i)))


def pbw_symmetrize(f: LaurentPoly, scale: int = COMMUTATOR_SCALE) -> WeylOp:
    f = LaurentPoly.coerce(f)
    _require_polynomial(f)
    out = WeylOp()
    for (i, j, m), c in f.terms.items():
        out = out + pbw_monomial(i, j, scale).scale(ParamPoly({m: c}))
    return out


def quantize(f: HElement, scale: int = COMMUTATOR_SCALE) -> WeylOp:
    """C applied to an hbar-series, with hbar kept as a formal coefficient."""
    out = WeylOp()
    for k, coeff in enumerate(f.coeffs):
        if not coeff.is_zero():
            out = out + pbw_symmetrize(coeff, scale).scale(ParamPoly.var(HBAR, k))
    return out


# --------------------------------------------------------------------------
# reference routes (independent of weyl_compose and the recursion)
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def normal_order_word(word: tuple[str, ...], scale: int = COMMUTATOR_SCALE) -> WeylOp:
    """Normal-order a word in the letters 'x', 'd' by rewriting d x -> x d + scale*hbar."""
    for pos in range(len(word) - 1):
        if word[pos] == "d" and word[pos + 1] == "x":
            swapped = word[:pos] + ("x", "d") + word[pos + 2:]
            dropped = word[:pos] + word[pos + 2:]
            return normal_order_word(swapped, scale) + normal_order_word(dropped, scale).scale(
                ParamPoly.var(HBAR) * scale
            )
    return WeylOp.monomial(word.count("x"), word.count("d"))


def pbw_bruteforce(i: int, j: int, scale: int = COMMUTATOR_SCALE) -> WeylOp:
    """1/n! sum over all n! permutations of the letters; exponential, tests only."""
    letters = ("d",) * i + ("x",) * j
    n = len(letters)
    out = WeylOp()
    for perm in permutations(range(n)):
        out = out + normal_order_word(tuple(letters[k] for k in perm), scale)
    return out.scale(QQ(1, factorial(n)))


def exp_correction(f: LaurentPoly) -> LaurentPoly:
    """exp(hbar d_p d_q) f with hbar as a formal coefficient."""
    out = LaurentPoly()
    k = 0
    term = f
    while not term.is_zero():
        out = out + term.scale(ParamPoly.var(HBAR, k) * QQ(1, factorial(k)))
        k += 1
        term = term.partial("p").partial("q")
    return out


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


def monomials_up_to(max_degree: int) -> list[tuple[int, int]]:
    return [(i, d - i) for d in range(max_degree + 1) for i in range(d + 1)]


@dataclass
class VerificationReport:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def record(self, ok: bool, **info) -> None:
        self.checked += 1
        if not ok:
            self.passed = False
            if len(self.failures) < 10:
                self.failures.append(info)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
        }


def verify_iso(max_degree: int, scale: int = COMMUTATOR_SCALE) -> VerificationReport:
    """C(f * g) == C(f) o C(g) for all monomials f, g of total degree <= max_degree."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    report = VerificationReport("pbw_multiplicative", details={"commutator_scale": scale})
    monos = monomials_up_to(max_degree)
    for a, b in monos:
        f = LaurentPoly.monomial(a, b)
        cf = pbw_monomial(a, b, scale)
        for c, d in monos:
            g = LaurentPoly.monomial(c, d)
            exact = a + b + c + d  # B_n vanishes beyond this for polynomials
            prod = star(HElement.lift(f, exact), HElement.lift(g, exact))
            lhs = quantize(prod, scale)
            rhs = weyl_compose(cf, pbw_monomial(c, d, scale), scale)
            report.record(lhs == rhs, f=[a, b], g=[c, d], lhs=str(lhs), rhs=str(rhs))
    return report


def verify_exp_correction(max_degree: int, bruteforce_degree: int = 6,
                          scale: int = COMMUTATOR_SCALE) -> VerificationReport:
    """C(f) == O(exp(hbar d_p d_q) f), and C agrees with the permutation sum.

    Also records the correction constants: the coefficient of
    hbar^k O(d_p^k d_q^k f) in C(f) must be the same for every monomial f,
    and no other derivative pattern may appear.
    """
    report = VerificationReport("pbw_exp_correction")
    constants: dict[int, set] = {}
    extraneous = 0
    for i, j in monomials_up_to(max_degree):
        f = LaurentPoly.monomial(i, j)
        c = pbw_monomial(i, j, scale)
        via_exp = normal_order_map(exp_correction(f))
        report.record(c == via_exp, f=[i, j], kind="exp", C=str(c), exp=str(via_exp))
        if i + j <= bruteforce_degree:
            brute = pbw_bruteforce(i, j, scale)
            report.record(c == brute, f=[i, j], kind="bruteforce", C=str(c), brute=str(brute))
        for (jx, id_, m), coef in c.terms.items():
            k = dict(m).get(HBAR, 0)
            if (jx, id_) != (j - k, i - k) or len(m) > (1 if k else 0):
                extraneous += 1
                continue
            constants.setdefault(k, set()).add(coef / (falling(i, k) * falling(j, k)))
    universal = all(len(v) == 1 for v in constants.values())
    matches_exp = all(v == {QQ(1, factorial(k))} for k, v in constants.items())
    report.record(universal and matches_exp and extraneous == 0, kind="constants")
    report.details = {
        "constants": {str(k): sorted(str(x) for x in v) for k, v in sorted(constants.items())},
        "extraneous_terms": extraneous,
    }
    return report


def verify_triangular(max_degree: int, scale: int = COMMUTATOR_SCALE) -> VerificationReport:
    """C(p^i q^j) = x^j d^i + terms of strictly lower total degree."""
    report = VerificationReport("pbw_triangular")
    for i, j in monomials_up_to(max_degree):
        c = pbw_monomial(i, j, scale)
        lead = c.coefficient(j, i)
        lower = all(a + b < i + j for (a, b, _), _c in c.terms.items() if (a, b) != (j, i))
        top = all(a + b <= i + j for (a, b, _) in c.terms)
        report.record(lead == 1 and lower and top, f=[i, j], C=str(c))
    return report
