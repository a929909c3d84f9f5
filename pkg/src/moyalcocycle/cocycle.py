"""The 3-cocycle Psi_3 on the Moyal algebra and the Chevalley-Eilenberg toolkit.

    Psi_3(A1, A2, A3) = sum_{s in S3, t in S2} sgn(s) sgn(t)
                            Tr(D_t(1) A_s(1) * D_t(2) A_s(2) * A_s(3))
                      + c * sum_{s in S3} sgn(s) Tr(Q * A_s(1) * A_s(2) * A_s(3))

Alternations are plain signed sums without a 1/|G| prefactor.  ``c`` is the
``q_coefficient`` of :class:`CocycleConfig`; it is 1 by default and can be
recovered from the cocycle identity by :func:`calibrate_q_coefficient`.

Cochains take HElements as arguments and are C[hbar]-multilinear.  The Lie
bracket is the Moyal commutator, so differentials and boundaries are computed
order by order in hbar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .algebra import (
    QQ,
    HElement,
    LaurentPoly,
    Mono,
    ParamPoly,
    ScalarSeries,
    _accumulate,
    even_part,
    mono_mul,
    odd_part,
)
from .moyal import (
    MoyalContext,
    build_q,
    commutator,
    d1,
    d2,
    star,
    trace_pair,
    trace_triple,
)

Cochain = Callable[..., ScalarSeries]

LAMBDA = "lam"


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


S3 = [(s, perm_sign(s)) for s in permutations(range(3))]
S2 = [((0, 1), 1), ((1, 0), -1)]
DERIVATIONS = (d1, d2)


@dataclass(frozen=True)
class CocycleConfig:
    q_coefficient: QQ = QQ(1)
    context: MoyalContext = field(default_factory=MoyalContext)

    @property
    def order(self) -> int:
        return self.context.order

    @classmethod
    def at_order(cls, order: int) -> "CocycleConfig":
        return cls(context=MoyalContext(order))

    def with_q_coefficient(self, c) -> "CocycleConfig":
        return CocycleConfig(QQ(c), self.context)


@dataclass
class AltTerm:
    """One entry of the 12-term alternation table."""

    elements: tuple[int, int, int]
    derivations: tuple[int, int]
    sign: int
    value: ScalarSeries

    @property
    def label(self) -> str:
        (a, b, c), (u, v) = self.elements, self.derivations
        return f"Tr(D{u + 1}(A{a + 1})*D{v + 1}(A{b + 1})*A{c + 1})"

    @property
    def contribution(self) -> ScalarSeries:
        return self.value.scale(self.sign)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "sign": self.sign,
            "value": self.value.to_json(),
            "pretty": str(self.value),
        }


def _lift_all(args, order: int) -> list[HElement]:
    return [HElement.lift(a, order) for a in args]


def alt_first_summand(a1, a2, a3, config: CocycleConfig | None = None) -> tuple[ScalarSeries, list[AltTerm]]:
    config = config or CocycleConfig()
    args = _lift_all((a1, a2, a3), config.order)
    order = min(a.order for a in args)
    derived = [[D(a) for a in args] for D in DERIVATIONS]
    table = []
    total = ScalarSeries.zero(order)
    for sigma, s_sign in S3:
        for tau, t_sign in S2:
            x = derived[tau[0]][sigma[0]]
            y = derived[tau[1]][sigma[1]]
            value = trace_triple(x, y, args[sigma[2]])
            term = AltTerm(sigma, tau, s_sign * t_sign, value)
            table.append(term)
            total = total + term.contribution
    return total, table


def alt_star_triple(a1, a2, a3, order: int | None = None) -> HElement:
    """sum_{s in S3} sgn(s) A_s(1) * A_s(2) * A_s(3)."""
    args = [a if isinstance(a, HElement) else HElement.lift(a, order or MoyalContext().order) for a in (a1, a2, a3)]
    out = HElement.zero(min(a.order for a in args))
    for sigma, sign in S3:
        prod = star(star(args[sigma[0]], args[sigma[1]]), args[sigma[2]])
        out = out + prod.scale(sign)
    return out


def q_summand(a1, a2, a3, config: CocycleConfig | None = None) -> ScalarSeries:
    """c * Tr(Q * alt_star_triple(A1, A2, A3)), traced term by term."""
    config = config or CocycleConfig()
    args = _lift_all((a1, a2, a3), config.order)
    order = min(a.order for a in args)
    q = build_q(order)
    total = ScalarSeries.zero(order)
    pairs: dict[tuple[int, int], HElement] = {}
    for sigma, sign in S3:
        key = (sigma[0], sigma[1])
        if key not in pairs:
            pairs[key] = star(args[sigma[0]], args[sigma[1]])
        total = total + trace_triple(q, pairs[key], args[sigma[2]]).scale(sign)
    return total.scale(config.q_coefficient)


def psi3(a1, a2, a3, config: CocycleConfig | None = None) -> ScalarSeries:
    config = config or CocycleConfig()
    first, _ = alt_first_summand(a1, a2, a3, config)
    return first + q_summand(a1, a2, a3, config)


def split_hbar(x: HElement) -> dict[int, HElement]:
    """hbar-free components: x = sum_k hbar^k split_hbar(x)[k]."""
    parts: dict[int, dict] = {}
    for (h, i, j, m), c in x.terms.items():
        parts.setdefault(h, {})[(0, i, j, m)] = c
    return {h: HElement(x.order, t) for h, t in parts.items()}


def graded_cochain(phi: Cochain, parity: str) -> Cochain:
    """The even or odd hbar-part of a cochain, extended C[hbar]-linearly.

    On hbar-free arguments it is the parity filter of ``phi``; arguments that
    carry hbar (commutators, say) are split into hbar-free components first.
    """
    keep = {"even": even_part, "odd": odd_part}[parity]

    def part(*args: HElement) -> ScalarSeries:
        order = min(a.order for a in args)
        total = ScalarSeries.zero(order)
        pieces = [sorted(split_hbar(a).items()) for a in args]

        def rec(idx: int, shift: int, chosen: list):
            nonlocal total
            if shift > order:
                return
            if idx == len(pieces):
                total = total + keep(phi(*chosen)).shift(shift).truncate(order)
                return
            for h, comp in pieces[idx]:
                rec(idx + 1, shift + h, chosen + [comp])

        rec(0, 0, [])
        return total

    return part


def psi3_even(a1, a2, a3, config: CocycleConfig | None = None) -> ScalarSeries:
    return graded_cochain(lambda *a: psi3(*a, config=config), "even")(*_lift_all((a1, a2, a3), (config or CocycleConfig()).order))


def psi3_odd(a1, a2, a3, config: CocycleConfig | None = None) -> ScalarSeries:
    return graded_cochain(lambda *a: psi3(*a, config=config), "odd")(*_lift_all((a1, a2, a3), (config or CocycleConfig()).order))


# --------------------------------------------------------------------------
# Chevalley-Eilenberg differential and boundary
# --------------------------------------------------------------------------


def ce_differential(phi: Cochain, *args: HElement) -> ScalarSeries:
    """(d phi)(x_1..x_n) = sum_{i<j} (-1)^{i+j} phi([x_i, x_j], x_1..^i..^j..x_n)."""
    n = len(args)
    order = min(a.order for a in args)
    total = ScalarSeries.zero(order)
    for i, j in combinations(range(n), 2):
        rest = [args[k] for k in range(n) if k not in (i, j)]
        value = phi(commutator(args[i], args[j]), *rest)
        total = total + value.scale((-1) ** (i + j))
    return total


def ce_differential_3(phi: Cochain, a1, a2, a3, a4) -> ScalarSeries:
    return ce_differential(phi, a1, a2, a3, a4)


@dataclass
class Chain:
    """Formal linear combination of wedges x_1 ^ ... ^ x_k of HElements."""

    terms: list[tuple[ParamPoly, tuple[HElement, ...]]] = field(default_factory=list)

    @classmethod
    def wedge(cls, *xs: HElement, coeff=1) -> "Chain":
        return cls([(ParamPoly.coerce(coeff), tuple(xs))])

    @property
    def degree(self) -> int | None:
        return len(self.terms[0][1]) if self.terms else None

    @property
    def order(self) -> int:
        return min((x.order for _, w in self.terms for x in w), default=0)

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(self.terms + other.terms)

    def scale(self, s) -> "Chain":
        s = ParamPoly.coerce(s)
        return Chain([(c * s, w) for c, w in self.terms])

    def substitute(self, values) -> "Chain":
        return Chain([(c.substitute(values), tuple(x.substitute(values) for x in w)) for c, w in self.terms])

    def canonical(self) -> dict[tuple, QQ]:
        """Expand multilinearly into sorted wedges of basis monomials.

        Keys are ``(basis, hbar_power, mono)`` with ``basis`` a strictly
        increasing tuple of exponent pairs; antisymmetry supplies the sign.
        """
        order = self.order
        out: dict = {}
        for coeff, wedge in self.terms:
            expansions = [list(x.terms.items()) for x in wedge]

            def rec(idx, basis, h, mono, c):
                if h > order:
                    return
                if idx == len(expansions):
                    if len(set(basis)) < len(basis):
                        return
                    srt = sorted(range(len(basis)), key=lambda k: basis[k])
                    sign = perm_sign(srt)
                    key_basis = tuple(basis[k] for k in srt)
                    for cm, cc in coeff.terms.items():
                        _accumulate(out, (key_basis, h, mono_mul(mono, cm)), c * cc * sign)
                    return
                for (hh, i, j, m), cc in expansions[idx]:
                    rec(idx + 1, basis + [(i, j)], h + hh, mono_mul(mono, m), c * cc)

            rec(0, [], 0, (), QQ(1))
        return out

    def is_zero(self) -> bool:
        return not self.canonical()

    def pair(self, phi: Cochain) -> ScalarSeries:
        """<phi, chain>."""
        total = ScalarSeries.zero(self.order)
        for coeff, wedge in self.terms:
            total = total + phi(*wedge).scale(coeff)
        return total


def ce_boundary(chain: Chain) -> Chain:
    """d(x_1^..^x_n) = sum_{i<j} (-1)^{i+j} [x_i, x_j] ^ x_1..^i..^j..x_n.

    Same sign convention as :func:`ce_differential`, so that
    <d phi, c> = <phi, d c>.
    """
    out = []
    for coeff, wedge in chain.terms:
        n = len(wedge)
        for i, j in combinations(range(n), 2):
            rest = tuple(wedge[k] for k in range(n) if k not in (i, j))
            out.append((coeff * (-1) ** (i + j), (commutator(wedge[i], wedge[j]),) + rest))
    return Chain(out)


def c_lambda_entries(order: int, lam=None) -> tuple[HElement, HElement, HElement]:
    lam = ParamPoly.var(LAMBDA) if lam is None else ParamPoly.coerce(lam)
    p, q = LaurentPoly.p(), LaurentPoly.q()
    return (
        HElement.lift(p, order),
        HElement.lift(q * p + lam, order),
        HElement.lift(q ** 2 * p + q * (2 * lam), order),
    )


def build_c_lambda(order: int = MoyalContext().order, lam=None) -> Chain:
    """p ^ (qp + lam) ^ (q^2 p + 2 lam q) with lam formal unless given."""
    return Chain.wedge(*c_lambda_entries(order, lam))


# --------------------------------------------------------------------------
# pairing with the cycle family
# --------------------------------------------------------------------------


@dataclass
class CyclePairing:
    total: ScalarSeries
    even: ScalarSeries
    odd: ScalarSeries


def pair_c_lambda(config: CocycleConfig | None = None, lam=None) -> CyclePairing:
    config = config or CocycleConfig()
    chain = build_c_lambda(config.order, lam)
    total = chain.pair(lambda *a: psi3(*a, config=config))
    even = chain.pair(lambda *a: psi3_even(*a, config=config))
    odd = chain.pair(lambda *a: psi3_odd(*a, config=config))
    return CyclePairing(total, even, odd)


def published_targets(order: int, lam=None) -> tuple[ScalarSeries, ScalarSeries]:
    """(-24 hbar^2 lam^2, 4 lam hbar^3) as published."""
    lam = ParamPoly.var(LAMBDA) if lam is None else ParamPoly.coerce(lam)
    return (
        ScalarSeries.monomial(order, 2, lam * lam * -24),
        ScalarSeries.monomial(order, 3, lam * 4),
    )


def det2(m: Sequence[Sequence]) -> ParamPoly:
    return ParamPoly.coerce(m[0][0]) * m[1][1] - ParamPoly.coerce(m[0][1]) * m[1][0]


@dataclass
class PairingMatrix:
    matrix: list[list[ParamPoly]]
    determinant: ParamPoly

    def to_json(self) -> dict:
        return {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "determinant": str(self.determinant),
        }


def pairing_matrix(l1, l2, hbar=1, config: CocycleConfig | None = None,
                   pairing: CyclePairing | None = None) -> PairingMatrix:
    """Rows (Psi^even(c_l), Psi^odd(c_l)) for l = l1, l2, with hbar substituted.

    ``l1``, ``l2`` may be numbers or ParamPolys (e.g. formal lam1, lam2).
    """
    pairing = pairing or pair_c_lambda(config)
    rows = []
    for lam in (l1, l2):
        vals = {LAMBDA: lam}
        rows.append([pairing.even.evaluate(hbar, vals), pairing.odd.evaluate(hbar, vals)])
    return PairingMatrix(rows, det2(rows))


def published_pairing_matrix(l1, l2) -> PairingMatrix:
    l1, l2 = ParamPoly.coerce(l1), ParamPoly.coerce(l2)
    rows = [[l1 * l1 * -24, l1 * 4], [l2 * l2 * -24, l2 * 4]]
    return PairingMatrix(rows, det2(rows))


def published_determinant(l1, l2) -> ParamPoly:
    """-4 * 24 (l1^2 l2 - l1 l2^2)."""
    l1, l2 = ParamPoly.coerce(l1), ParamPoly.coerce(l2)
    return (l1 * l1 * l2 - l1 * l2 * l2) * -96


# --------------------------------------------------------------------------
# calibration of the Q-term weight
# --------------------------------------------------------------------------


@dataclass
class Calibration:
    status: str  # "unique", "none" or "any"
    value: QQ | None = None
    offending: tuple | None = None
    equations: int = 0

    def __str__(self):
        return str(self.value) if self.status == "unique" else self.status

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else f"{self.value.numerator}/{self.value.denominator}",
            "equations": self.equations,
            "offending": None if self.offending is None else [x.to_json() for x in self.offending],
        }


def _first_cochain(config):
    return lambda *a: alt_first_summand(*a, config=config)[0]


def _q_cochain(config):
    return lambda *a: q_summand(*a, config=config)


def calibrate_q_coefficient(samples: Iterable[Sequence[HElement]], config: CocycleConfig | None = None) -> Calibration:
    """Solve d(first) + c * d(Q-summand) = 0 for the scalar c.

    The Q-summand includes ``config.q_coefficient``, so a pre-scaled config
    returns the compensating factor.
    """
    config = config or CocycleConfig()
    value: QQ | None = None
    equations = 0
    for tup in samples:
        tup = tuple(_lift_all(tup, config.order))
        f = ce_differential(_first_cochain(config), *tup)
        g = ce_differential(_q_cochain(config), *tup)
        for fk, gk in zip(f.coeffs, g.coeffs):
            for m in set(fk.terms) | set(gk.terms):
                a, b = fk.terms.get(m, QQ(0)), gk.terms.get(m, QQ(0))
                equations += 1
                if b == 0:
                    if a != 0:
                        return Calibration("none", None, tup, equations)
                    continue
                c = -a / b
                if value is None:
                    value = c
                elif c != value:
                    return Calibration("none", None, tup, equations)
    if value is None:
        return Calibration("any", None, None, equations)
    return Calibration("unique", value, None, equations)


def monomial_tuples(bound: int, size: int, order: int) -> list[tuple[HElement, ...]]:
    """All size-subsets of the monomial grid |i|,|j| <= bound, as HElements."""
    basis = [
        HElement.lift(LaurentPoly.monomial(i, j), order)
        for i in range(-bound, bound + 1)
        for j in range(-bound, bound + 1)
    ]
    return list(combinations(basis, size))


def default_calibration_sample(order: int) -> list[tuple[HElement, ...]]:
    """A few 4-tuples on which both differentials are non-zero, plus one on which both vanish."""
    mono = lambda i, j: HElement.lift(LaurentPoly.monomial(i, j), order)  # noqa: E731
    return [
        (mono(-2, 1), mono(2, 0), mono(2, 1), mono(2, 2)),
        (mono(-1, 0), mono(1, 2), mono(2, 0), mono(2, 2)),
        (mono(-1, 1), mono(1, 0), mono(2, 1), mono(2, 2)),
        (mono(-2, 2), mono(2, -1), mono(2, 1), mono(2, 2)),
        (mono(-1, 1), mono(1, 2), mono(2, -1), mono(2, 2)),
        (mono(1, 0), mono(0, 1), mono(1, 1), mono(2, 0)),
    ]


def graded_differentials(phi: Cochain, *args: HElement) -> dict[str, ScalarSeries]:
    """d phi, d phi^even and d phi^odd on one tuple, sharing the bracket computations.

    ``phi`` is evaluated once on the full brackets (for d phi) and once per
    hbar-free component of each bracket (for the graded parts).
    """
    n = len(args)
    order = min(a.order for a in args)
    out = {key: ScalarSeries.zero(order) for key in ("total", "even", "odd")}
    if not all(a.is_hbar_free() for a in args):
        raise ValueError("graded differentials expect hbar-free arguments")
    for i, j in combinations(range(n), 2):
        sign = (-1) ** (i + j)
        rest = [args[k] for k in range(n) if k not in (i, j)]
        bracket = commutator(args[i], args[j])
        out["total"] = out["total"] + phi(bracket, *rest).scale(sign)
        for h, comp in split_hbar(bracket).items():
            value = phi(comp, *rest).scale(sign)
            out["even"] = out["even"] + even_part(value).shift(h)
            out["odd"] = out["odd"] + odd_part(value).shift(h)
    return out
