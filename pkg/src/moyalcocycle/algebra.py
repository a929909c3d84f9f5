"""Exact scalar and Laurent-polynomial arithmetic.

Scalars are exact rationals (``QQ``: gmpy2's ``mpq`` when available, else
:class:`fractions.Fraction`; the two compare and hash alike).  Three layers:

* :class:`ParamPoly` -- polynomials over Q in named formal parameters
  (``lam``, ``lam1``, ``lam2``, ``hbar`` ...).
* :class:`LaurentPoly` -- sparse Laurent polynomials in ``p, q`` whose
  coefficients are ParamPolys.
* :class:`HElement` / :class:`ScalarSeries` -- series in hbar truncated at a
  fixed order, with LaurentPoly resp. ParamPoly coefficients.

Storage is flat: a LaurentPoly is a dict ``(i, j, mono) -> QQ`` and an
HElement a dict ``(k, i, j, mono) -> QQ`` where ``mono`` is a parameter
monomial, a sorted tuple of ``(name, exponent)`` pairs.  Zero coefficients are
never stored.  Instances are treated as immutable.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from numbers import Rational
from typing import Iterable, Mapping, Union

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

Mono = tuple  # tuple[tuple[str, int], ...], sorted by name
ONE: Mono = ()

Scalar = Union[int, "QQ", "ParamPoly"]


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); valid for negative n."""
    out = 1
    for t in range(k):
        out *= n - t
    return out


def gen_binom(a: int, k: int) -> QQ:
    """Binomial coefficient with an arbitrary integer top argument."""
    if a >= 0:
        return QQ(comb(a, k)) if k <= a else QQ(0)
    return QQ(falling(a, k), factorial(k))


@lru_cache(maxsize=None)
def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def mono_str(m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


def mono_parse(s: str) -> Mono:
    s = s.strip()
    if s in ("", "1"):
        return ONE
    exps: dict[str, int] = {}
    for factor in s.split("*"):
        name, _, e = factor.partition("^")
        exps[name.strip()] = exps.get(name.strip(), 0) + (int(e) if e else 1)
    return tuple(sorted((n, e) for n, e in exps.items() if e))


def frac_str(c) -> str:
    c = QQ(c)
    return f"{c.numerator}/{c.denominator}"


def parse_frac(s: str | int) -> QQ:
    return QQ(s)


def _accumulate(out: dict, key, value) -> None:
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _frac(v) -> QQ:
    return v if type(v) is QQ else QQ(v)


def _clean(terms: Mapping) -> dict:
    return {k: _frac(v) for k, v in terms.items() if v}


# --------------------------------------------------------------------------
# ParamPoly
# --------------------------------------------------------------------------


class ParamPoly:
    """Polynomial over Q in named formal parameters."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, QQ] | None = None):
        self.terms: dict[Mono, QQ] = _clean(terms or {})

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({ONE: QQ(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "ParamPoly":
        return cls({((name, power),): QQ(1)} if power else {ONE: QQ(1)})

    @staticmethod
    def coerce(x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        if isinstance(x, (int, Rational)):
            return ParamPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ParamPoly")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_value(self) -> QQ:
        if not self.is_constant():
            raise ValueError(f"{self} still depends on parameters")
        return self.terms.get(ONE, QQ(0))

    def params(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def __add__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-ParamPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return ParamPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(out, mono_mul(m1, m2), c1 * c2)
        return ParamPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return ParamPoly({m: c / other for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, values: Mapping[str, Scalar]) -> "ParamPoly":
        """Replace parameters by numbers or other ParamPolys."""
        out = ParamPoly()
        for m, c in self.terms.items():
            term = ParamPoly({tuple((n, e) for n, e in m if n not in values): c})
            for name, e in m:
                if name in values:
                    term = term * ParamPoly.coerce(values[name]) ** e
            out = out + term
        return out

    def coefficient_in(self, name: str, power: int) -> "ParamPoly":
        """Coefficient of ``name**power`` viewed as a polynomial in ``name``."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == power:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return ParamPoly(out)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def to_json(self) -> dict[str, str]:
        return {mono_str(m): frac_str(c) for m, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "ParamPoly":
        out: dict = {}
        for k, v in data.items():
            _accumulate(out, mono_parse(k), parse_frac(v))
        return cls(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (-sum(e for _, e in t[0]), t[0])):
            if m == ONE:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append("-" + mono_str(m))
            else:
                parts.append(f"({c})*{mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ParamPoly({self})"


def _scalar_terms(s: Scalar) -> dict[Mono, QQ]:
    return ParamPoly.coerce(s).terms


# --------------------------------------------------------------------------
# LaurentPoly
# --------------------------------------------------------------------------


class LaurentPoly:
    """Sparse element of Q[params][p^{+-1}, q^{+-1}]."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, QQ] | None = None):
        self.terms: dict[tuple, QQ] = _clean(terms or {})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({(i, j, m): c for m, c in _scalar_terms(coeff).items()})

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls.monomial(0, 0, c)

    @classmethod
    def p(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls.monomial(0, 1)

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.constant(x)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int) -> ParamPoly:
        return ParamPoly({m: c for (a, b, m), c in self.terms.items() if (a, b) == (i, j)})

    def exponents(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j, _ in self.terms}

    def is_polynomial(self) -> bool:
        return all(i >= 0 and j >= 0 for i, j, _ in self.terms)

    def total_degree(self) -> int:
        return max((i + j for i, j, _ in self.terms), default=0)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def scale(self, s: Scalar) -> "LaurentPoly":
        out: dict = {}
        for m2, c2 in _scalar_terms(s).items():
            for (i, j, m1), c1 in self.terms.items():
                _accumulate(out, (i, j, mono_mul(m1, m2)), c1 * c2)
        return LaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1, m1), c1 in self.terms.items():
            for (i2, j2, m2), c2 in other.terms.items():
                _accumulate(out, (i1 + i2, j1 + j2, mono_mul(m1, m2)), c1 * c2)
        return LaurentPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((i, j, m), c), = self.terms.items()
            if m != ONE:
                raise ValueError("cannot invert a parameter-dependent coefficient")
            return LaurentPoly({(i * n, j * n, ONE): c ** n})
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def partial(self, var: str, k: int = 1) -> "LaurentPoly":
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        out: dict = {}
        for (i, j, m), c in self.terms.items():
            if var == "p":
                f = falling(i, k)
                if f:
                    _accumulate(out, (i - k, j, m), c * f)
            elif var == "q":
                f = falling(j, k)
                if f:
                    _accumulate(out, (i, j - k, m), c * f)
            else:
                raise ValueError(f"unknown variable {var!r}")
        return LaurentPoly(out)

    def substitute(self, values: Mapping[str, Scalar]) -> "LaurentPoly":
        out = LaurentPoly()
        for (i, j, m), c in self.terms.items():
            out = out + LaurentPoly.monomial(i, j, ParamPoly({m: c}).substitute(values))
        return out

    def grouped(self) -> dict[tuple[int, int], ParamPoly]:
        """Exponent pair -> ParamPoly coefficient."""
        acc: dict[tuple[int, int], dict] = {}
        for (i, j, m), c in self.terms.items():
            acc.setdefault((i, j), {})[m] = c
        return {k: ParamPoly(v) for k, v in acc.items()}

    def __eq__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list[dict]:
        return [
            {"i": i, "j": j, "coeff": c.to_json()}
            for (i, j), c in sorted(self.grouped().items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LaurentPoly":
        out = LaurentPoly()
        for t in data:
            out = out + cls.monomial(int(t["i"]), int(t["j"]), ParamPoly.from_json(t["coeff"]))
        return out

    def __str__(self):
        return format_laurent(self.grouped(), ("p", "q"))

    def __repr__(self):
        return f"LaurentPoly({self})"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}" if e > 0 else f"{var}^({e})"


def format_laurent(grouped: Mapping[tuple[int, int], ParamPoly], names: tuple[str, str]) -> str:
    if not grouped:
        return "0"
    parts = []
    for (i, j), c in sorted(grouped.items(), key=lambda t: (-(t[0][0] + t[0][1]), t[0])):
        mon = "*".join(s for s in (_power(names[0], i), _power(names[1], j)) if s)
        cs = str(c)
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"({cs})*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_scale(a: LaurentPoly, s: Scalar) -> LaurentPoly:
    return a.scale(s)


def lp_partial(a: LaurentPoly, var: str, k: int) -> LaurentPoly:
    return a.partial(var, k)


# --------------------------------------------------------------------------
# hbar-truncated series
# --------------------------------------------------------------------------


class HElement:
    """Truncated series sum_{k<=order} hbar^k a_k with LaurentPoly coefficients."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[tuple, QQ] | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        self.terms: dict[tuple, QQ] = {
            k: _frac(v) for k, v in (terms or {}).items() if v and k[0] <= order
        }

    @classmethod
    def lift(cls, x, order: int) -> "HElement":
        """View an hbar-free element (LaurentPoly or scalar) as an HElement."""
        if isinstance(x, HElement):
            return x.truncate(order) if x.order > order else x
        lp = LaurentPoly.coerce(x)
        return cls(order, {(0, i, j, m): c for (i, j, m), c in lp.terms.items()})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[LaurentPoly]) -> "HElement":
        coeffs = list(coeffs)
        terms = {}
        for k, lp in enumerate(coeffs):
            for (i, j, m), c in LaurentPoly.coerce(lp).terms.items():
                terms[(k, i, j, m)] = c
        return cls(len(coeffs) - 1, terms)

    @classmethod
    def hbar(cls, order: int, power: int = 1) -> "HElement":
        return cls(order, {(power, 0, 0, ONE): QQ(1)})

    @classmethod
    def zero(cls, order: int) -> "HElement":
        return cls(order)

    def coeff(self, k: int) -> LaurentPoly:
        return LaurentPoly({(i, j, m): c for (h, i, j, m), c in self.terms.items() if h == k})

    @property
    def coeffs(self) -> tuple[LaurentPoly, ...]:
        return tuple(self.coeff(k) for k in range(self.order + 1))

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, order: int) -> "HElement":
        return HElement(min(order, self.order), self.terms)

    def shift(self, k: int) -> "HElement":
        """Multiply by hbar^k."""
        return HElement(self.order, {(h + k, i, j, m): c for (h, i, j, m), c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, HElement):
            other = HElement.lift(other, self.order)
        out = {k: c for k, c in self.terms.items()}
        order = min(self.order, other.order)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return HElement(order, out)

    __radd__ = __add__

    def __neg__(self):
        return HElement(self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HElement):
            other = HElement.lift(other, self.order)
        return self + (-other)

    def scale(self, s: Scalar) -> "HElement":
        out: dict = {}
        for m2, c2 in _scalar_terms(s).items():
            for (h, i, j, m1), c1 in self.terms.items():
                _accumulate(out, (h, i, j, mono_mul(m1, m2)), c1 * c2)
        return HElement(self.order, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def substitute(self, values: Mapping[str, Scalar]) -> "HElement":
        return HElement.from_coeffs(c.substitute(values) for c in self.coeffs)

    def is_hbar_free(self) -> bool:
        return all(h == 0 for h, *_ in self.terms)

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {"order": self.order, "hcoeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "HElement":
        coeffs = [LaurentPoly.from_json(c) for c in data["hcoeffs"]]
        order = int(data["order"])
        if len(coeffs) != order + 1:
            raise ValueError(f"expected {order + 1} hbar coefficients, got {len(coeffs)}")
        return cls.from_coeffs(coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            h = "" if k == 0 else ("hbar" if k == 1 else f"hbar^{k}")
            parts.append(str(c) if not h else f"{h}*({c})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"HElement(order={self.order}, {self})"


def h_add(a: HElement, b: HElement) -> HElement:
    return a + b


def h_scale(a: HElement, s: Scalar) -> HElement:
    return a.scale(s)


def h_mul_commutative(a: HElement, b: HElement) -> HElement:
    """Graded pointwise product; not the star product."""
    order = min(a.order, b.order)
    out: dict = {}
    for (h1, i1, j1, m1), c1 in a.terms.items():
        for (h2, i2, j2, m2), c2 in b.terms.items():
            if h1 + h2 <= order:
                _accumulate(out, (h1 + h2, i1 + i2, j1 + j2, mono_mul(m1, m2)), c1 * c2)
    return HElement(order, out)


class ScalarSeries:
    """Truncated series sum_{k<=order} hbar^k s_k with ParamPoly coefficients.

    Stored sparsely as ``(k, mono) -> QQ``; ``coeffs`` gives the dense
    per-order view.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, coeffs: Iterable[Scalar] | None = None):
        self.order = order
        self.terms: dict[tuple[int, Mono], QQ] = {}
        for k, c in enumerate(coeffs or []):
            if k > order:
                break
            for m, v in _scalar_terms(c).items():
                self.terms[(k, m)] = v

    @classmethod
    def zero(cls, order: int) -> "ScalarSeries":
        return cls(order)

    @classmethod
    def monomial(cls, order: int, k: int, c: Scalar) -> "ScalarSeries":
        return cls.from_terms(order, {(k, m): v for m, v in _scalar_terms(c).items()})

    @classmethod
    def from_terms(cls, order: int, terms: Mapping[tuple[int, Mono], QQ]) -> "ScalarSeries":
        out = cls(order)
        out.terms = {key: _frac(v) for key, v in terms.items() if v and key[0] <= order}
        return out

    @property
    def coeffs(self) -> tuple[ParamPoly, ...]:
        acc: list[dict] = [{} for _ in range(self.order + 1)]
        for (k, m), c in self.terms.items():
            acc[k][m] = c
        return tuple(ParamPoly(a) for a in acc)

    def coeff(self, k: int) -> ParamPoly:
        return ParamPoly({m: c for (h, m), c in self.terms.items() if h == k})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = {key: c for key, c in self.terms.items() if key[0] <= order}
        for key, c in other.terms.items():
            if key[0] <= order:
                _accumulate(out, key, c)
        return ScalarSeries.from_terms(order, out)

    def __neg__(self):
        return ScalarSeries.from_terms(self.order, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "ScalarSeries":
        if isinstance(s, (int, Rational)):
            return ScalarSeries.from_terms(self.order, {key: c * s for key, c in self.terms.items()})
        out: dict = {}
        for m2, c2 in _scalar_terms(s).items():
            for (k, m1), c1 in self.terms.items():
                _accumulate(out, (k, mono_mul(m1, m2)), c1 * c2)
        return ScalarSeries.from_terms(self.order, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def shift(self, k: int) -> "ScalarSeries":
        """Multiply by hbar^k (terms past the order are dropped)."""
        return ScalarSeries.from_terms(self.order, {(h + k, m): c for (h, m), c in self.terms.items()})

    def truncate(self, order: int) -> "ScalarSeries":
        return ScalarSeries.from_terms(min(order, self.order), self.terms)

    def substitute(self, values: Mapping[str, Scalar]) -> "ScalarSeries":
        return ScalarSeries(self.order, [c.substitute(values) for c in self.coeffs])

    def evaluate(self, hbar: Scalar = 1, values: Mapping[str, Scalar] | None = None) -> ParamPoly:
        """Sum the series at a given hbar, after substituting parameters."""
        h = ParamPoly.coerce(hbar)
        out = ParamPoly()
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if values:
                c = c.substitute(values)
            out = out + c * h ** k
        return out

    def nonzero_orders(self) -> list[int]:
        return sorted({k for k, _ in self.terms})

    def __eq__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {"order": self.order, "hcoeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ScalarSeries":
        return cls(int(data["order"]), [ParamPoly.from_json(c) for c in data["hcoeffs"]])

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            h = "" if k == 0 else ("hbar" if k == 1 else f"hbar^{k}")
            cs = str(c)
            if not h:
                parts.append(cs)
            elif cs == "1":
                parts.append(h)
            else:
                parts.append(f"({cs})*{h}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ScalarSeries(order={self.order}, {self})"


def even_part(s: ScalarSeries) -> ScalarSeries:
    return ScalarSeries.from_terms(s.order, {k: c for k, c in s.terms.items() if k[0] % 2 == 0})


def odd_part(s: ScalarSeries) -> ScalarSeries:
    return ScalarSeries.from_terms(s.order, {k: c for k, c in s.terms.items() if k[0] % 2 == 1})
