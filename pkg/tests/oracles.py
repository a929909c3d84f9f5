"""Reference computations in sympy, written straight from the bidifferential series.

    f * g = sum_n hbar^n / n! sum_{a, b in {p, q}^n} alpha^{a1 b1} ... alpha^{an bn}
                                (d_{a1..an} f)(d_{b1..bn} g),   alpha^{pq} = 1 = -alpha^{qp}

Nothing here shares code with the package: index tuples are enumerated
literally, derivatives come from sympy, and ln p / ln q are ordinary sympy
logs.
"""

from itertools import permutations, product
from math import factorial

import sympy as sp

p, q, hbar, lam = sp.symbols("p q hbar lam")
ALPHA = {("p", "q"): 1, ("q", "p"): -1}
VARS = {"p": p, "q": q}


def _d(expr, letters):
    for v in letters:
        expr = sp.diff(expr, VARS[v])
    return expr


def bn(f, g, n):
    total = 0
    for pairs in product(ALPHA.items(), repeat=n):
        sign = 1
        left, right = [], []
        for (a, b), s in pairs:
            sign *= s
            left.append(a)
            right.append(b)
        total += sign * _d(f, left) * _d(g, right)
    return sp.expand(total / factorial(n))


def truncate(expr, order):
    expr = sp.expand(expr)
    return sp.expand(sum(expr.coeff(hbar, k) * hbar**k for k in range(order + 1)))


def star(f, g, order):
    # f, g may carry hbar; orders beyond ``order`` are dropped
    return truncate(sum(hbar**n * bn(f, g, n) for n in range(order + 1)), order)


def commutator(f, g, order):
    return sp.expand(star(f, g, order) - star(g, f, order))


def _log_commutator(var, f, order):
    out = commutator(sp.log(var), f, order)
    assert not out.has(sp.log)
    return out


def d1(f, order):
    return _log_commutator(p, f, order)


def d2(f, order):
    return _log_commutator(q, f, order)


def trace(expr):
    """Coefficient of p^-1 q^-1, hbar kept."""
    total = 0
    for term in sp.Add.make_args(sp.expand(expr)):
        powers = term.as_powers_dict()
        if powers.get(p, 0) == -1 and powers.get(q, 0) == -1:
            total += term * p * q
    return sp.expand(total)


def q_series(order):
    return sum(
        2 * sp.Rational(factorial(2 * k), 2 * k + 1) * hbar**(2 * k + 1) * p**-(2 * k + 1) * q**-(2 * k + 1)
        for k in range(order) if 2 * k + 1 <= order
    )


def _sign(perm):
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def psi3(a, order, q_weight=1):
    """Both alternated sums, with every product formed in full."""
    der = [lambda x: d1(x, order), lambda x: d2(x, order)]
    first = 0
    for s in permutations(range(3)):
        for t in permutations(range(2)):
            x = der[t[0]](a[s[0]])
            y = der[t[1]](a[s[1]])
            prod = star(star(x, y, order), a[s[2]], order)
            first += _sign(s) * _sign(t) * trace(prod)
    triple = 0
    for s in permutations(range(3)):
        triple += _sign(s) * star(star(a[s[0]], a[s[1]], order), a[s[2]], order)
    second = trace(star(q_series(order), triple, order))
    return sp.expand(first + q_weight * second), sp.expand(triple)


# --------------------------------------------------------------------------
# conversion from package objects
# --------------------------------------------------------------------------


def from_param(pp):
    total = 0
    for mono, c in pp.terms.items():
        term = sp.Rational(int(c.numerator), int(c.denominator))
        for name, e in mono:
            term *= sp.Symbol(name) ** e
        total += term
    return total


def from_h(x):
    total = 0
    for (h, i, j, mono), c in x.terms.items():
        term = sp.Rational(int(c.numerator), int(c.denominator)) * hbar**h * p**i * q**j
        for name, e in mono:
            term *= sp.Symbol(name) ** e
        total += term
    return sp.expand(total)


def from_series(s):
    return sp.expand(sum(from_param(s.coeff(k)) * hbar**k for k in range(s.order + 1)))
