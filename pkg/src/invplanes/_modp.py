"""Polynomials as ascending int lists modulo m, plus GF(p) factorization.

Everything here works on plain Python ints for speed; ``poly.Poly`` over
GF(p) and the integer Zassenhaus factorizer both delegate to it. Lists
are stripped of trailing zeros; ``[]`` is the zero polynomial.
"""

from __future__ import annotations

import random


def strip(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f, m: int) -> list[int]:
    return strip([c % m for c in f])


def add(f, g, m: int) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return reduce(out, m)


def sub(f, g, m: int) -> list[int]:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] -= c
    return reduce(out, m)


def mul(f, g, m: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return reduce(out, m)


def scale(f, c: int, m: int) -> list[int]:
    return reduce([a * c for a in f], m)


def divmod_(f, g, m: int) -> tuple[list[int], list[int]]:
    """Division by ``g`` whose leading coefficient is a unit mod m."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = reduce(list(f), m)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv = pow(g[-1], -1, m)
    q = [0] * (len(r) - dg)
    while len(r) - 1 >= dg:
        shift = len(r) - 1 - dg
        c = r[-1] * inv % m
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = (r[i + shift] - c * b) % m
        strip(r)
    return strip(q), r


def rem(f, g, m: int) -> list[int]:
    return divmod_(f, g, m)[1]


def monic(f, p: int) -> list[int]:
    if not f:
        return []
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f, g, p: int) -> list[int]:
    f, g = reduce(list(f), p), reduce(list(g), p)
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def xgcd(f, g, p: int) -> tuple[list[int], list[int], list[int]]:
    """Monic gcd h with s*f + t*g = h."""
    r0, r1 = reduce(list(f), p), reduce(list(g), p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(f, e: int, g, m: int) -> list[int]:
    result = [1 % m]
    base = rem(f, g, m)
    while e:
        if e & 1:
            result = rem(mul(result, base, m), g, m)
        base = rem(mul(base, base, m), g, m)
        e >>= 1
    return strip(result)


def derivative(f, m: int) -> list[int]:
    return reduce([i * c for i, c in enumerate(f)][1:], m)


def exact_div(f, g, p: int) -> list[int]:
    q, r = divmod_(f, g, p)
    assert not r, "inexact division"
    return q


def squarefree_decomposition(f, p: int) -> list[tuple[list[int], int]]:
    """Monic ``f`` as a product of squarefree parts with multiplicities."""
    f = monic(f, p)
    if len(f) <= 1:
        return []
    out: list[tuple[list[int], int]] = []
    df = derivative(f, p)
    if df:
        c = gcd(f, df, p)
        w = exact_div(f, c, p)
        i = 1
        while len(w) > 1:
            y = gcd(w, c, p)
            fac = exact_div(w, y, p)
            if len(fac) > 1:
                out.append((fac, i))
            i += 1
            w = y
            c = exact_div(c, y, p)
        if len(c) > 1:
            root = [c[j] for j in range(0, len(c), p)]
            out.extend((g, e * p) for g, e in squarefree_decomposition(root, p))
    else:
        root = [f[j] for j in range(0, len(f), p)]
        out.extend((g, e * p) for g, e in squarefree_decomposition(root, p))
    return out


def distinct_degree(f, p: int) -> list[tuple[list[int], int]]:
    """Split monic squarefree ``f`` into products of equal-degree irreducibles."""
    out = []
    rest = list(f)
    h = [0, 1]
    x = [0, 1]
    i = 1
    while len(rest) - 1 >= 2 * i:
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            rest = exact_div(rest, g, p)
            h = rem(h, rest, p)
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(f, d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus split of monic ``f`` whose irreducible factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    target = n // d
    factors = [f]
    e = (p**d - 1) // 2
    while len(factors) < target:
        a = strip([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = sub(powmod(a, e, f, p), [1], p)
        new = []
        for u in factors:
            if len(u) - 1 > d:
                h = gcd(u, g, p)
                if 1 < len(h) < len(u):
                    new.extend([h, exact_div(u, h, p)])
                    continue
            new.append(u)
        factors = new
    return factors


def factor_squarefree(f, p: int, rng: random.Random) -> list[list[int]]:
    out = []
    for g, d in distinct_degree(monic(f, p), p):
        out.extend(equal_degree(g, d, p, rng))
    return out


def factor(f, p: int, rng: random.Random) -> list[tuple[list[int], int]]:
    """Complete factorization of nonzero ``f`` into monic irreducibles."""
    out = []
    for g, e in squarefree_decomposition(f, p):
        out.extend((h, e) for h in factor_squarefree(g, p, rng))
    return out


def degree_pattern(f, p: int) -> list[int]:
    """Degrees of the irreducible factors of squarefree ``f`` mod p."""
    degs = []
    for g, d in distinct_degree(monic(f, p), p):
        degs.extend([d] * ((len(g) - 1) // d))
    return degs
