"""Factorization of integer polynomials (ascending int lists).

The production route is rational-root extraction followed by Zassenhaus:
factor mod a good prime, Hensel-lift past the Landau-Mignotte bound,
recombine subsets. ``kronecker_factor`` is an unrelated, much slower
interpolation search used only to cross-check small cases.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from . import _modp

_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def strip(f):
    return _modp.strip(list(f))


def content(f) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, c)
    return g


def primitive(f) -> list[int]:
    """Primitive part with positive leading coefficient."""
    f = strip(f)
    if not f:
        return []
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def zmul(f, g) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return strip(out)


def zdiv_exact(f, g) -> list[int] | None:
    """Quotient f/g if g divides f in Z[x], else None."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return None if r else []
    q = [0] * (len(r) - dg)
    lc = g[-1]
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c, m = divmod(r[-1], lc)
        if m:
            return None
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] -= c * b
        strip_in_place(r)
    if r:
        return None
    return strip(q)


def strip_in_place(r):
    while r and r[-1] == 0:
        r.pop()


def _qdivmod(f, g):
    r = [Fraction(c) for c in f]
    dg = len(g) - 1
    q = [Fraction(0)] * max(0, len(r) - dg)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = r[-1] / g[-1]
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] -= c * b
        strip_in_place(r)
    strip_in_place(q)
    return q, r


def _to_primitive_int(f) -> list[int]:
    if not f:
        return []
    den = 1
    for c in f:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return primitive([int(Fraction(c) * den) for c in f])


def zgcd(f, g) -> list[int]:
    """Primitive gcd in Z[x] (via Euclid over QQ with primitive remainders)."""
    f, g = primitive(f), primitive(g)
    while g:
        _, r = _qdivmod(f, g)
        f, g = g, _to_primitive_int(r)
    return primitive(f)


def derivative(f) -> list[int]:
    return strip([i * c for i, c in enumerate(f)][1:])


def _qmonic_gcd(f, g):
    f, g = [Fraction(c) for c in f], [Fraction(c) for c in g]
    strip_in_place(f)
    strip_in_place(g)
    while g:
        f, g = g, _qdivmod(f, g)[1]
    return [c / f[-1] for c in f]


def _qsub(f, g):
    n = max(len(f), len(g))
    out = [Fraction(0)] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] -= c
    strip_in_place(out)
    return out


def _qderiv(f):
    out = [i * c for i, c in enumerate(f)][1:]
    strip_in_place(out)
    return out


def squarefree_decomposition(f) -> list[tuple[list[int], int]]:
    """Yun's algorithm; squarefree parts returned primitive with lc > 0."""
    f = [Fraction(c) for c in primitive(f)]
    if len(f) <= 1:
        return []
    out = []
    df = _qderiv(f)
    a = _qmonic_gcd(f, df)
    b = _qdivmod(f, a)[0]
    c = _qdivmod(df, a)[0]
    d = _qsub(c, _qderiv(b))
    i = 1
    while len(b) > 1:
        a = _qmonic_gcd(b, d)
        if len(a) > 1:
            out.append((_to_primitive_int(a), i))
        b = _qdivmod(b, a)[0]
        c = _qdivmod(d, a)[0]
        d = _qsub(c, _qderiv(b))
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    q = 1
    while q * q <= n:
        if n % q == 0:
            small.append(q)
            if q * q != n:
                large.append(n // q)
        q += 1
    return small + large[::-1]


_ROOT_SEARCH_LIMIT = 10**10


def rational_roots(f) -> list[Fraction]:
    """Rational roots of squarefree primitive ``f`` by divisor search.

    Skipped (returns only the root 0, if any) when the constant or leading
    coefficient is too large to enumerate divisors; Zassenhaus still finds
    those linear factors.
    """
    f = strip(f)
    roots = []
    while f and f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
    if len(f) <= 1 or abs(f[0]) > _ROOT_SEARCH_LIMIT or abs(f[-1]) > _ROOT_SEARCH_LIMIT:
        return roots
    for b in _divisors(f[-1]):
        for a in _divisors(f[0]):
            if math.gcd(a, b) != 1:
                continue
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if _qeval(f, cand) == 0:
                    roots.append(cand)
    return roots


def _qeval(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _subset_sums(degs) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _hensel_pair(f, g, h, p, k):
    """Lift f = g*h mod p to mod p**k; g monic, gcd(g, h) = 1 mod p."""
    _, s, t = _modp.xgcd(g, h, p)
    pj = p
    for _ in range(1, k):
        diff = [a - b for a, b in itertools.zip_longest(f, zmul(g, h), fillvalue=0)]
        e = _modp.reduce([c // pj for c in diff], p)
        if e:
            q, gc = _modp.divmod_(_modp.mul(t, e, p), g, p)
            hc = _modp.add(_modp.mul(s, e, p), _modp.mul(q, h, p), p)
            g = [a + pj * b for a, b in itertools.zip_longest(g, gc, fillvalue=0)]
            h = [a + pj * b for a, b in itertools.zip_longest(h, hc, fillvalue=0)]
        pj *= p
    return _modp.reduce(g, pj), _modp.reduce(h, pj)


def _hensel_lift(f, factors, p, k):
    """Monic lifts mod p**k of the monic modular factors of ``f``."""
    m = p**k
    if len(factors) == 1:
        return [_modp.scale(f, pow(f[-1], -1, m), m)]
    half = len(factors) // 2
    g = [1]
    for u in factors[:half]:
        g = _modp.mul(g, u, p)
    h = [f[-1] % p]
    for u in factors[half:]:
        h = _modp.mul(h, u, p)
    G, H = _hensel_pair(_modp.reduce(f, m), g, h, p, k)
    return _hensel_lift(G, factors[:half], p, k) + _hensel_lift(H, factors[half:], p, k)


def _symmetric(f, m):
    half = m // 2
    return strip([c - m if c > half else c for c in (x % m for x in f)])


def zassenhaus(f, rng: random.Random | None = None) -> list[list[int]]:
    """Irreducible primitive factors of primitive squarefree ``f`` (deg >= 1)."""
    f = primitive(f)
    n = len(f) - 1
    if n <= 1:
        return [f]
    rng = rng or random.Random(0)
    lc = f[-1]
    allowed = set(range(n + 1))
    best = None
    tried = 0
    for p in _PRIMES:
        if lc % p == 0:
            continue
        fp = _modp.reduce(f, p)
        if len(_modp.gcd(fp, _modp.derivative(fp, p), p)) > 1:
            continue
        pattern = _modp.degree_pattern(fp, p)
        allowed &= _subset_sums(pattern)
        if best is None or len(pattern) < len(best[1]):
            best = (p, pattern)
        tried += 1
        if allowed == {0, n} or tried >= 5:
            break
    if best is None:
        raise ArithmeticError("no good prime found")  # pragma: no cover
    if allowed == {0, n}:
        return [f]
    p = best[0]
    modular = _modp.factor_squarefree(_modp.reduce(f, p), p, rng)
    if len(modular) == 1:
        return [f]
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    bound = abs(lc) * (2**n) * norm2
    k = 1
    while p**k <= 2 * bound:
        k += 1
    m = p**k
    lifted = _hensel_lift(f, modular, p, k)

    found = []
    idx = list(range(len(lifted)))
    size = 1
    rest = f
    while 2 * size <= len(idx):
        for subset in itertools.combinations(idx, size):
            deg = sum(len(lifted[i]) - 1 for i in subset)
            if deg not in allowed:
                continue
            cand = [rest[-1] % m]
            for i in subset:
                cand = _modp.mul(cand, lifted[i], m)
            cand = primitive(_symmetric(cand, m))
            # cheap constant-term test before full division
            if (cand[0] == 0) != (rest[0] == 0) or (cand[0] and rest[0] % cand[0]):
                continue
            q = zdiv_exact(rest, cand)
            if q is not None:
                found.append(cand)
                rest = primitive(q)
                idx = [i for i in idx if i not in subset]
                break
        else:
            size += 1
    found.append(rest)
    return found


def factor_primitive(f, rng: random.Random | None = None) -> list[tuple[list[int], int]]:
    """Irreducible factorization of a primitive integer polynomial."""
    out = []
    for g, e in squarefree_decomposition(f):
        roots = rational_roots(g)
        for r in roots:
            lin = [-r.numerator, r.denominator]
            out.append((lin, e))
            g = zdiv_exact(g, lin)
        if len(g) > 1:
            out.extend((h, e) for h in zassenhaus(g, rng))
    return out


# -- independent cross-check -------------------------------------------------


def _interpolate(xs, ys):
    """Lagrange interpolation over QQ, ascending coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = [Fraction(0)] + basis
                for t in range(len(basis) - 1):
                    basis[t] -= xs[j] * basis[t + 1]
                denom *= xs[i] - xs[j]
        for t in range(n):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def kronecker_factor(f) -> list[list[int]]:
    """Irreducible factors of primitive squarefree ``f`` by Kronecker's method.

    Exponential in the degree; only meant for small test inputs.
    """
    f = primitive(f)
    n = len(f) - 1
    if n <= 1:
        return [f]
    for m in range(1, n // 2 + 1):
        pts = []
        x = 0
        while len(pts) < m + 1:
            for cand in (x, -x) if x else (0,):
                v = int(_qeval(f, Fraction(cand)))
                if v == 0:
                    # integer root: linear factor found directly
                    lin = [-cand, 1]
                    return [lin] + kronecker_factor(zdiv_exact(f, lin))
                if len(pts) < m + 1:
                    pts.append((cand, v))
            x += 1
        xs = [Fraction(a) for a, _ in pts]
        choices = [_divisors(v) for _, v in pts]
        for combo in itertools.product(*choices):
            for signs in itertools.product((1, -1), repeat=m):
                ys = [Fraction(combo[0])] + [Fraction(s * c) for s, c in zip(signs, combo[1:])]
                g = _interpolate(xs, ys)
                strip_in_place(g)
                if len(g) - 1 != m or any(c.denominator != 1 for c in g):
                    continue
                gi = primitive([int(c) for c in g])
                q = zdiv_exact(f, gi)
                if q is not None:
                    return [gi] + kronecker_factor(q)
    return [f]
