"""Division-free characteristic polynomial over any commutative ring."""

from __future__ import annotations


def berkowitz(rows, zero, one) -> list:
    """Coefficients of det(x*I - M), highest degree first (so ``[one, ...]``).

    ``rows`` is a square list of lists of ring elements supporting ``+``,
    ``-`` and ``*``. For the leading ``i x i`` block written as
    ``[[B, c], [r, a]]`` the coefficient vector is updated by a lower
    triangular Toeplitz matrix with first column
    ``1, -a, -r c, -r B c, -r B^2 c, ...``.
    """
    n = len(rows)
    poly = [one]
    for i in range(n):
        a = rows[i][i]
        r = [rows[i][j] for j in range(i)]
        c = [rows[j][i] for j in range(i)]
        col = [one, zero - a]
        vec = c
        for _ in range(i):
            acc = zero
            for x, y in zip(r, vec):
                acc = acc + x * y
            col.append(zero - acc)
            vec = [_dot(rows[j][:i], vec, zero) for j in range(i)]
        # poly has length i + 1; new poly has length i + 2
        new = []
        for k in range(i + 2):
            acc = zero
            for m in range(max(0, k - len(col) + 1), min(k, i) + 1):
                acc = acc + col[k - m] * poly[m]
            new.append(acc)
        poly = new
    return poly


def _dot(row, vec, zero):
    acc = zero
    for x, y in zip(row, vec):
        acc = acc + x * y
    return acc
