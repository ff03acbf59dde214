"""Independent reference computations used by the tests.

Nothing here calls the minor tables, best approximation or Busemann march
of the package; each oracle works from a different description of the
same quantity.
"""
from __future__ import annotations

from fractions import Fraction


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _inverse3(m):
    """Adjugate inverse of a 3x3 matrix given by rows."""
    d = _det3(m)
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [a for a in range(3) if a != i]
            c = [b for b in range(3) if b != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return [[cof[j][i] / d for j in range(3)] for i in range(3)]


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for l in range(1, k):
                s = s + a[i][l] * b[l][j]
            row.append(s)
        out.append(row)
    return out


def smith_exponents(K, M):
    """Valuations of the invariant factors of ``M`` over the valuation ring.

    Plain pivoting on an entry of least valuation; every row and column
    operation used is unimodular over the ring.
    """
    M = [list(r) for r in M]
    n = len(M)
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if M[i][j] != 0:
                    v = K.val(M[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise ValueError("singular matrix")
        v, i, j = best
        M[k], M[i] = M[i], M[k]
        for r in M:
            r[k], r[j] = r[j], r[k]
        piv = M[k][k]
        for r in range(k + 1, n):
            f = M[r][k] / piv
            M[r] = [M[r][c] - f * M[k][c] for c in range(n)]
        for c in range(k + 1, n):
            f = M[k][c] / piv
            for r in range(n):
                M[r][c] = M[r][c] - f * M[r][k]
        out.append(v)
    return out


def lattice_cartan(K, xbasis, xweights, ybasis, yweights):
    """Cartan vector from ``(X, c)`` to ``(Y, d)`` with integer weights.

    The unit ball of ``(B, c)`` is the lattice spanned by ``pi^(-c_i) b_i``,
    so ``Y`` read in the lattice basis of ``X`` is
    ``M = diag(pi^c) X^-1 Y diag(pi^-d)``.  Its invariant factors
    ``pi^(a_i)`` give the Cartan vector ``-a`` sorted decreasingly,
    up to the diagonal shift.
    """
    pi = K.uniformizer
    X = [[K.coerce(xbasis[j][i]) for j in range(3)] for i in range(3)]
    Y = [[K.coerce(ybasis[j][i]) for j in range(3)] for i in range(3)]
    g = _matmul(_inverse3(X), Y)
    M = [[pi ** xweights[i] * g[i][j] * pi ** (-yweights[j]) if g[i][j] != 0 else g[i][j]
          for j in range(3)] for i in range(3)]
    a = smith_exponents(K, M)
    lam = sorted((-Fraction(e) for e in a), reverse=True)
    mean = sum(lam) / 3
    return tuple(x - mean for x in lam)


# --------------------------------------------------------------------------
# trees


def tree_log_norm(K, basis, weights, w):
    """``log N(w) - (v(det B) - sum c) / 2``: the log norm of ``w`` after
    normalizing the covolume, so homothetic norms agree."""
    (b11, b21), (b12, b22) = ((K.coerce(a) for a in b) for b in basis)
    w = [K.coerce(a) for a in w]
    d = b11 * b22 - b12 * b21
    u1 = (b22 * w[0] - b12 * w[1]) / d
    u2 = (-b21 * w[0] + b11 * w[1]) / d
    vals = [-K.val(u) - Fraction(c) for u, c in zip((u1, u2), weights) if u != 0]
    return max(vals) - (K.val(d) - sum(Fraction(c) for c in weights)) / 2


def tree_busemann_closed_form(K, w, x, y):
    """Busemann function towards the end ``[w]``: twice the drop of the normalized log norm."""
    return 2 * (tree_log_norm(K, *x, w) - tree_log_norm(K, *y, w))


def tripod_busemann(d_x_merge, d_y_merge):
    """Busemann value when the rays from ``x`` and ``y`` to the end first meet at a point
    at the given distances."""
    return Fraction(d_x_merge) - Fraction(d_y_merge)


# --------------------------------------------------------------------------
# cross ratios


def bir_affine(a, b, c, d):
    """Cross ratio of four affine scalars, ``None`` standing for infinity.

    ``(a-b)(c-d) / ((a-d)(b-c))``, so that ``Bir(inf, -1, 0, z) = z``.
    """
    if a is None:
        return (c - d) / (b - c)
    return ((a - b) * (c - d)) / ((a - d) * (b - c))
