"""Slow, independent reference computations in plain Python ints.

Nothing here imports the package's linear algebra or Hochschild code: the
differential is built from the textbook formula on tuples and ranked by
schoolbook Gaussian elimination.  Algebras are passed as a plain nested
list of structure constants ``C[i][j][k]`` plus the prime.
"""

from itertools import product


def rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _mul(C, u, v, p):
    d = len(C)
    out = [0] * d
    for i in range(d):
        if u[i]:
            for j in range(d):
                if v[j]:
                    for k in range(d):
                        out[k] += u[i] * v[j] * C[i][j][k]
    return [x % p for x in out]


def _basis(d, i):
    e = [0] * d
    e[i] = 1
    return e


def hochschild_matrix(C, p, n, allowed=None):
    """Rows indexed by (inputs of length n+1, output), columns by (inputs of
    length n, output); ``allowed`` optionally restricts the cochain indices
    on both sides to a predicate ``allowed(inputs, out)``."""
    d = len(C)
    keep = allowed or (lambda ins, out: True)
    cols = [(t, o) for t in product(range(d), repeat=n) for o in range(d) if keep(t, o)]
    rows = [(t, o) for t in product(range(d), repeat=n + 1) for o in range(d) if keep(t, o)]
    col_pos = {c: k for k, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in rows]
    for r, (t, o) in enumerate(rows):
        # (bf)(a_1..a_{n+1}) = a_1 f(a_2..) + sum (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}
        for s in range(d):
            coef = C[t[0]][s][o]
            if coef and (t[1:], s) in col_pos:
                M[r][col_pos[(t[1:], s)]] += coef
        for i in range(n):
            for k in range(d):
                coef = C[t[i]][t[i + 1]][k]
                key = (t[:i] + (k,) + t[i + 2:], o)
                if coef and key in col_pos:
                    M[r][col_pos[key]] += (-1) ** (i + 1) * coef
        for s in range(d):
            coef = C[s][t[-1]][o]
            if coef and (t[:-1], s) in col_pos:
                M[r][col_pos[(t[:-1], s)]] += (-1) ** (n + 1) * coef
    return M, len(cols)


def hh_dims(C, p, n_max, allowed=None):
    """Full (non-normalized) complex, dense elimination."""
    ranks = []
    sizes = []
    for n in range(n_max + 1):
        M, ncols = hochschild_matrix(C, p, n, allowed)
        sizes.append(ncols)
        ranks.append(rank_mod_p(M, p))
    return [sizes[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


def graded_hh_dims(C, p, classes, m, n_max):
    """Per-class dims for a basis of homogeneous elements with given classes."""
    table = []
    for i in range(m):
        pred = lambda ins, out, i=i: (classes[out] - sum(classes[a] for a in ins)) % m == i
        table.append(hh_dims(C, p, n_max, pred))
    return table


def center_dim(C, p):
    d = len(C)
    rows = []
    for x in range(d):
        for k in range(d):
            rows.append([(C[x][a][k] - C[a][x][k]) % p for a in range(d)])
    return d - rank_mod_p(rows, p)


def is_associative(C, p):
    d = len(C)
    for i, j, k in product(range(d), repeat=3):
        ei, ej, ek = _basis(d, i), _basis(d, j), _basis(d, k)
        if _mul(C, _mul(C, ei, ej, p), ek, p) != _mul(C, ei, _mul(C, ej, ek, p), p):
            return False
    return True


def nakayama_oracle(C, p, phi):
    """Solve phi(a x) = phi(rho(x) a) for rho column by column by brute force
    over the linear system; returns rho as a list of columns."""
    d = len(C)
    G = [[sum(C[i][j][k] * phi[k] for k in range(d)) % p for j in range(d)] for i in range(d)]
    # rho(x) = sum r_c e_c with sum_c r_c G[c][a] = G[a][x] for all a
    cols = []
    for x in range(d):
        aug = [[G[c][a] for c in range(d)] + [G[a][x]] for a in range(d)]
        cols.append(_solve(aug, p))
    return cols


def _solve(aug, p):
    n = len(aug)
    aug = [r[:] for r in aug]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]
