"""Plain-loop reference implementations, written without numpy or package code."""

import itertools


def is_shelf(t):
    n = len(t)
    r = range(n)
    return all(t[a][t[b][c]] == t[t[a][b]][t[a][c]] for a in r for b in r for c in r)


def is_rack(t):
    return is_shelf(t) and all(sorted(row) == list(range(len(t))) for row in t)


def is_quandle(t):
    return is_rack(t) and all(t[a][a] == a for a in range(len(t)))


def apply_r(sigma, tau, a, b):
    return sigma[a][b], tau[b][a]


def is_braid(sigma, tau):
    n = len(sigma)
    for a, b, c in itertools.product(range(n), repeat=3):
        x, y = apply_r(sigma, tau, a, b)
        y, z = apply_r(sigma, tau, y, c)
        x, y = apply_r(sigma, tau, x, y)
        p, q = apply_r(sigma, tau, b, c)
        u, p = apply_r(sigma, tau, a, p)
        p, q = apply_r(sigma, tau, p, q)
        if (x, y, z) != (u, p, q):
            return False
    return True


def is_group(t):
    n = len(t)
    r = range(n)
    if any(t[t[a][b]][c] != t[a][t[b][c]] for a in r for b in r for c in r):
        return False
    ids = [e for e in r if all(t[e][x] == x == t[x][e] for x in r)]
    return len(ids) == 1 and all(any(t[a][b] == ids[0] for b in r) for a in r)


def matmul(x, y):
    n = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def kron(x, y):
    p, q = len(x), len(y)
    return [[x[i // q][j // q] * y[i % q][j % q] for j in range(p * q)] for i in range(p * q)]


def eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def leg_op(pairs_fn, n, legs, total=3):
    """Matrix on V^{⊗total} of the basis map acting on two legs via ``pairs_fn``."""
    dim = n ** total
    m = [[0] * dim for _ in range(dim)]
    for idx in itertools.product(range(n), repeat=total):
        i, j = legs
        for (u, v), coeff in pairs_fn(idx[i - 1], idx[j - 1]):
            out = list(idx)
            out[i - 1], out[j - 1] = u, v
            row = sum(x * n ** (total - 1 - k) for k, x in enumerate(out))
            col = sum(x * n ** (total - 1 - k) for k, x in enumerate(idx))
            m[row][col] += coeff
    return m
