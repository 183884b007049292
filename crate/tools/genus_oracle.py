"""Index, cusp count and genus of Gamma_G by brute force over SL2(Z/N).

Independent of the Rust code: cosets are orbits of G0 acting on the left,
and the genus comes from Riemann-Hurwitz on PSL2.
"""
import sys
from itertools import product


def mul(x, y, n):
    a, b, c, d = x
    e, f, g, h = y
    return ((a*e+b*g) % n, (a*f+b*h) % n, (c*e+d*g) % n, (c*f+d*h) % n)


def close(gens, n):
    one = (1 % n, 0, 0, 1 % n)
    seen = {one}
    todo = [one]
    while todo:
        x = todo.pop()
        for g in gens:
            y = mul(x, g, n)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def invariants(gens, n):
    g = close([tuple(v % n for v in m) for m in gens], n)
    g0 = [x for x in g if (x[0]*x[3]-x[1]*x[2]) % n == 1 % n]
    sl2 = [x for x in product(range(n), repeat=4) if (x[0]*x[3]-x[1]*x[2]) % n == 1 % n]
    label = {}
    cosets = []
    for x in sl2:
        if x in label:
            continue
        i = len(cosets)
        orbit = {mul(h, x, n) for h in g0}
        for y in orbit:
            label[y] = i
        cosets.append(x)
    m = len(cosets)
    minus = ((-1) % n, 0, 0, (-1) % n)
    S = (0, (-1) % n, 1 % n, 0)
    T = (1 % n, 1 % n, 0, 1 % n)
    tau = (0, (-1) % n, 1 % n, (-1) % n)
    cls = lambda i: min(i, label[mul(cosets[i], minus, n)])
    classes = sorted({cls(i) for i in range(m)})
    act = lambda i, s: cls(label[mul(cosets[i], s, n)])
    e2 = sum(1 for c in classes if act(c, S) == c)
    e3 = sum(1 for c in classes if act(c, tau) == c)
    seen = set()
    cusps = 0
    for c in classes:
        if c in seen:
            continue
        cusps += 1
        x = c
        while x not in seen:
            seen.add(x)
            x = act(x, T)
    mu = len(classes)
    genus = (12 + mu - 3*e2 - 4*e3 - 6*cusps) // 12
    return m, cusps, genus, len(g)


def nonres(p):
    return next(u for u in range(2, p) if pow(u, (p-1)//2, p) == p-1)


def ns_plus(p):
    u = nonres(p)
    elems = [(a, u*b % p, b, a) for a in range(p) for b in range(p) if (a*a-u*b*b) % p]
    return elems + [(1, 0, 0, p-1)], p


GROUPS = {
    "gamma0_11": ([(1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 2)], 11),
    "gamma_full_2": ([], 2),
    "gamma1_13": ([(1, 1, 0, 1), (1, 0, 0, 2)], 13),
    "ns_plus_13": ns_plus(13),
    "ns_plus_17": ns_plus(17),
    "h155": ([(1, 3, 12, 3), (1, 1, 12, 7), (1, 3, 0, 3), (1, 0, 2, 3)], 16),
    "level16": ([(2, 1, 3, 2), (0, 3, 5, 8), (1, 0, 0, 5), (1, 8, 0, 3)], 16),
    "e8": ([(7, 0, 0, 7), (2, 3, 3, 5), (0, 7, 7, 7), (3, 0, 0, 3), (4, 7, 7, 3)], 8),
    "e8_display": ([(2, 3, 3, 5), (3, 0, 0, 3), (7, 0, 0, 7), (7, 4, 3, 1), (4, 1, 3, 4)], 8),
}

if __name__ == "__main__":
    names = sys.argv[1:] or list(GROUPS)
    for name in names:
        gens, n = GROUPS[name]
        m, c, g, order = invariants(gens, n)
        print(f"{name}: level={n} order={order} index={m} cusps={c} genus={g}")
