"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Everything here is computed by direct enumeration or high-precision root
finding with mpmath; none of it shares code with the library.
"""
import itertools
import math

import mpmath as mp

mp.mp.dps = 40


def H(p):
    return -sum(x * mp.log(x, 2) for x in p if x > 0)


def D(p, r):
    return sum(a * mp.log(a / b, 2) for a, b in zip(p, r) if a > 0)


def hb(x):
    return H([x, 1 - x])


def hinv(target, lo, hi):
    return mp.findroot(lambda t: hb(t) - target, (lo, hi), solver="bisect")


def grid_E(R, p, step):
    best = mp.inf
    k = 0
    while k * step <= 1 + 1e-15:
        P = [mp.mpf(k) * step, 1 - mp.mpf(k) * step]
        if H(P) >= R:
            best = min(best, D(P, p))
        k += 1
    return best


def grid_F(R, p, step):
    best = mp.inf
    k = 0
    while k * step <= 1 + 1e-15:
        P = [mp.mpf(k) * step, 1 - mp.mpf(k) * step]
        best = min(best, max(H(P) - R, 0) + D(P, p))
        k += 1
    return best


def canonical_types(n, q):
    def rec(rem, parts):
        if parts == 1:
            yield (rem,)
            return
        for c in range(rem, -1, -1):
            for tail in rec(rem - c, parts - 1):
                yield (c,) + tail
    return list(rec(n, q))


def global_order(n, q):
    # all sequences grouped by canonical type, lexicographic inside each type
    seqs = list(itertools.product(range(q), repeat=n))
    order = []
    for t in canonical_types(n, q):
        cls = sorted(s for s in seqs if tuple(s.count(a) for a in range(q)) == t)
        order.extend(cls)
    return order


def balanced_deficit(pk, n, m):
    q = len(pk)
    M = q ** m
    dist = [mp.mpf(0)] * M
    for g, s in enumerate(global_order(n, q)):
        pr = mp.mpf(1)
        for a in s:
            pr *= pk[a]
        dist[g % M] += pr
    return m * mp.log(q, 2) - H(dist)


p = [mp.mpf("0.9"), mp.mpf("0.1")]
u = [mp.mpf("0.5"), mp.mpf("0.5")]
print("H(0.9,0.1) =", mp.nstr(H(p), 20))
print("D(u||p) =", mp.nstr(D(u, p), 20))

P1 = hinv(mp.mpf("0.8"), mp.mpf("0.1"), mp.mpf("0.5"))
print("E(0.8|p) boundary =", mp.nstr(D([P1, 1 - P1], [p[1], p[0]]), 20))
print("E(0.8|p) grid 1e-4 =", mp.nstr(grid_E(mp.mpf("0.8"), [p[1], p[0]], mp.mpf("1e-4")), 20))
P1 = hinv(mp.mpf("0.3"), mp.mpf("1e-12"), mp.mpf("0.1"))
print("F(0.3|p) boundary =", mp.nstr(D([P1, 1 - P1], [p[1], p[0]]), 20))
print("F(0.3|p) grid 1e-4 =", mp.nstr(grid_F(mp.mpf("0.3"), [p[1], p[0]], mp.mpf("1e-4")), 20))
print("F(0.4|u) grid 1e-4 =", mp.nstr(grid_F(mp.mpf("0.4"), u, mp.mpf("1e-4")), 20))

n, q, R = 8, 2, mp.mpf("0.8")
g = (q * mp.log(n + 1, 2) + mp.log(q, 2)) / n
print("gamma_8 =", mp.nstr(g, 20), "R_n =", mp.nstr(R + g, 20),
      "m =", int(mp.floor(n * (R + g))), "L1 =", int(mp.ceil(n * (R + g))))

size = sum(math.comb(8, k) for k in range(9) if hb(mp.mpf(k) / 8) <= R)
print("|C^8(0.8)| =", size)

pin = sum(math.comb(8, k) * p[0] ** (8 - k) * p[1] ** k for k in (0, 1, 7, 8))
print("p_raw =", mp.nstr(1 - pin, 20), "avg_len =", mp.nstr(5 * pin + 8 * (1 - pin), 20))

pk = [mp.mpf("0.6"), mp.mpf("0.4")]
print("deficit(0.6,0.4; n=8, m=5) =", mp.nstr(balanced_deficit(pk, 8, 5), 20))
print("global order n=3:", ["".join(map(str, s)) for s in global_order(3, 2)])

qq, eta, omega = mp.mpf("0.5"), 1, 1
print("lemma1 lhs,rhs =", mp.nstr(hb(qq), 15), mp.nstr((omega + mp.log(mp.e, 2)) * eta * 2 ** -omega, 15))
mu = mp.mpf("7.3")
print("HL, mu h(1/mu), log(e mu) =", mp.nstr(hb(mp.mpf("0.3")), 15),
      mp.nstr(mu * mp.log(mu, 2) - (mu - 1) * mp.log(mu - 1, 2), 15), mp.nstr(mp.log(mp.e * mu, 2), 15))
print("prop1 rhs n=8 =", mp.nstr(8 * H(p) - 3 - mp.log(2 * mp.e, 2), 15))
