"""Shared test machinery: seeded random S-complexes built from primitive
pieces closed under tensor/dual, and small independent oracles (naive box
counting, a transform-free integer Smith reduction) used to freeze
expected values."""

import random
from fractions import Fraction

from scx import linalg, rings, scomplex
from scx.linalg import Matrix
from scx.scomplex import Generator, SComplex


def random_poly(rng, ring, allow_zero=False):
    if allow_zero and rng.random() < 0.3:
        return rings.zero(ring)
    if ring.base == "Z":
        c = rng.choice([1, -1, 2, -2, 1])
    elif ring.base == "Q":
        c = Fraction(rng.choice([1, -1, 2]), rng.choice([1, 1, 2]))
    else:
        c = 1
    t = rng.randint(-2, 2) if ring.tvars else None
    u = 0
    if ring.udenom:
        u = Fraction(rng.randint(-2, 2), 1)
    p = rings.monomial(ring, c, u=u, t=t if t is not None else ())
    if rng.random() < 0.4 and ring.tvars:
        p = p + rings.monomial(ring, c, t=rng.randint(-2, 2))
    return p if p else rings.one(ring)


def _primitive(rng, ring):
    kind = rng.choice(["zero", "delta1", "delta2", "dpair", "vpair"])
    if kind == "zero":
        n = rng.randint(1, 2)
        gens = [Generator(f"z{k}", rng.randrange(4)) for k in range(n)]
        return SComplex.zero_maps(ring, gens)
    if kind == "delta1":
        gens = [Generator("a", 1)]
        C = SComplex(ring, gens, Matrix.zeros(ring, 1, 1),
                     Matrix.zeros(ring, 1, 1),
                     Matrix(ring, [[random_poly(rng, ring)]]),
                     Matrix.zeros(ring, 1, 1))
        return C
    if kind == "delta2":
        gens = [Generator("b", 2)]
        return SComplex(ring, gens, Matrix.zeros(ring, 1, 1),
                        Matrix.zeros(ring, 1, 1),
                        Matrix.zeros(ring, 1, 1),
                        Matrix(ring, [[random_poly(rng, ring)]]))
    if kind == "dpair":
        g = rng.randrange(4)
        gens = [Generator("s", g), Generator("t", (g - 1) % 4)]
        z = rings.zero(ring)
        d = Matrix(ring, [[z, z], [random_poly(rng, ring), z]])
        return SComplex(ring, gens, d, Matrix.zeros(ring, 2, 2),
                        Matrix.zeros(ring, 1, 2), Matrix.zeros(ring, 2, 1))
    g = rng.randrange(4)
    gens = [Generator("s", g), Generator("t", (g - 2) % 4)]
    z = rings.zero(ring)
    v = Matrix(ring, [[z, z], [random_poly(rng, ring), z]])
    return SComplex(ring, gens, Matrix.zeros(ring, 2, 2), v,
                    Matrix.zeros(ring, 1, 2), Matrix.zeros(ring, 2, 1))


def _rename(C, tag):
    gens = [Generator(f"{tag}.{g.name}", g.gr_mod4, g.deg_I, g.hol)
            for g in C.gens]
    return SComplex(C.ring, gens, C.d, C.v, C.delta1, C.delta2, C.v_trusted)


def random_scomplex(rng, ring, max_gens=12, allow_dual=True):
    """A random valid S-complex with nilpotent v: tensor products and
    duals of five primitive shapes."""
    C = _rename(_primitive(rng, ring), "p0")
    for step in range(rng.randint(0, 2)):
        P = _rename(_primitive(rng, ring), f"p{step+1}")
        if 2 * C.n * P.n + C.n + P.n > max_gens:
            break
        C = scomplex.tensor(C, P)
    if allow_dual and rng.random() < 0.3:
        C = scomplex.dual(C)
    report = scomplex.validate(C)
    assert report.ok, report.failures
    return C


# ---------------------------------------------------------------------------
# independent oracles


def naive_counts(k1, k2, p, q):
    """Box counts by raw double loops (the stated enumeration oracle)."""
    n1 = sum(1 for a in range(-k1 + 1, k1) for b in range(-k2 + 1, k2)
             if (a + q * b) % p == 0)
    n2 = 0
    for a in range(-k1, k1 + 1):
        for b in range(-k2, k2 + 1):
            on_a, on_b = abs(a) == k1, abs(b) == k2
            if on_a != on_b and (a + q * b) % p == 0:
                n2 += 1
    return n1, n2


def naive_cert_search(p, q, i, j, bound_factor=4):
    """Exhaustive (k1, k2) search using only naive_counts."""
    qinv = pow(q % p, -1, p)
    best = None
    for k1 in range(1, bound_factor * p + 1):
        for k2 in range(1, bound_factor * p // k1 + 1):
            ok = False
            for e1 in (1, -1):
                for e2 in (1, -1):
                    if (k1 - e1 * i - e2 * j) % p == 0 and \
                            (q * k2 + e1 * i - e2 * j) % p == 0:
                        ok = True
            if not ok:
                continue
            n1, n2 = naive_counts(k1, k2, p, q)
            if n1 == 1 and n2 == 0:
                if best is None or k1 * k2 < best[0] * best[1]:
                    best = (k1, k2)
    return best


def naive_integer_diagonal(rows):
    """Invariant factors of an integer matrix by a transform-free Smith
    reduction; used as an oracle for homology computations."""
    A = [list(r) for r in rows]
    m, n = len(A), len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < piv[0]):
                    piv = (abs(A[i][j]), i, j)
        if piv is None:
            break
        _, pi, pj = piv
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    qq = A[i][t] // A[t][t]
                    A[i] = [x - qq * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    qq = A[t][j] // A[t][t]
                    for i in range(m):
                        A[i][j] -= qq * A[i][t]
                    if A[t][j]:
                        for i in range(m):
                            A[i][t], A[i][j] = A[i][j], A[i][t]
                        dirty = True
        diag.append(abs(A[t][t]))
        t += 1
    out = []
    for d in diag:
        if d:
            out.append(d)
    # enforce the divisibility chain by gcd/lcm swaps
    import math
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            a, b = out[i], out[i + 1]
            if b % a:
                g = math.gcd(a, b)
                out[i], out[i + 1] = g, a * b // g
                changed = True
    return out


def int_matrix(ring, rows, cols=None):
    return Matrix(ring, [[rings.from_int(ring, v) for v in row]
                         for row in rows], cols=cols)
