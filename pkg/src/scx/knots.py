"""Concrete complexes and classical invariants for two-bridge and torus
knots.

The two-bridge generator counts lattice solutions of a + q b = 0 (mod p)
in boxes: a pair of positive integers (k1, k2) solving the congruence
system with interior count 1 and boundary count 0 certifies a
zero-dimensional instanton moduli point between flat connections, its
action is k1 k2 / p, and the parity of k1 k2 decides whether the matrix
entry survives with monopole weight T^2 - T^-2 or cancels.  Everything
else here is elementary number theory: torus-knot signatures by lattice
counting, Alexander polynomials by exact division, and an independent
Goeritz-style signature oracle from even continued fractions.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from . import equivariant, linalg, rings, scomplex
from .linalg import Matrix
from .scomplex import Generator, SComplex


class KnotError(Exception):
    pass


class InconsistentComplexError(KnotError):
    """The generated matrices violate the structural relations; the
    assumed-zero v map cannot be correct."""


# certificate search bound: accepted certificates provably have
# k1 k2 < 2p (the interior count grows linearly in k1 k2 / p), and the
# enumeration sweeps k1 k2 <= SEARCH_MARGIN * p as a safety margin.
SEARCH_MARGIN = 4


@dataclass(frozen=True)
class TwoBridgeKnot:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.p % 2 == 0:
            raise KnotError("p must be an odd positive integer")
        from math import gcd as igcd
        if igcd(self.p, self.q) != 1:
            raise KnotError(f"p={self.p}, q={self.q} are not coprime")

    @property
    def q_normalized(self):
        return self.q % self.p


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __post_init__(self):
        from math import gcd as igcd
        if self.p < 2 or self.q < 2:
            raise KnotError("torus knot parameters must be at least 2")
        if igcd(self.p, self.q) != 1:
            raise KnotError(f"p={self.p}, q={self.q} are not coprime")


@dataclass(frozen=True)
class ModuliCertificate:
    i: int
    j: int
    k1: int
    k2: int
    N1: int
    N2: int

    @property
    def action(self):
        return Fraction(self.k1 * self.k2, 1)


# ---------------------------------------------------------------------------
# congruence counting


def _count_congruent_in_range(m, c, p):
    # number of a with |a| <= m and a = c (mod p), for 0 <= c < p
    return (m - c) // p + (m + c) // p + 1


def count_N1N2(k1, k2, p, q):
    """Exact interior and boundary counts of a + q b = 0 (mod p) on the
    open box |a| < k1, |b| < k2 and its edges."""
    if k1 < 1 or k2 < 1:
        raise KnotError("box sides must be positive")
    n1 = 0
    if k1 >= k2:
        for b in range(-k2 + 1, k2):
            c = (-q * b) % p
            n1 += _count_congruent_in_range(k1 - 1, c, p)
    else:
        qinv = pow(q % p, -1, p)
        for a in range(-k1 + 1, k1):
            c = (-qinv * a) % p
            n1 += _count_congruent_in_range(k2 - 1, c, p)
    n2 = 0
    for b in (-k2, k2):
        c = (-q * b) % p
        n2 += _count_congruent_in_range(k1 - 1, c, p)
    qinv = pow(q % p, -1, p)
    for a in (-k1, k1):
        c = (-qinv * a) % p
        n2 += _count_congruent_in_range(k2 - 1, c, p)
    return n1, n2


def _n_counts_accept(k1, k2, p, q, want_n2):
    """(N1 == 1 and N2 == want_n2), with early abort."""
    count = 0
    if k1 >= k2:
        for b in range(-k2 + 1, k2):
            c = (-q * b) % p
            count += _count_congruent_in_range(k1 - 1, c, p)
            if count > 1:
                return False
    else:
        qinv = pow(q % p, -1, p)
        for a in range(-k1 + 1, k1):
            c = (-qinv * a) % p
            count += _count_congruent_in_range(k2 - 1, c, p)
            if count > 1:
                return False
    if count != 1:
        return False
    n2 = 0
    for b in (-k2, k2):
        c = (-q * b) % p
        n2 += _count_congruent_in_range(k1 - 1, c, p)
        if n2 > want_n2:
            return False
    qinv = pow(q % p, -1, p)
    for a in (-k1, k1):
        c = (-qinv * a) % p
        n2 += _count_congruent_in_range(k2 - 1, c, p)
        if n2 > want_n2:
            return False
    return n2 == want_n2


def _candidate_pairs(p, q, i, j):
    qinv = pow(q % p, -1, p)
    residues = set()
    for e1 in (1, -1):
        for e2 in (1, -1):
            r1 = (e1 * i + e2 * j) % p
            r2 = (qinv * (-e1 * i + e2 * j)) % p
            residues.add((r1 or p, r2 or p))
    bound = SEARCH_MARGIN * p
    pairs = set()
    for r1, r2 in residues:
        k1 = r1
        while k1 * r2 <= bound:
            k2 = r2
            while k1 * k2 <= bound:
                pairs.add((k1, k2))
                k2 += p
            k1 += p
    return sorted(pairs, key=lambda t: (t[0] * t[1], t[0]))


def solve_k1k2(p, q, i, j, boundary=0):
    """First certificate (ascending action) for the pair (i, j), or None.

    ``boundary=0`` asks for a moduli point (interior count 1, boundary
    0); ``boundary=2`` asks for the one-dimensional case instead.
    """
    if i == j:
        raise KnotError("indices must differ")
    for k1, k2 in _candidate_pairs(p, q, i, j):
        if _n_counts_accept(k1, k2, p, q, boundary):
            if boundary == 0:
                assert k1 * k2 < 2 * p, (
                    "accepted certificate exceeds the proven action bound")
            n1, n2 = count_N1N2(k1, k2, p, q)
            return ModuliCertificate(i, j, k1, k2, n1, n2)
    return None


@functools.lru_cache(maxsize=None)
def _certificate_table(p, q):
    m = (p - 1) // 2
    table = {}
    for i in range(m + 1):
        for j in range(m + 1):
            if i != j:
                table[(i, j)] = solve_k1k2(p, q, i, j)
    return table


# ---------------------------------------------------------------------------
# the two-bridge complex


@functools.lru_cache(maxsize=None)
def _two_bridge_data(p, q):
    """Gradings, Chern-Simons levels and local-coefficient entries of the
    two-bridge complex, over the universal ring with denominator p."""
    knot = TwoBridgeKnot(p, q)
    qn = knot.q_normalized
    m = (p - 1) // 2
    ring = rings.universal(p)
    qinv = pow(qn, -1, p)

    grs = {}
    degs = {0: Fraction(0)}
    for i in range(1, m + 1):
        k1 = i
        k2 = (-qinv * i) % p or p
        n1, n2 = count_N1N2(k1, k2, p, qn)
        if n1 % 2 != 1 or n2 % 2 != 0:
            raise InconsistentComplexError(
                f"count parities broken at generator {i} of K({p},{q})")
        grs[i] = (n1 + n2 // 2) % 4
        # representative of the Chern-Simons level in (0, 1]: composite p
        # can place an irreducible at an integral level
        r = (-qinv * i * i) % p
        degs[i] = Fraction(r, p) if r else Fraction(1)

    certs = _certificate_table(p, qn)
    tt = rings.var(ring, "T")
    weight = tt ** 2 - tt ** -2
    entries = {}
    for (i, j), cert in certs.items():
        if cert is None or (cert.k1 * cert.k2) % 2 == 0:
            continue
        u = 2 * (degs[i] - degs[j]) - Fraction(cert.k1 * cert.k2, p)
        entries[(i, j)] = rings.var(ring, "U", u) * weight

    # sign normalization (+1 everywhere) is valid only without directed
    # cycles among the nonzero entries
    adj = {}
    for (i, j) in entries:
        adj.setdefault(i, []).append(j)
    state = {}

    def cyclic(node):
        state[node] = 1
        for nxt in adj.get(node, ()):
            if state.get(nxt) == 1:
                return True
            if state.get(nxt) is None and cyclic(nxt):
                return True
        state[node] = 2
        return False

    if any(state.get(v) is None and cyclic(v) for v in adj):
        raise InconsistentComplexError(
            f"directed cycle among moduli entries of K({p},{q}); "
            "sign normalization is not justified")
    return ring, m, grs, degs, entries, qn


def _room_for_v(m, grs):
    return any(grs[i] % 4 == (grs[j] - 2) % 4
               for i in range(1, m + 1) for j in range(1, m + 1))


_RING_NAMES = {
    "universal": None, "z": rings.Z, "q": rings.Q, "f2": rings.F2,
    "f4": rings.F4, "zt": rings.ZT, "qt": rings.QT, "f2t": rings.F2T,
    "f4t": rings.F4T,
}


def two_bridge_complex(p, q, ring="universal"):
    """The S-complex of the two-bridge knot K(p, q).

    The canonical output lives over Z[U^(1/p)-Laurent, T-Laurent]; other
    rings are reached by the standard specializations (U -> 1, and T -> 1
    for the constant rings, T -> x for F4).  The v map is stored as zero;
    it is trusted when the gradings leave no room for v entries or the
    target ring kills T, untrusted otherwise, in which case the v
    relation may fail on the stored placeholder and v-dependent
    operations refuse the complex.

    Over rings with signs (integer or rational coefficients and a live T
    variable) the uniform +1 normalization of the moduli entries is valid
    only when no two broken flow lines collide; colliding knots are
    refused there, since the combinatorial data does not determine the
    signed lift.  Over characteristic-two targets the collisions cancel
    and every K(p, q) is available.
    """
    uring, m, grs, degs, entries, qn = _two_bridge_data(p, q)
    if ring in (None, "universal") or ring == uring:
        target, conv, keep_deg, t_killed = uring, (lambda e: e), True, False
    else:
        target, conv, t_killed = _entry_conversion(ring)
        keep_deg = False
    gens = [Generator(f"xi{i}", grs[i], degs[i] if keep_deg else None)
            for i in range(1, m + 1)]
    z = rings.zero(target)
    d = [[z] * m for _ in range(m)]
    for (i, j), e in entries.items():
        if i >= 1 and j >= 1:
            d[j - 1][i - 1] = conv(e)
    d1 = [[conv(entries.get((i, 0), rings.zero(uring)))
           for i in range(1, m + 1)]]
    d2 = [[conv(entries.get((0, j), rings.zero(uring)))]
          for j in range(1, m + 1)]
    trusted = True if t_killed else not _room_for_v(m, grs)
    C = SComplex(target, gens, Matrix(target, d, cols=m),
                 Matrix.zeros(target, m, m), Matrix(target, d1, cols=m),
                 Matrix(target, d2, cols=1), v_trusted=trusted)
    report = scomplex.validate(C)
    # With v stored as zero the only tolerable failure is the v relation,
    # and only when the gradings leave room for true v entries.
    hard = [f for f in report.failures if not f.startswith("d*v")]
    if hard:
        if not target.char_two:
            raise InconsistentComplexError(
                f"K({p},{q}) has colliding broken flow lines; its signed "
                f"lift over {target.tag} is not determined by the "
                "congruence data (use a characteristic-two ring)")
        raise InconsistentComplexError(
            f"generated K({p},{q}) complex is invalid: {hard}")
    if not report.ok and C.v_trusted:
        raise InconsistentComplexError(
            f"delta2*delta1 != 0 for K({p},{q}) but the gradings leave no "
            "room for any v map")
    return C


def _entry_conversion(ring):
    """Target ring, entry map from the universal data, and whether the
    specialization kills T (forcing the geometric v map to vanish)."""
    if isinstance(ring, str):
        try:
            target = _RING_NAMES[ring.lower()]
        except KeyError:
            raise KnotError(f"unknown ring name {ring!r}")
        if target is None:
            raise KnotError("universal handled by the caller")
    else:
        target = ring
    if target.udenom:
        raise KnotError("generate directly at the desired U-denominator")
    assign = {"U": rings.one(target)}
    t_killed = False
    if "T" in target.tvars:
        assign["T"] = rings.var(target, "T")
    elif target.tag == "F4":
        assign["T"] = rings.var(target, "x")
    else:
        assign["T"] = rings.one(target)
        t_killed = True

    def conv(e):
        return rings.base_change(e, assign, target)

    return target, conv, t_killed


# ---------------------------------------------------------------------------
# Sasahira homology of lens spaces


def lens_sasahira(p, q):
    """Graded F2 ranks of the lens-space instanton homology of L(p, q),
    built from the mirror two-bridge data with unit weights."""
    knot = TwoBridgeKnot(p, -q)
    _ring, m, grs, _degs, entries, _qn = _two_bridge_data(p, knot.q)
    f2 = rings.F2
    o, z = rings.one(f2), rings.zero(f2)
    D = [[z] * m for _ in range(m)]
    for (i, j), _e in entries.items():
        if i >= 1 and j >= 1:
            D[j - 1][i - 1] = o
    M = Matrix(f2, D, cols=m)
    if not (M * M).is_zero():
        raise InconsistentComplexError(
            f"Sasahira differential does not square to zero for L({p},{q})")
    ranks = {}
    for g in range(4):
        cols = [i for i in range(m) if grs[i + 1] % 4 == g]
        cols_up = [i for i in range(m) if grs[i + 1] % 4 == (g + 1) % 4]
        d_out = M.columns_selected(cols)
        d_in = M.columns_selected(cols_up).rows_selected(cols)
        ranks[g] = len(cols) - linalg.rank(d_out) - linalg.rank(d_in)
    return ranks


# ---------------------------------------------------------------------------
# torus knots


def torus_signature(p, q):
    """Signature of the (p, q) torus knot by exact lattice counting; the
    closed forms for q = 2kp +- 2 and q = (2k+1)p +- 2 are asserted
    against the count whenever they apply."""
    TorusKnot(p, q)
    if p % 2 == 0:
        p, q = q, p
    count = 0
    for m in range(1, (p - 1) // 2 + 1):
        for n in range(1, q):
            if 2 * (m * q + n * p) >= p * q:
                count += 1
    sigma = (p - 1) * (q - 1) - 4 * count

    for sign in (1, -1):
        r = q - sign * 2
        if r > 0 and r % (2 * p) == 0 and (r // (2 * p)) >= 1:
            k = r // (2 * p)
            closed = -(p - 1) * (k * p + k + sign)
            assert closed == sigma, (p, q, sigma, closed)
        if r > 0 and r % p == 0 and (r // p) % 2 == 1:
            kk = (r // p - 1) // 2
            closed = (-(p - 1) * ((2 * kk + 1) * (p + 1) // 2 + 2 * sign)
                      + sign * 4 * (p // 4))
            assert closed == sigma, (p, q, sigma, closed)
    return sigma


def torus_alexander(p, q):
    """Symmetrized Alexander polynomial of the (p, q) torus knot and the
    sum of the absolute values of its coefficients."""
    TorusKnot(p, q)
    ring = rings.ZT
    t = rings.var(ring, "T")
    o = rings.one(ring)
    num = (t ** (p * q) - o) * (t - o)
    den = (t ** p - o) * (t ** q - o)
    quot = rings.divide(num, den)
    assert quot is not None, "torus Alexander division must be exact"
    half = (p - 1) * (q - 1) // 2
    delta = quot * t ** (-half)
    total = sum(abs(c) for _k, c in delta.sorted_terms())

    for sign in (1, -1):
        r = q - sign * 2
        if r > 0 and r % p == 0:
            ell = r // p
            closed = (p - 1) // 2 * ((p + 1) * ell + 2 * sign) + sign
            assert closed == total, (p, q, total, closed)
    return delta, total


def vanishing_check(p, q):
    """True exactly when 1 + |sigma| = |Delta|, which forces h = 0."""
    sigma = torus_signature(p, q)
    _delta, total = torus_alexander(p, q)
    return 1 + abs(sigma) == total


# ---------------------------------------------------------------------------
# signature oracle for two-bridge knots


def _even_continued_fraction(p, qpp):
    """p/q'' = 2b1 - 1/(2b2 - 1/(...)) with all quotients even."""
    x = Fraction(p, qpp)
    terms = []
    while True:
        lo = 2 * (x / 2).__floor__()
        e = lo if abs(x - lo) < 1 else lo + 2
        assert abs(x - e) < 1, "no even quotient within distance one"
        terms.append(int(e))
        rem = e - x
        if rem == 0:
            return terms
        x = 1 / rem


def _symmetric_signature(M):
    """Signature of a symmetric matrix of Fractions, by congruence."""
    M = [row[:] for row in M]
    pos = neg = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i] != 0), None)
        if k is None:
            hit = next(((i, j) for i in range(n) for j in range(i + 1, n)
                        if M[i][j] != 0), None)
            if hit is None:
                break
            i, j = hit
            for c in range(n):
                M[i][c] += M[j][c]
            for r in range(n):
                M[r][i] += M[r][j]
            k = i
        a = M[k][k]
        if a > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != k]
        M = [[M[i][j] - M[i][k] * M[k][j] / a for j in rest] for i in rest]
    return pos - neg


def two_bridge_signature_oracle(p, q):
    """Knot signature of K(p, q) via the even continued fraction of the
    mirror parameter: the plumbing of bands along [2b1, ..., 2bm] has
    symmetrized Seifert form tridiag(2b_i; 1)."""
    knot = TwoBridgeKnot(p, q)
    r = (-knot.q) % p
    qpp = r if r % 2 == 0 else r - p
    terms = _even_continued_fraction(p, qpp)
    n = len(terms)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(terms):
        M[i][i] = Fraction(a)
        if i + 1 < n:
            M[i][i + 1] = M[i + 1][i] = Fraction(1)
    return _symmetric_signature(M)


# ---------------------------------------------------------------------------
# fixtures


def fixture(name):
    """Small complexes taken as fixed inputs: the trivial complex, the
    right-handed trefoil, and the (3,4)/(3,5) torus knot complexes."""
    if name == "trivial":
        return SComplex.trivial(rings.Z)
    if name == "trefoil":
        return two_bridge_complex(3, -1)
    if name in ("t34", "t35"):
        ring = rings.Z
        if name == "t34":
            grs, d1 = [1, 1, 3], [1, -1, 0]
        else:
            grs, d1 = [1, 1, 3, 3], [1, -1, 0, 0]
        n = len(grs)
        gens = [Generator(f"a{k+1}", g) for k, g in enumerate(grs)]
        C = SComplex(ring, gens, Matrix.zeros(ring, n, n),
                     Matrix.zeros(ring, n, n),
                     Matrix(ring, [[rings.from_int(ring, c) for c in d1]],
                            cols=n),
                     Matrix.zeros(ring, n, 1), v_trusted=True)
        assert scomplex.validate(C).ok
        return C
    raise KnotError(f"unknown fixture {name!r}")


def tilde_homology(C):
    """Invariant factors of the homology of the total complex."""
    _names, dt = C.dtilde()
    return linalg.homology(dt, dt)


# ---------------------------------------------------------------------------
# reports


@dataclass
class KnotInvariantReport:
    knot: str
    ring: str
    generators: list = field(default_factory=list)
    maps: dict = field(default_factory=dict)
    invariants: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "knot": self.knot, "ring": self.ring,
            "generators": self.generators, "maps": self.maps,
            "invariants": self.invariants, "warnings": self.warnings,
            "notes": self.notes,
        }


def _map_summary(M, label):
    cells = [(i, j, e.to_str()) for i in range(M.rows)
             for j in range(M.cols) if (e := M[i, j])]
    return {"label": label, "nonzero": len(cells), "entries": cells}


def two_bridge_report(p, q, ring="universal"):
    C = two_bridge_complex(p, q, ring)
    knot = TwoBridgeKnot(p, q)
    rep = KnotInvariantReport(knot=f"K({p},{q})", ring=C.ring.tag)
    if knot.q_normalized != q:
        rep.notes.append(
            f"q normalized to {knot.q_normalized} (mod {p})")
    rep.notes.append("signs normalized: all moduli entries taken with +1")
    for g in C.gens:
        rep.generators.append({
            "name": g.name, "gr_mod4": g.gr_mod4,
            "deg_I": None if g.deg_I is None else str(g.deg_I)})
    for label, M in (("d", C.d), ("v", C.v), ("delta1", C.delta1),
                     ("delta2", C.delta2)):
        rep.maps[label] = _map_summary(M, label)
    rep.invariants["euler_characteristic"] = scomplex.euler_characteristic(C)
    rep.invariants["signature_oracle"] = two_bridge_signature_oracle(p, q)
    rep.invariants["v_trusted"] = C.v_trusted
    if C.v_trusted:
        rep.invariants["h"] = equivariant.h_invariant(C)
    else:
        rep.warnings.append(
            "v map is assumed zero but the gradings leave room for v "
            "entries; h, ideal and Gamma computations are refused")
        parities = {}
        m = (p - 1) // 2
        qn = knot.q_normalized
        for i in range(m + 1):
            for j in range(m + 1):
                if i != j:
                    cert = solve_k1k2(p, qn, i, j, boundary=2)
                    if cert is not None:
                        parities[f"{i}->{j}"] = (
                            "T^2,T^-2" if (cert.k1 * cert.k2) % 2 else "T^0")
        if parities:
            rep.notes.append(
                f"one-dimensional moduli monopole parities: {parities}")
    return rep
