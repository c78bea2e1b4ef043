"""The category of S-complexes.

An S-complex over a ring R is a finitely generated free complex
C + C[1] + R whose total differential is assembled from four maps on the
irreducible part C: a differential d (degree -1 mod 4), an endomorphism v
(degree -2), a functional delta1 defined on degree 1, and a map delta2
from the reducible line into degree -2.  The structure maps must satisfy

    d*d = 0,  delta1*d = 0,  d*delta2 = 0,  d*v - v*d - delta2*delta1 = 0,

with gradings as above.  This module provides construction, validation,
tensor products, duals, morphism checking, Euler characteristics,
coefficient base change, the unreduced mapping-cone model, and the JSON
wire format shared with the command line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, rings
from .linalg import Matrix
from .rings import RingError, RingMismatchError


class SComplexError(Exception):
    pass


class SchemaError(SComplexError):
    """A serialized document does not follow the JSON schema."""


@dataclass(frozen=True)
class Generator:
    name: str
    gr_mod4: int
    deg_I: Fraction | None = None
    hol: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "gr_mod4", self.gr_mod4 % 4)


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)

    def add(self, msg):
        self.ok = False
        self.failures.append(msg)

    def __bool__(self):
        return self.ok


class SComplex:
    """Finitely generated S-complex with explicit structure matrices.

    ``v_trusted`` records whether the v map is known exactly; generated
    two-bridge complexes mark it False whenever the gradings leave room
    for instanton contributions that the generator does not compute.
    """

    __slots__ = ("ring", "gens", "d", "v", "delta1", "delta2", "v_trusted")

    def __init__(self, ring, gens, d, v, delta1, delta2, v_trusted=True):
        n = len(gens)
        if len({g.name for g in gens}) != n:
            raise SComplexError("generator names must be unique")
        graded = [g.deg_I is not None for g in gens]
        if any(graded) and not all(graded):
            raise SComplexError("deg_I must be present on all generators "
                                "or on none")
        for M, (r, c), label in ((d, (n, n), "d"), (v, (n, n), "v"),
                                 (delta1, (1, n), "delta1"),
                                 (delta2, (n, 1), "delta2")):
            if M.ring != ring:
                raise RingMismatchError(f"{label} over {M.ring}, not {ring}")
            if (M.rows, M.cols) != (r, c):
                raise SComplexError(
                    f"{label} has shape {M.rows}x{M.cols}, expected {r}x{c}")
        self.ring = ring
        self.gens = list(gens)
        self.d = d
        self.v = v
        self.delta1 = delta1
        self.delta2 = delta2
        self.v_trusted = bool(v_trusted)

    @property
    def n(self):
        return len(self.gens)

    def is_I_graded(self):
        return bool(self.ring.udenom) and all(g.deg_I is not None
                                              for g in self.gens)

    @classmethod
    def zero_maps(cls, ring, gens, v_trusted=True):
        n = len(gens)
        return cls(ring, gens, Matrix.zeros(ring, n, n),
                   Matrix.zeros(ring, n, n), Matrix.zeros(ring, 1, n),
                   Matrix.zeros(ring, n, 1), v_trusted)

    @classmethod
    def trivial(cls, ring):
        return cls.zero_maps(ring, [])

    def dtilde(self):
        """Total complex basis [C gens, shifted gens, reducible] and its
        differential [[d,0,0],[v,-d,delta2],[delta1,0,0]]."""
        n = self.n
        names = ([(g.name, g.gr_mod4) for g in self.gens]
                 + [(g.name + "~", (g.gr_mod4 + 1) % 4) for g in self.gens]
                 + [("e0", 0)])
        z_nn = Matrix.zeros(self.ring, n, n)
        z_n1 = Matrix.zeros(self.ring, n, 1)
        z_1n = Matrix.zeros(self.ring, 1, n)
        z_11 = Matrix.zeros(self.ring, 1, 1)
        top = self.d.hstack(z_nn).hstack(z_n1)
        mid = self.v.hstack(-self.d).hstack(self.delta2)
        bot = self.delta1.hstack(z_1n).hstack(z_11)
        return names, top.vstack(mid).vstack(bot)

    def chi_matrix(self):
        """The degree-1 endomorphism of the total complex: identity from
        the first summand onto the shifted copy, zero elsewhere."""
        n = self.n
        size = 2 * n + 1
        M = Matrix.zeros(self.ring, size, size)
        data = [row[:] for row in M.data]
        o = rings.one(self.ring)
        for i in range(n):
            data[n + i][i] = o
        return Matrix(self.ring, data)

    def __repr__(self):
        return (f"<SComplex over {self.ring.tag} with {self.n} generators, "
                f"v_trusted={self.v_trusted}>")


# ---------------------------------------------------------------------------
# validation


def _entry_gradings_ok(report, label, M, src_grs, dst_grs, drop):
    for i in range(M.rows):
        for j in range(M.cols):
            if M[i, j] and (src_grs[j] - drop) % 4 != dst_grs[i] % 4:
                report.add(f"{label}[{i},{j}] nonzero but grading "
                           f"{src_grs[j]} -/-> {dst_grs[i]} (drop {drop})")


def _entry_levels_ok(report, label, M, src_deg, dst_deg, strict):
    # Chern-Simons filtration check, path-normalized: an entry monomial
    # U^u from level a to level b has integer defect n = u - (a - b) and
    # its image sits at level n + b, which must not exceed a.
    for i in range(M.rows):
        for j in range(M.cols):
            e = M[i, j]
            if not e:
                continue
            a, b = src_deg[j], dst_deg[i]
            for (x, u, ts), _c in e.sorted_terms():
                defect = u - (a - b)
                if defect.denominator != 1:
                    report.add(f"{label}[{i},{j}]: U^{u} incompatible with "
                               f"levels {a} -> {b}")
                    continue
                level = defect + b
                if level > a or (strict and level == a):
                    report.add(f"{label}[{i},{j}]: monomial U^{u} lands at "
                               f"level {level}, not below {a}")


def validate(C):
    """Check the structural relations, gradings and (when present) the
    level-0 instanton filtration.  Failures are report items, never
    exceptions."""
    report = ValidationReport(True)
    grs = [g.gr_mod4 for g in C.gens]

    if not (C.d * C.d).is_zero():
        report.add("d*d != 0")
    if not (C.delta1 * C.d).is_zero():
        report.add("delta1*d != 0")
    if not (C.d * C.delta2).is_zero():
        report.add("d*delta2 != 0")
    if not (C.d * C.v - C.v * C.d - C.delta2 * C.delta1).is_zero():
        report.add("d*v - v*d - delta2*delta1 != 0")

    _entry_gradings_ok(report, "d", C.d, grs, grs, 1)
    _entry_gradings_ok(report, "v", C.v, grs, grs, 2)
    for j in range(C.n):
        if C.delta1[0, j] and grs[j] % 4 != 1:
            report.add(f"delta1[{j}] nonzero on grading {grs[j]} generator")
    for i in range(C.n):
        if C.delta2[i, 0] and grs[i] % 4 != 2:
            report.add(f"delta2[{i}] lands in grading {grs[i]}, not 2")

    if C.is_I_graded():
        degs = [g.deg_I for g in C.gens]
        zero_level = [Fraction(0)]
        _entry_levels_ok(report, "d", C.d, degs, degs, strict=True)
        _entry_levels_ok(report, "v", C.v, degs, degs, strict=False)
        _entry_levels_ok(report, "delta1", C.delta1, degs, zero_level,
                         strict=True)
        _entry_levels_ok(report, "delta2", C.delta2, zero_level, degs,
                         strict=True)
    return report


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class SMorphism:
    source: SComplex
    target: SComplex
    lam: Matrix
    mu: Matrix
    Delta1: Matrix  # 1 x n_source
    Delta2: Matrix  # n_target x 1

    @classmethod
    def identity(cls, C):
        n = C.n
        return cls(C, C, Matrix.identity(C.ring, n),
                   Matrix.zeros(C.ring, n, n), Matrix.zeros(C.ring, 1, n),
                   Matrix.zeros(C.ring, n, 1))


def check_morphism(m):
    """The four chain-map relations of an S-morphism, as a report."""
    report = ValidationReport(True)
    A, B = m.source, m.target
    if A.ring != B.ring:
        report.add("source and target over different rings")
        return report
    if not (m.lam * A.d - B.d * m.lam).is_zero():
        report.add("lambda*d - d'*lambda != 0")
    if not (m.Delta1 * A.d + A.delta1 - B.delta1 * m.lam).is_zero():
        report.add("Delta1*d + delta1 - delta1'*lambda != 0")
    if not (B.d * m.Delta2 - B.delta2 + m.lam * A.delta2).is_zero():
        report.add("d'*Delta2 - delta2' + lambda*delta2 != 0")
    r4 = (m.mu * A.d + m.lam * A.v + m.Delta2 * A.delta1 - B.v * m.lam
          + B.d * m.mu - B.delta2 * m.Delta1)
    if not r4.is_zero():
        report.add("mu*d + lambda*v + Delta2*delta1 - v'*lambda + d'*mu "
                   "- delta2'*Delta1 != 0")
    return report


# ---------------------------------------------------------------------------
# tensor product


def _eps(g):
    return -1 if g % 4 in (1, 3) else 1


def tensor(C, Cp):
    """Tensor product S-complex on (CxC') + (CxC')[1] + C + C'.

    The block formulas carry Koszul signs through the sign map eps; over
    characteristic-two rings all signs collapse.
    """
    if C.ring != Cp.ring:
        raise RingMismatchError(f"{C.ring} vs {Cp.ring}")
    ring = C.ring
    igraded = C.is_I_graded() and Cp.is_I_graded()

    pairs = [(i, j) for i in range(C.n) for j in range(Cp.n)]
    p_idx = {ij: k for k, ij in enumerate(pairs)}
    np_ = len(pairs)
    n1, n2 = C.n, Cp.n
    total = 2 * np_ + n1 + n2

    def pair_gen(i, j, shifted):
        a, b = C.gens[i], Cp.gens[j]
        name = f"({a.name}&{b.name})" + ("~" if shifted else "")
        gr = (a.gr_mod4 + b.gr_mod4 + (1 if shifted else 0)) % 4
        deg = (a.deg_I + b.deg_I) if igraded else None
        return Generator(name, gr, deg)

    gens = ([pair_gen(i, j, False) for i, j in pairs]
            + [pair_gen(i, j, True) for i, j in pairs]
            + [Generator(f"({g.name}&-)", g.gr_mod4,
                         g.deg_I if igraded else None) for g in C.gens]
            + [Generator(f"(-&{g.name})", g.gr_mod4,
                         g.deg_I if igraded else None) for g in Cp.gens])

    z = rings.zero(ring)
    D = [[z] * total for _ in range(total)]
    V = [[z] * total for _ in range(total)]
    D1 = [[z] * total]
    D2 = [[z] for _ in range(total)]

    def sgn(g, p):
        return p if _eps(g) == 1 or ring.char_two else -p

    off2 = np_
    off3 = 2 * np_
    off4 = 2 * np_ + n1

    for (i, j), col in p_idx.items():
        ga = C.gens[i].gr_mod4
        # block (1,1): d x 1 + eps x d'
        for i2 in range(n1):
            if C.d[i2, i]:
                r = p_idx[(i2, j)]
                D[r][col] = D[r][col] + C.d[i2, i]
        for j2 in range(n2):
            if Cp.d[j2, j]:
                r = p_idx[(i, j2)]
                D[r][col] = D[r][col] + sgn(ga, Cp.d[j2, j])
        # block (2,1): -eps v x 1 + eps x v'
        for i2 in range(n1):
            if C.v[i2, i]:
                r = off2 + p_idx[(i2, j)]
                D[r][col] = D[r][col] - sgn(ga, C.v[i2, i])
        for j2 in range(n2):
            if Cp.v[j2, j]:
                r = off2 + p_idx[(i, j2)]
                D[r][col] = D[r][col] + sgn(ga, Cp.v[j2, j])
        # block (3,1): eps x delta1'
        if Cp.delta1[0, j]:
            r = off3 + i
            D[r][col] = D[r][col] + sgn(ga, Cp.delta1[0, j])
        # block (4,1): delta1 x 1
        if C.delta1[0, i]:
            r = off4 + j
            D[r][col] = D[r][col] + C.delta1[0, i]
        # v block (1,1): v x 1
        for i2 in range(n1):
            if C.v[i2, i]:
                V[p_idx[(i2, j)]][col] = C.v[i2, i]

    for (i, j), k in p_idx.items():
        col = off2 + k
        ga = C.gens[i].gr_mod4
        # block (2,2): d x 1 - eps x d'
        for i2 in range(n1):
            if C.d[i2, i]:
                r = off2 + p_idx[(i2, j)]
                D[r][col] = D[r][col] + C.d[i2, i]
        for j2 in range(n2):
            if Cp.d[j2, j]:
                r = off2 + p_idx[(i, j2)]
                D[r][col] = D[r][col] - sgn(ga, Cp.d[j2, j])
        # v block (2,2): v x 1
        for i2 in range(n1):
            if C.v[i2, i]:
                V[off2 + p_idx[(i2, j)]][col] = C.v[i2, i]
        # v block (4,2): delta1 x 1
        if C.delta1[0, i]:
            V[off4 + j][col] = C.delta1[0, i]

    for i in range(n1):
        col = off3 + i
        ga = C.gens[i].gr_mod4
        # block (2,3): eps x delta2'
        for j2 in range(n2):
            if Cp.delta2[j2, 0]:
                r = off2 + p_idx[(i, j2)]
                D[r][col] = D[r][col] + sgn(ga, Cp.delta2[j2, 0])
        # block (3,3): d
        for i2 in range(n1):
            if C.d[i2, i]:
                D[off3 + i2][col] = C.d[i2, i]
        # v block (3,3): v
        for i2 in range(n1):
            if C.v[i2, i]:
                V[off3 + i2][col] = C.v[i2, i]
        D1[0][col] = C.delta1[0, i]
        D2[col][0] = C.delta2[i, 0]

    for j in range(n2):
        col = off4 + j
        # block (2,4): -delta2 x 1
        for i2 in range(n1):
            if C.delta2[i2, 0]:
                r = off2 + p_idx[(i2, j)]
                D[r][col] = D[r][col] - C.delta2[i2, 0]
        # block (4,4): d'
        for j2 in range(n2):
            if Cp.d[j2, j]:
                D[off4 + j2][col] = Cp.d[j2, j]
        # v block (1,4): delta2 x 1
        for i2 in range(n1):
            if C.delta2[i2, 0]:
                V[p_idx[(i2, j)]][col] = C.delta2[i2, 0]
        # v block (4,4): v'
        for j2 in range(n2):
            if Cp.v[j2, j]:
                V[off4 + j2][col] = Cp.v[j2, j]
        D1[0][col] = Cp.delta1[0, j]
        D2[col][0] = Cp.delta2[j, 0]

    return SComplex(ring, gens, Matrix(ring, D, cols=total),
                    Matrix(ring, V, cols=total), Matrix(ring, D1, cols=total),
                    Matrix(ring, D2, cols=1),
                    v_trusted=C.v_trusted and Cp.v_trusted)


# ---------------------------------------------------------------------------
# duals


def dual(C, grading="reverse"):
    """Dual S-complex.

    ``grading="reverse"`` places the dual of a grading-i generator in
    grading 3-i (mod 4), the orientation-reversal convention; this is the
    unique choice compatible with the structure-map gradings.  The
    alternate flag ``grading="negate"`` uses plain -i, which violates the
    delta-map grading constraints whenever delta1 or delta2 is nonzero.
    """
    if grading not in ("reverse", "negate"):
        raise ValueError("grading must be 'reverse' or 'negate'")
    ring = C.ring
    n = C.n
    shift = 3 if grading == "reverse" else 0
    gens = [Generator(g.name + "*", (shift - g.gr_mod4) % 4)
            for g in C.gens]
    z = rings.zero(ring)
    Dd = [[z] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            e = C.d[b, a]
            if e:
                # sign (-1)^(gr of the original source of the dualized map)
                Dd[a][b] = e if (ring.char_two
                                 or C.gens[b].gr_mod4 % 2 == 0) else -e
    Vd = C.v.transpose()
    d1 = Matrix(ring, [[C.delta2[j, 0] for j in range(n)]], cols=n)
    d2 = Matrix(ring, [[-C.delta1[0, i]] for i in range(n)], cols=1)
    return SComplex(ring, gens, Matrix(ring, Dd, cols=n), Vd, d1, d2,
                    v_trusted=C.v_trusted)


# ---------------------------------------------------------------------------
# Euler characteristic, base change


def euler_characteristic(C):
    """Sum of (-1)^gr over the irreducible generators; for two-bridge
    complexes this equals half the knot signature."""
    return sum(_eps(g.gr_mod4) for g in C.gens)


def base_change_complex(C, assignment, target, check=True,
                        v_trusted=None):
    """Apply a coefficient base change entry-wise.

    deg_I survives only into rings that still carry U; hol only where a
    T variable remains.  ``v_trusted`` is inherited unless the caller
    knows better (e.g. the two-bridge generator promotes it for untwisted
    targets, where the geometric v map vanishes).
    """
    def bc(p):
        return rings.base_change(p, assignment, target)

    keep_deg = bool(target.udenom)
    keep_hol = bool(target.tvars)
    gens = [Generator(g.name, g.gr_mod4, g.deg_I if keep_deg else None,
                      g.hol if keep_hol else None) for g in C.gens]
    out = SComplex(target, gens, C.d.map_entries(bc, target),
                   C.v.map_entries(bc, target),
                   C.delta1.map_entries(bc, target),
                   C.delta2.map_entries(bc, target),
                   v_trusted=C.v_trusted if v_trusted is None else v_trusted)
    if check:
        report = validate(out)
        if not report.ok:
            raise SComplexError(
                f"base change produced an invalid complex: {report.failures}")
    return out


def standard_assignment(src, target, **overrides):
    """Assignment sending every variable to its namesake (or 1 when the
    target lacks it), with keyword overrides like U=..., T=...."""
    out = {}
    for name in src.variables():
        if name in overrides:
            val = overrides[name]
            out[name] = rings.parse(target, val) if isinstance(val, str) \
                else val
        elif name == "U" and target.udenom:
            out[name] = rings.var(target, "U")
        elif name in target.tvars:
            out[name] = rings.var(target, name)
        elif name == "x" and target.has_x:
            out[name] = rings.var(target, "x")
        else:
            out[name] = rings.one(target)
    return out


# ---------------------------------------------------------------------------
# the unreduced (mapping cone) model


class ChainComplex:
    """Plain finite chain complex: named Z/4-graded generators plus one
    square differential matrix."""

    __slots__ = ("ring", "gens", "D")

    def __init__(self, ring, gens, D):
        if D.rows != D.cols or D.rows != len(gens):
            raise SComplexError("differential shape mismatch")
        self.ring = ring
        self.gens = list(gens)  # (name, gr_mod4)
        self.D = D

    def d_squared_is_zero(self):
        return (self.D * self.D).is_zero()

    def homology_summary(self):
        """Invariant-factor homology over Euclidean rings, all gradings
        merged."""
        return linalg.homology(self.D, self.D)

    def graded_ranks(self):
        """Free rank of homology per Z/4 grading (Euclidean rings)."""
        out = {}
        for g in range(4):
            cols = [i for i, (_n, gr) in enumerate(self.gens) if gr % 4 == g]
            cols_up = [i for i, (_n, gr) in enumerate(self.gens)
                       if gr % 4 == (g + 1) % 4]
            d_out = self.D.columns_selected(cols)
            d_in = self.D.columns_selected(cols_up).rows_selected(cols)
            ker = len(cols) - linalg.rank(d_out)
            out[g] = ker - linalg.rank(d_in)
        return out

    def rank_over_fractions(self):
        """Total homology rank over the fraction field of the ring."""
        r = linalg.rank_fraction_field(self.D)
        return len(self.gens) - 2 * r


def sharp_complex(C, twisted=False):
    """Mapping-cone model of the unreduced theory.

    Untwisted: the cone of twice the chi map on the total complex.
    Twisted: the two-by-two block differential with off-diagonal entries
    (2T^2 + 2T^-2 - 4)*chi and 2*chi; requires a T variable.
    """
    names, dt = C.dtilde()
    chi = C.chi_matrix()
    ring = C.ring
    two_chi = chi * rings.from_int(ring, 2)
    if twisted:
        if not ring.tvars:
            raise SComplexError("twisted model needs a T variable")
        t = rings.var(ring, ring.tvars[0])
        w = (2 * t ** 2 + 2 * t ** -2 - rings.from_int(ring, 4))
        upper_right = chi * w
    else:
        upper_right = Matrix.zeros(ring, dt.rows, dt.cols)
    top = dt.hstack(upper_right)
    bottom = two_chi.hstack(dt)
    D = top.vstack(bottom)
    gens = ([(name, gr) for name, gr in names]
            + [(name + "#", (gr + 2) % 4) for name, gr in names])
    cplx = ChainComplex(ring, gens, D)
    if not cplx.d_squared_is_zero():
        raise SComplexError("cone differential does not square to zero")
    return cplx


# ---------------------------------------------------------------------------
# JSON wire format


def _frac_str(f):
    return None if f is None else str(f)


def _frac_parse(s, path):
    if s is None:
        return None
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{path}: bad rational {s!r}")


def to_dict(C):
    return {
        "ring": rings.ring_to_dict(C.ring),
        "generators": [{"name": g.name, "gr_mod4": g.gr_mod4,
                        "deg_I": _frac_str(g.deg_I), "hol": _frac_str(g.hol)}
                       for g in C.gens],
        "d": [[e.to_str() for e in row] for row in C.d.data],
        "v": [[e.to_str() for e in row] for row in C.v.data],
        "delta1": [e.to_str() for e in C.delta1.data[0]] if C.n else [],
        "delta2": [row[0].to_str() for row in C.delta2.data],
        "v_trusted": C.v_trusted,
    }


def _parse_entry(ring, s, path):
    if not isinstance(s, str):
        raise SchemaError(f"{path}: expected a polynomial string")
    try:
        return rings.parse(ring, s)
    except (rings.ParseError, RingError) as e:
        raise SchemaError(f"{path}: {e}")


def from_dict(doc):
    """Parse the JSON document form.  Schema errors carry the offending
    path; semantic validation is a separate stage (the validate verb)."""
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object")
    try:
        ring = rings.ring_from_dict(doc["ring"])
    except KeyError:
        raise SchemaError("ring: missing")
    except RingError as e:
        raise SchemaError(f"ring: {e}")
    raw_gens = doc.get("generators")
    if not isinstance(raw_gens, list):
        raise SchemaError("generators: expected a list")
    gens = []
    seen = set()
    for k, g in enumerate(raw_gens):
        path = f"generators[{k}]"
        if not isinstance(g, dict) or "name" not in g or "gr_mod4" not in g:
            raise SchemaError(f"{path}: need name and gr_mod4")
        if g["name"] in seen:
            raise SchemaError(f"{path}: duplicate name {g['name']!r}")
        seen.add(g["name"])
        if not isinstance(g["gr_mod4"], int):
            raise SchemaError(f"{path}.gr_mod4: expected an integer")
        gens.append(Generator(g["name"], g["gr_mod4"],
                              _frac_parse(g.get("deg_I"), path + ".deg_I"),
                              _frac_parse(g.get("hol"), path + ".hol")))
    n = len(gens)

    def matrix_of(key, rows, cols):
        raw = doc.get(key)
        if not isinstance(raw, list) or len(raw) != rows:
            raise SchemaError(f"{key}: expected {rows} rows")
        data = []
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != cols:
                raise SchemaError(f"{key}[{i}]: expected {cols} entries")
            data.append([_parse_entry(ring, e, f"{key}[{i}][{j}]")
                         for j, e in enumerate(row)])
        return Matrix(ring, data, cols=cols)

    d = matrix_of("d", n, n)
    v = matrix_of("v", n, n)
    raw_d1 = doc.get("delta1")
    if not isinstance(raw_d1, list) or len(raw_d1) != n:
        raise SchemaError(f"delta1: expected {n} entries")
    delta1 = Matrix(ring, [[_parse_entry(ring, e, f"delta1[{j}]")
                            for j, e in enumerate(raw_d1)]], cols=n) \
        if n else Matrix.zeros(ring, 1, 0)
    raw_d2 = doc.get("delta2")
    if not isinstance(raw_d2, list) or len(raw_d2) != n:
        raise SchemaError(f"delta2: expected {n} entries")
    delta2 = Matrix(ring, [[_parse_entry(ring, e, f"delta2[{i}]")]
                           for i, e in enumerate(raw_d2)], cols=1) \
        if n else Matrix.zeros(ring, 0, 1)
    v_trusted = doc.get("v_trusted", True)
    if not isinstance(v_trusted, bool):
        raise SchemaError("v_trusted: expected a boolean")
    try:
        return SComplex(ring, gens, d, v, delta1, delta2, v_trusted)
    except (SComplexError, RingMismatchError) as e:
        raise SchemaError(str(e))
