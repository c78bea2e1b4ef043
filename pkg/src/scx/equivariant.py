"""Equivariant models and the invariants extracted from them.

From an S-complex (C, d, v, delta1, delta2) over R one forms the large
equivariant complex (the total complex tensored with R[x], differential
-d~ + x*chi) and two small models:

    hat:    C[1] + R[x],      d(a, f) = (d a - sum_i v^i delta2(f_i), 0)
    check:  C + x^-1 R[[x^-1]], d(a, g) = (d a, sum_i delta1 v^(-i-1)(a) x^i)

with x acting by (a, f) |-> (v a, delta1(a) + x f) on the hat side.  The
image of the hat homology inside R[[x^-1, x]] is a finitely supported
R[x]-submodule when v is nilpotent; its top degree is minus the Froyshov
invariant h, and its degree-(-i) leading coefficients form the nested
ideal sequence J_i.  The Gamma function refines h by the minimal
Chern-Simons level of a witnessing cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, rings, scomplex
from .linalg import Matrix
from .scomplex import ValidationReport


class EquivariantError(Exception):
    pass


class UntrustedVError(EquivariantError):
    """The requested invariant depends on a v map that is only assumed."""


class UnsupportedRingError(EquivariantError):
    pass


class _Infinity:
    def __repr__(self):
        return "infinity"

    def __str__(self):
        return "infinity"


INFINITY = _Infinity()


def _require_trusted(C, what):
    if not C.v_trusted:
        raise UntrustedVError(
            f"{what} needs the v map, but this complex only assumes v; "
            "the generator could not certify it")


def _vpow(C, k):
    M = Matrix.identity(C.ring, C.n)
    for _ in range(k):
        M = C.v * M
    return M


def nilpotency_index(C):
    """Least m <= n with v^m = 0, or None when v is not nilpotent."""
    M = Matrix.identity(C.ring, C.n)
    for m in range(C.n + 1):
        if M.is_zero():
            return m
        M = C.v * M
    return None


# ---------------------------------------------------------------------------
# small models


@dataclass(frozen=True)
class LaurentTail:
    """Finitely many x-terms of negative degree, truncated below ``floor``.

    Represents an element of x^-1 R[[x^-1]] to the stated precision.
    """

    ring: object
    floor: int
    coeffs: tuple  # ((degree, LaurentPoly), ...) with floor <= degree <= -1

    @classmethod
    def of(cls, ring, floor, items):
        kept = tuple(sorted((d, c) for d, c in items
                            if c and floor <= d <= -1))
        return cls(ring, floor, kept)

    def coefficient(self, deg):
        for d, c in self.coeffs:
            if d == deg:
                return c
        return rings.zero(self.ring)

    def shifted_up(self):
        """Multiplication by x, re-truncated to the same floor."""
        return LaurentTail.of(self.ring, self.floor,
                              [(d + 1, c) for d, c in self.coeffs])

    def __add__(self, other):
        floor = max(self.floor, other.floor)
        degs = {d for d, _ in self.coeffs} | {d for d, _ in other.coeffs}
        return LaurentTail.of(self.ring, floor,
                              [(d, self.coefficient(d) + other.coefficient(d))
                               for d in degs])


class SmallHatModel:
    """The finitely presented model C[1] + R[x] with its x-action."""

    def __init__(self, C):
        self.C = C
        self.ring_x = rings.poly_x(C.ring)

    def zero(self):
        return (Matrix.zeros(self.C.ring, self.C.n, 1),
                rings.zero(self.ring_x))

    def differential(self, alpha, f):
        C = self.C
        out = C.d * alpha
        deg = f.x_degree()
        if deg is not None:
            vp = Matrix.identity(C.ring, C.n)
            for i in range(deg + 1):
                ai = f.x_coefficient(i, C.ring)
                if ai:
                    out = out - (vp * C.delta2) * ai
                vp = C.v * vp
        return out, rings.zero(self.ring_x)

    def x_action(self, alpha, f):
        C = self.C
        d1a = (C.delta1 * alpha)[0, 0]
        lifted = rings.base_change(
            d1a, scomplex.standard_assignment(C.ring, self.ring_x),
            self.ring_x)
        return C.v * alpha, lifted + rings.var(self.ring_x, "x") * f

    def differential_is_zero(self):
        # d(a, f) = (d a - sum v^i delta2 f_i, 0) vanishes identically
        # exactly when d = 0 and delta2 = 0.
        return self.C.d.is_zero() and self.C.delta2.is_zero()


class SmallCheckModel:
    """The co-model C + x^-1 R[[x^-1]], truncated at an explicit floor."""

    def __init__(self, C, floor):
        if floor > -1:
            raise EquivariantError("truncation floor must be <= -1")
        self.C = C
        self.floor = floor

    def tail_of(self, alpha):
        C = self.C
        items = []
        vp = Matrix.identity(C.ring, C.n)
        for j in range(-self.floor):
            items.append((-j - 1, (C.delta1 * (vp * alpha))[0, 0]))
            vp = C.v * vp
        return LaurentTail.of(C.ring, self.floor, items)

    def differential(self, alpha, tail):
        return self.C.d * alpha, self.tail_of(alpha)

    def x_action(self, alpha, tail):
        C = self.C
        a_minus_1 = tail.coefficient(-1)
        return (C.v * alpha + C.delta2 * a_minus_1,
                LaurentTail.of(C.ring, tail.floor,
                               [(d + 1, c) for d, c in tail.coeffs
                                if d + 1 <= -1]))


def small_models(C, floor=None):
    """Both small equivariant models of C; the check side is truncated at
    ``floor`` (default: just deep enough for a nilpotent v)."""
    if floor is None:
        m = nilpotency_index(C)
        floor = -(m if m is not None else C.n) - 1
    return SmallHatModel(C), SmallCheckModel(C, floor)


# ---------------------------------------------------------------------------
# truncated matrices of the small triangle (used by exactness tests)


def small_triangle_matrices(C, depth):
    """Matrices of the small-model differentials and the triangle maps
    i, j, p on truncated bases.

    hat basis: n shifted generators then x^0..x^depth;
    check basis: n generators then x^-1..x^-depth;
    bar basis: x^-depth..x^depth.
    """
    ring = C.ring
    n = C.n
    z = rings.zero(ring)

    hat_dim = n + depth + 1
    chk_dim = n + depth
    bar_dim = 2 * depth + 1

    def bar_index(deg):
        return deg + depth

    vp_list = [_vpow(C, j) for j in range(depth + 1)]

    d_hat = [[z] * hat_dim for _ in range(hat_dim)]
    for g in range(n):
        for h in range(n):
            d_hat[h][g] = C.d[h, g]
    for i in range(depth + 1):
        col = n + i
        vd2 = vp_list[i] * C.delta2
        for h in range(n):
            d_hat[h][col] = -vd2[h, 0]

    d_chk = [[z] * chk_dim for _ in range(chk_dim)]
    for g in range(n):
        for h in range(n):
            d_chk[h][g] = C.d[h, g]
        for j in range(depth):
            row = n + j  # degree -j-1
            d_chk[row][g] = (C.delta1 * vp_list[j])[0, g]

    i_map = [[z] * hat_dim for _ in range(bar_dim)]
    for g in range(n):
        for j in range(depth):
            i_map[bar_index(-j - 1)][g] = (C.delta1 * vp_list[j])[0, g]
    for i in range(depth + 1):
        i_map[bar_index(i)][n + i] = rings.one(ring)

    j_map = [[z] * chk_dim for _ in range(hat_dim)]
    for g in range(n):
        j_map[g][g] = -rings.one(ring)

    p_map = [[z] * bar_dim for _ in range(chk_dim)]
    for i in range(depth + 1):
        col = bar_index(i)
        vd2 = vp_list[min(i, depth)] * C.delta2
        for h in range(n):
            p_map[h][col] = vd2[h, 0]
    for j in range(depth):
        p_map[n + j][bar_index(-j - 1)] = rings.one(ring)

    return {
        "d_hat": Matrix(ring, d_hat, cols=hat_dim),
        "d_check": Matrix(ring, d_chk, cols=chk_dim),
        "i": Matrix(ring, i_map, cols=hat_dim),
        "j": Matrix(ring, j_map, cols=chk_dim),
        "p": Matrix(ring, p_map, cols=bar_dim),
    }


# ---------------------------------------------------------------------------
# large/small model equivalence


def _el_add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _el_neg(a):
    return {k: -c for k, c in a.items()}


def _group_by_degree(C, el):
    ring = C.ring
    n = C.n
    out = {}
    for (slot, idx, deg), c in el.items():
        tri = out.setdefault(deg, [
            [rings.zero(ring) for _ in range(n)],
            [rings.zero(ring) for _ in range(n)],
            rings.zero(ring)])
        if slot == 2:
            tri[2] = tri[2] + c
        else:
            tri[slot][idx] = tri[slot][idx] + c
    return out


def _from_components(C, deg, alpha, beta, scal, sign=1):
    out = {}
    for i, c in enumerate(alpha):
        if c:
            out[(0, i, deg)] = c if sign > 0 else -c
    for i, c in enumerate(beta):
        if c:
            out[(1, i, deg)] = c if sign > 0 else -c
    if scal:
        out[(2, 0, deg)] = scal if sign > 0 else -scal
    return out


def _mat_vec(M, vec):
    out = []
    for i in range(M.rows):
        acc = None
        for j, c in enumerate(vec):
            if c:
                e = M[i, j]
                if e:
                    term = e * c
                    acc = term if acc is None else acc + term
        out.append(acc if acc is not None else rings.zero(M.ring))
    return out


def _dhat_large(C, el):
    """-d~ + x*chi on the large hat complex."""
    out = {}
    for deg, (alpha, beta, scal) in _group_by_degree(C, el).items():
        d_alpha = _mat_vec(C.d, alpha)
        mid = [a + b + c for a, b, c in zip(
            _mat_vec(C.v, alpha),
            [-t for t in _mat_vec(C.d, beta)],
            [(C.delta2[i, 0] * scal) for i in range(C.n)])]
        d1a = rings.zero(C.ring)
        for j, c in enumerate(alpha):
            if c and C.delta1[0, j]:
                d1a = d1a + C.delta1[0, j] * c
        out = _el_add(out, _from_components(C, deg, d_alpha, mid, d1a,
                                            sign=-1))
        out = _el_add(out, _from_components(
            C, deg + 1, [rings.zero(C.ring)] * C.n, alpha,
            rings.zero(C.ring)))
    return out


def _phi_hat(C, el):
    ring = C.ring
    beta_out = [rings.zero(ring)] * C.n
    f_terms = {}
    for deg, (alpha, beta, scal) in _group_by_degree(C, el).items():
        vb = _mat_vec(_vpow(C, deg), beta) if deg >= 0 else None
        if deg >= 0:
            beta_out = [a + b for a, b in zip(beta_out, vb)]
            if scal:
                f_terms[deg] = f_terms.get(deg, rings.zero(ring)) + scal
            for j in range(deg):
                c = (C.delta1 * (_vpow(C, j) * Matrix(
                    ring, [[b] for b in beta], cols=1)))[0, 0]
                if c:
                    k = deg - j - 1
                    f_terms[k] = f_terms.get(k, rings.zero(ring)) + c
    return beta_out, {k: c for k, c in f_terms.items() if c}


def _psi_hat(C, beta, f_terms):
    ring = C.ring
    out = {}
    for i, c in enumerate(beta):
        if c:
            out[(1, i, 0)] = c
    for i, a in f_terms.items():
        if not a:
            continue
        out = _el_add(out, {(2, 0, i): a})
        for j in range(i):
            col = _vpow(C, j) * C.delta2
            piece = {}
            for r in range(C.n):
                if col[r, 0]:
                    piece[(0, r, i - j - 1)] = col[r, 0] * a
            out = _el_add(out, piece)
    return out


def _k_hat(C, el):
    out = {}
    for deg, (_alpha, beta, _scal) in _group_by_degree(C, el).items():
        for j in range(deg):
            vb = _mat_vec(_vpow(C, j), beta)
            piece = {}
            for r, c in enumerate(vb):
                if c:
                    piece[(0, r, deg - j - 1)] = -c
            out = _el_add(out, piece)
    return out


def _dhat_small(C, beta, f_terms):
    alpha = Matrix(C.ring, [[b] for b in beta], cols=1)
    out = C.d * alpha
    for i, a in f_terms.items():
        if a:
            out = out - (_vpow(C, i) * C.delta2) * a
    return [out[i, 0] for i in range(C.n)], {}


def _x_small(C, beta, f_terms):
    alpha = Matrix(C.ring, [[b] for b in beta], cols=1)
    vbeta = C.v * alpha
    d1 = (C.delta1 * alpha)[0, 0]
    new_f = {i + 1: c for i, c in f_terms.items()}
    if d1:
        new_f[0] = new_f.get(0, rings.zero(C.ring)) + d1
    return [vbeta[i, 0] for i in range(C.n)], \
        {k: c for k, c in new_f.items() if c}


def _small_eq(a, b):
    return a[0] == b[0] and a[1] == b[1]


def verify_model_equivalence(C, depth):
    """Check, on x-degrees up to ``depth``, that the displayed maps Phi
    and Psi between the large and small hat models are chain maps with
    Phi Psi = id and Psi Phi homotopic to the identity via K.

    Every failed identity becomes one report item.
    """
    if depth < 1:
        raise EquivariantError("truncation must be at least 1")
    report = ValidationReport(True)
    ring = C.ring
    one = rings.one(ring)

    basis = []
    for deg in range(depth):
        for slot in (0, 1):
            for idx in range(C.n):
                basis.append({(slot, idx, deg): one})
        basis.append({(2, 0, deg): one})

    for el in basis:
        lhs = _phi_hat(C, _dhat_large(C, el))
        rhs = _dhat_small(C, *_phi_hat(C, el))
        if not _small_eq(lhs, rhs):
            report.add(f"Phi fails the chain property on {sorted(el)}")
        x_el = {(s, i, k + 1): c for (s, i, k), c in el.items()}
        if not _small_eq(_phi_hat(C, x_el), _x_small(C, *_phi_hat(C, el))):
            report.add(f"Phi fails x-equivariance on {sorted(el)}")
        delta = _el_add(_psi_hat(C, *_phi_hat(C, el)), _el_neg(el))
        homot = _el_add(_dhat_large(C, _k_hat(C, el)),
                        _k_hat(C, _dhat_large(C, el)))
        if delta != homot:
            report.add(f"Psi Phi - id != dK + Kd on {sorted(el)}")

    zero_beta = [rings.zero(ring)] * C.n
    small_basis = [([one if i == j else rings.zero(ring)
                     for j in range(C.n)], {}) for i in range(C.n)]
    small_basis += [(zero_beta, {k: one}) for k in range(depth + 1)]
    for beta, f in small_basis:
        el = _psi_hat(C, beta, f)
        lhs = _dhat_large(C, el)
        rhs = _psi_hat(C, *_dhat_small(C, beta, f))
        if lhs != rhs:
            report.add("Psi fails the chain property on a small basis "
                       f"element {f or 'generator'}")
        if not _small_eq(_phi_hat(C, el), (beta, f)):
            report.add(f"Phi Psi != id on a small basis element {f}")
    return report


# ---------------------------------------------------------------------------
# the Froyshov invariant


def _kernel_fn(ring):
    if rings.is_euclidean(ring):
        return linalg.kernel_basis
    return linalg.kernel_fraction_field


def _search_bound(C):
    m = nilpotency_index(C)
    if m is not None:
        return m
    if C.ring.is_field or not rings.is_euclidean(C.ring):
        # over a field (or after passing to the fraction field) the spans
        # of delta1 v^i stabilize within n steps, which bounds |h|
        return C.n + 1
    raise UnsupportedRingError(
        f"v is not nilpotent and {C.ring} is not a field")


def h_invariant(C, method="search"):
    """The Froyshov invariant of a complex with a trusted v map.

    ``method="search"`` runs the two searches of the reinterpretation
    (largest k with a cycle seen by delta1 v^(k-1), else the largest
    non-positive k admitting d(alpha) = sum v^i delta2(a_i) with the top
    coefficient nonzero).  ``method="ideals"`` instead reads off the top
    nonzero index of the ideal sequence; the two routes must agree.

    Over Z solvability is taken over Z itself; over the non-Euclidean
    Laurent rings the searches run over the fraction field, which yields
    the same integer.
    """
    _require_trusted(C, "the h invariant")
    if method == "ideals":
        return _h_via_ideals(C)
    if method != "search":
        raise ValueError("method must be 'search' or 'ideals'")
    ker = _kernel_fn(C.ring)
    bound = _search_bound(C)

    K = ker(C.d)
    if K.cols:
        cur = K
        h = 0
        for k in range(1, bound + 1):
            if cur.cols == 0:
                break
            w = (C.delta1 * _vpow(C, k - 1)) * cur
            if w.is_zero():
                # once delta1 v^(k-1) dies on the nested kernel it stays
                # dead: v^(m-k) maps later witnesses back to level k
                break
            h = k
            cur = cur * ker(w)
        if h > 0:
            return h

    for k in range(0, -(bound + 2), -1):
        M = C.d
        vp = Matrix.identity(C.ring, C.n)
        for _i in range(0, -k + 1):
            M = M.hstack(-(vp * C.delta2))
            vp = C.v * vp
        Kk = ker(M)
        last = M.cols - 1
        if any(Kk[last, j] for j in range(Kk.cols)):
            return k
    raise AssertionError("h search failed to terminate within its bound")


def _h_via_ideals(C):
    bound = _search_bound(C)
    ideals = j_ideals(C, -(bound + 1), bound)
    for i in sorted(ideals, reverse=True):
        if ideals[i]:
            return i
    raise AssertionError("ideal sequence is empty below the bound")


# ---------------------------------------------------------------------------
# ideal sequences


def _reduce_generators(ring, gens):
    """Collapse a generator list: gcd over the Euclidean rings, otherwise
    normalized associates with divisors removed."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    if rings.is_euclidean(ring):
        g = gens[0]
        for other in gens[1:]:
            g = rings.gcd(g, other)
        g = rings.normalize_associate(g)
        return [rings.one(ring)] if g.is_unit() else [g]
    normed = []
    for g in gens:
        g = rings.normalize_associate(g)
        if g not in normed:
            normed.append(g)
    out = [g for g in normed
           if not any(h != g and rings.divide(g, h) is not None
                      for h in normed)]
    return [rings.one(ring)] if any(g.is_unit() for g in out) else out


def j_ideals(C, i_min=None, i_max=None):
    """The nested ideal sequence J_i as generator lists.

    Over Z and the field Laurent rings every J_i is computed from kernel
    bases and collapsed to a single gcd generator.  Over Z[T-Laurent] the
    module theory is out of reach in general; the computation is honest
    only when d = 0 and v = 0 (which covers the generated two-bridge
    complexes with trusted v) and is refused otherwise.

    Returned dict maps i to [] (the zero ideal), [1] (the whole ring) or
    a list of normalized generators.
    """
    _require_trusted(C, "the ideal sequence")
    ring = C.ring
    if ring.tag == "ZT":
        return _j_ideals_zt(C, i_min, i_max)
    if not rings.is_euclidean(ring):
        raise UnsupportedRingError(
            f"ideal sequences over {ring} are not computable here")
    m = nilpotency_index(C)
    if m is None:
        raise UnsupportedRingError(
            "the ideal sequence needs a nilpotent v map")
    if i_min is None:
        i_min = -(m + 1)
    if i_max is None:
        i_max = m
    out = {}
    for i in range(i_min, i_max + 1):
        if i >= 1:
            M = C.d
            for j in range(i - 1):
                M = M.vstack(C.delta1 * _vpow(C, j))
            K = linalg.kernel_basis(M)
            row = (C.delta1 * _vpow(C, i - 1)) * K
            gens = [row[0, j] for j in range(row.cols)]
        else:
            M = C.d
            vp = Matrix.identity(ring, C.n)
            for _j in range(0, -i + 1):
                M = M.hstack(-(vp * C.delta2))
                vp = C.v * vp
            K = linalg.kernel_basis(M)
            last = M.cols - 1
            gens = [K[last, j] for j in range(K.cols)]
        out[i] = _reduce_generators(ring, gens)
    return out


def _j_ideals_zt(C, i_min, i_max):
    if not (C.d.is_zero() and C.v.is_zero()):
        raise UnsupportedRingError(
            "over Z[T-Laurent] the ideal sequence is computed only for "
            "complexes with d = 0 and v = 0")
    ring = C.ring
    if i_min is None:
        i_min = -2
    if i_max is None:
        i_max = 2
    out = {}
    for i in range(i_min, i_max + 1):
        if i >= 2:
            out[i] = []
        elif i == 1:
            out[i] = _reduce_generators(
                ring, [C.delta1[0, j] for j in range(C.n)])
        elif i == 0:
            out[i] = [rings.one(ring)] if C.delta2.is_zero() else []
        else:
            out[i] = [rings.one(ring)]
    return out


# ---------------------------------------------------------------------------
# the Gamma function


def _u_expanded_rows(ring, entries, shifts, ncols, zt):
    """Split sum_g s_g U^(shift_g) entry_g = 0 into U-homogeneous
    equations over Z[T-Laurent]; returns rows indexed by U-exponent."""
    buckets = {}
    for col, (e, s) in enumerate(zip(entries, shifts)):
        if not e:
            continue
        for (x, u, ts), c in e.sorted_terms():
            uu = u + s
            row = buckets.setdefault(
                uu, [rings.zero(zt) for _ in range(ncols)])
            row[col] = row[col] + rings.monomial(zt, c, t=(ts[0],))
    return buckets


def gamma(C, k):
    """Chern-Simons level of the cheapest witness for h >= k.

    Defined for I-graded level-0 complexes over the universal ring with a
    trusted nilpotent v.  Each stored pair (gr_mod4, deg_I) is read as
    the aligned representative of a generator's bigrading orbit; the
    integer grading of any U-translate is gr_mod4 + 4a at level
    deg_I + a.  Returns a Fraction (0 included) or INFINITY; finite
    exactly for k <= h.
    """
    ring = C.ring
    if ring.tag != "UNIV":
        raise UnsupportedRingError("Gamma needs the universal ring")
    if not C.is_I_graded():
        raise EquivariantError("Gamma needs the instanton grading")
    _require_trusted(C, "Gamma")
    m = nilpotency_index(C)
    if m is None:
        raise UnsupportedRingError("Gamma needs a nilpotent v map")
    zt = rings.ZT

    target_gr = (2 * k - 1) % 4
    basis = []
    for i, g in enumerate(C.gens):
        if g.gr_mod4 % 4 == target_gr:
            shift = Fraction(2 * k - 1 - g.gr_mod4, 4)
            if shift.denominator == 1:
                basis.append((i, Fraction(shift), g.deg_I + shift))
    basis.sort(key=lambda t: t[2])

    if k >= 1:
        target = C.delta1 * _vpow(C, k - 1)
        degrees = sorted({deg for _i, _s, deg in basis})
        for t in degrees:
            cols = [(i, s) for i, s, deg in basis if deg <= t]
            if not cols:
                continue
            idxs = [i for i, _s in cols]
            shifts = [s for _i, s in cols]
            rows = []
            maps = [C.d] + [C.delta1 * _vpow(C, j) for j in range(k - 1)]
            for M in maps:
                sub = M.columns_selected(idxs)
                for r in range(M.rows):
                    entries = [sub[r, j] for j in range(sub.cols)]
                    rows.extend(_u_expanded_rows(
                        ring, entries, shifts, len(cols), zt).values())
            A = Matrix(zt, rows, cols=len(cols)) if rows \
                else Matrix.zeros(zt, 0, len(cols))
            K = linalg.kernel_fraction_field(A)
            if K.cols == 0:
                continue
            sub_t = target.columns_selected(idxs)
            trows = []
            entries = [sub_t[0, j] for j in range(sub_t.cols)]
            trows.extend(_u_expanded_rows(
                ring, entries, shifts, len(cols), zt).values())
            T = Matrix(zt, trows, cols=len(cols)) if trows \
                else Matrix.zeros(zt, 0, len(cols))
            if not (T * K).is_zero():
                return t
        return INFINITY

    # k <= 0: unknowns are the cycle candidate plus the a_i with i = k mod 2
    a_indices = [i for i in range(0, -k + 1) if (i - k) % 2 == 0]
    vd2 = {i: _vpow(C, i) * C.delta2 for i in a_indices}

    degrees = [None] + sorted({deg for _i, _s, deg in basis})
    for t in degrees:
        cols = [(i, s) for i, s, deg in basis if t is not None and deg <= t]
        idxs = [i for i, _s in cols]
        shifts = [s for _i, s in cols]
        ncols = len(cols) + len(a_indices)
        rows = {}
        sub = C.d.columns_selected(idxs) if cols else None
        for r in range(C.n):
            entries = [sub[r, j] for j in range(sub.cols)] if cols else []
            entries += [-vd2[i][r, 0] for i in a_indices]
            row_shifts = shifts + [Fraction(k + i, 2) for i in a_indices]
            got = _u_expanded_rows(ring, entries, row_shifts, ncols, zt)
            for uu, row in got.items():
                key = (r, uu)
                rows[key] = row
        A = Matrix(zt, list(rows.values()), cols=ncols) if rows \
            else Matrix.zeros(zt, 0, ncols)
        K = linalg.kernel_fraction_field(A)
        last = ncols - 1  # the a_(-k) column is forced last in a_indices
        if any(K[last, j] for j in range(K.cols)):
            return Fraction(0) if t is None else max(t, Fraction(0))
    return INFINITY


# ---------------------------------------------------------------------------
# module presentations


@dataclass
class ModulePresentation:
    """Cokernel presentation: generators and a relation matrix whose
    columns are relations."""

    ring: object
    generators: list
    relations: Matrix

    def to_dict(self):
        return {
            "ring": rings.ring_to_dict(self.ring),
            "generators": list(self.generators),
            "relations": [[e.to_str() for e in row]
                          for row in self.relations.data],
        }


def hat_presentation(C):
    """Presentation of the small hat homology as a module over ring[x].

    Only valid when the small differential vanishes (d = 0 and delta2 =
    0), so that homology equals the chain module; each generator g yields
    the relation x*g - (v g) - delta1(g)*e0.
    """
    _require_trusted(C, "the hat presentation")
    hat = SmallHatModel(C)
    if not hat.differential_is_zero():
        raise EquivariantError(
            "small-model differential is nonzero; the chain module is not "
            "the homology, presentation refused")
    rx = hat.ring_x
    lift_assign = scomplex.standard_assignment(C.ring, rx)

    def lift(p):
        return rings.base_change(p, lift_assign, rx)

    names = [g.name for g in C.gens] + ["e0"]
    x = rings.var(rx, "x")
    cols = []
    for g in range(C.n):
        col = [rings.zero(rx) for _ in range(C.n + 1)]
        col[g] = col[g] + x
        for h in range(C.n):
            if C.v[h, g]:
                col[h] = col[h] - lift(C.v[h, g])
        if C.delta1[0, g]:
            col[C.n] = col[C.n] - lift(C.delta1[0, g])
        cols.append(col)
    rel = Matrix(rx, [[cols[j][i] for j in range(C.n)]
                      for i in range(C.n + 1)], cols=C.n)
    return ModulePresentation(rx, names, rel)


def bn_p_element(target):
    """The distinguished 4-term image of x under the theta base change."""
    t1 = rings.var(target, "T1")
    t2 = rings.var(target, "T2")
    t3 = rings.var(target, "T3")
    return (t1 * t2 * t3 + t1 ** -1 * t2 ** -1 * t3
            + t1 ** -1 * t2 * t3 ** -1 + t1 * t2 ** -1 * t3 ** -1)


def bn_presentation(pres, target="bn"):
    """Base-change a hat presentation along T -> T1 (or T0) and x -> P.

    ``target="bn"`` lands in the three-variable ring and presents the
    reduced theta-web module; ``target="sharp"`` lands in the
    four-variable ring and presents one summand of the unreduced one.
    """
    if target == "bn":
        tring = rings.S_BN
        t_image = rings.var(tring, "T1")
    elif target == "sharp":
        tring = rings.R_SHARP
        t_image = rings.var(tring, "T0")
    else:
        raise ValueError("target must be 'bn' or 'sharp'")
    src = pres.ring
    if src.base != "F2" or not src.has_x or src.tvars != ("T",):
        raise UnsupportedRingError(
            "the theta base change starts from F2[T-Laurent][x]")
    assignment = {"T": t_image, "x": bn_p_element(tring)}

    def bc(p):
        return rings.base_change(p, assignment, tring)

    return ModulePresentation(tring, list(pres.generators),
                              pres.relations.map_entries(bc, tring))
