"""S-complex validation, tensors, duals, morphisms, base change, the
mapping-cone model and the JSON wire format."""

import json
import random
from fractions import Fraction

import pytest

from scx import knots, linalg as L, rings as R, scomplex as S

import helpers


def trefoil():
    return knots.fixture("trefoil")


def test_validate_trefoil_passes():
    assert S.validate(trefoil()).ok


def test_validate_flags_bad_grading():
    bad = S.SComplex(R.Z, [S.Generator("a", 0)],
                     L.Matrix(R.Z, [[R.one(R.Z)]]),
                     L.Matrix.zeros(R.Z, 1, 1), L.Matrix.zeros(R.Z, 1, 1),
                     L.Matrix.zeros(R.Z, 1, 1))
    rep = S.validate(bad)
    assert not rep.ok
    assert any("grading" in f for f in rep.failures)


def test_validate_k5_with_zero_v_passes():
    C = knots.two_bridge_complex(5, -1)
    assert C.d.is_zero() and C.delta2.is_zero() and not C.v_trusted
    assert S.validate(C).ok


def test_validate_reports_broken_relation():
    ring = R.Z
    one = R.one(ring)
    z = R.zero(ring)
    # d^2 != 0 on a three-step chain within consistent gradings
    gens = [S.Generator("a", 2), S.Generator("b", 1), S.Generator("c", 0)]
    d = L.Matrix(ring, [[z, z, z], [one, z, z], [z, one, z]])
    C = S.SComplex(ring, gens, d, L.Matrix.zeros(ring, 3, 3),
                   L.Matrix.zeros(ring, 1, 3), L.Matrix.zeros(ring, 3, 1))
    rep = S.validate(C)
    assert not rep.ok and any(f.startswith("d*d") for f in rep.failures)


def test_tensor_unit_and_rank_count():
    C = trefoil()
    triv = S.SComplex.trivial(C.ring)
    T = S.tensor(C, triv)
    assert T.n == C.n
    assert S.validate(T).ok
    T2 = S.tensor(C, C)
    assert T2.n == 2 * C.n * C.n + C.n + C.n
    assert S.validate(T2).ok


def test_tensor_ring_mismatch():
    with pytest.raises(R.RingMismatchError):
        S.tensor(trefoil(), S.SComplex.trivial(R.ZT))


def test_tensor_dual_validate_randomized():
    rng = random.Random(909)
    for ring in (R.ZT, R.F2T, R.QT):
        for _ in range(30):
            A = helpers.random_scomplex(rng, ring, max_gens=10)
            B = helpers.random_scomplex(rng, ring, max_gens=4,
                                        allow_dual=False)
            if 2 * A.n * B.n + A.n + B.n <= 24:
                assert S.validate(S.tensor(A, B)).ok
            assert S.validate(S.dual(A)).ok


def test_dual_of_trivial():
    triv = S.SComplex.trivial(R.Z)
    assert S.dual(triv).n == 0


def test_double_dual_is_isomorphic_via_minus_identity():
    rng = random.Random(111)
    for _ in range(25):
        C = helpers.random_scomplex(rng, R.ZT, max_gens=8)
        DD = S.dual(S.dual(C))
        assert [g.gr_mod4 for g in DD.gens] == [g.gr_mod4 for g in C.gens]
        assert DD.d == C.d and DD.v == C.v
        assert DD.delta1 == -C.delta1 and DD.delta2 == -C.delta2
        # lambda = -id, mu = 0 is an explicit S-isomorphism C -> dual(dual(C))
        n = C.n
        iso = S.SMorphism(C, DD, -L.Matrix.identity(C.ring, n),
                          L.Matrix.zeros(C.ring, n, n),
                          L.Matrix.zeros(C.ring, 1, n),
                          L.Matrix.zeros(C.ring, n, 1))
        assert S.check_morphism(iso).ok


def test_dual_negate_convention_flag():
    C = trefoil()
    D = S.dual(C, grading="negate")
    assert D.gens[0].gr_mod4 == (-1) % 4
    # pure negation breaks the delta grading constraint as soon as the
    # dual delta2 is nonzero
    assert not S.validate(D).ok


def test_identity_morphism_passes():
    assert S.check_morphism(S.SMorphism.identity(trefoil())).ok


def test_h_zero_witness_morphism():
    # a morphism out of the trivial complex exists iff d alpha = delta2'
    ring = R.QT
    one = R.one(ring)
    z = R.zero(ring)
    gens = [S.Generator("top", 3), S.Generator("bot", 2)]
    d = L.Matrix(ring, [[z, z], [one, z]])
    delta2 = L.Matrix(ring, [[z], [one]])
    C = S.SComplex(ring, gens, d, L.Matrix.zeros(ring, 2, 2),
                   L.Matrix.zeros(ring, 1, 2), delta2)
    assert S.validate(C).ok
    triv = S.SComplex.trivial(ring)
    # Delta2(1) = top satisfies d(top) = delta2'(1) = bot: a valid witness
    good = S.SMorphism(triv, C, L.Matrix.zeros(ring, 2, 0),
                       L.Matrix.zeros(ring, 2, 0),
                       L.Matrix.zeros(ring, 1, 0),
                       L.Matrix(ring, [[one], [z]]))
    assert S.check_morphism(good).ok
    # Delta2(1) = bot has d(bot) = 0 != delta2'(1): the relation fails
    bad = S.SMorphism(triv, C, L.Matrix.zeros(ring, 2, 0),
                      L.Matrix.zeros(ring, 2, 0),
                      L.Matrix.zeros(ring, 1, 0),
                      L.Matrix(ring, [[z], [one]]))
    assert not S.check_morphism(bad).ok


def test_random_matrices_fail_morphism():
    rng = random.Random(222)
    C = helpers.random_scomplex(rng, R.ZT, max_gens=6)
    n = C.n
    if n:
        lam = L.Matrix(R.ZT, [[helpers.random_poly(rng, R.ZT,
                                                   allow_zero=True)
                               for _ in range(n)] for _ in range(n)])
        m = S.SMorphism(C, C, lam, L.Matrix.zeros(R.ZT, n, n),
                        L.Matrix.zeros(R.ZT, 1, n),
                        L.Matrix.zeros(R.ZT, n, 1))
        rep = S.check_morphism(m)
        assert isinstance(rep.failures, list)


def test_euler_characteristics():
    assert S.euler_characteristic(trefoil()) == -1
    assert S.euler_characteristic(knots.two_bridge_complex(5, -1)) == -2
    assert S.euler_characteristic(S.SComplex.trivial(R.Z)) == 0
    # cross-validated against the signature oracle
    assert 2 * S.euler_characteristic(trefoil()) == \
        knots.two_bridge_signature_oracle(3, -1)
    assert 2 * S.euler_characteristic(knots.two_bridge_complex(5, -1)) == \
        knots.two_bridge_signature_oracle(5, -1)


def test_euler_additive_under_tensor_randomized():
    # the shifted copy cancels the irreducible one, so every total
    # complex has Euler characteristic 1, and on the irreducible parts
    # tensoring adds (half the signature is additive under connect sum)
    rng = random.Random(333)

    def chi_total(C):
        names, _dt = C.dtilde()
        return sum(1 if gr % 2 == 0 else -1 for _n, gr in names)

    for _ in range(25):
        A = helpers.random_scomplex(rng, R.F2T, max_gens=6)
        B = helpers.random_scomplex(rng, R.F2T, max_gens=4,
                                    allow_dual=False)
        assert chi_total(A) == 1
        if 2 * A.n * B.n + A.n + B.n > 30:
            continue
        T = S.tensor(A, B)
        assert chi_total(T) == chi_total(A) * chi_total(B) == 1
        assert S.euler_characteristic(T) == \
            S.euler_characteristic(A) + S.euler_characteristic(B)


def test_base_change_examples():
    C = trefoil()
    to_z = S.base_change_complex(
        C, S.standard_assignment(C.ring, R.Z, U="1", T="1"), R.Z)
    assert to_z.d.is_zero() and to_z.delta1.is_zero() \
        and to_z.delta2.is_zero()
    to_f4 = S.base_change_complex(
        C, {"U": R.one(R.F4), "T": R.var(R.F4, "x")}, R.F4)
    assert to_f4.delta1[0, 0].is_one()
    to_zt = S.base_change_complex(
        C, S.standard_assignment(C.ring, R.ZT, U="1"), R.ZT)
    t = R.var(R.ZT, "T")
    assert to_zt.delta1[0, 0] == t ** 2 - t ** -2


def test_sharp_untwisted_trefoil_over_q():
    C = trefoil()
    to_q = S.base_change_complex(
        C, S.standard_assignment(C.ring, R.Q, U="1", T="1"), R.Q)
    cone = S.sharp_complex(to_q)
    assert len(cone.gens) == 6
    H = cone.homology_summary()
    assert H.free_rank == 4


def test_sharp_cone_matches_hand_built_matrix():
    # independent oracle: write the 6x6 integer cone differential by hand
    # (the only map is 2*chi from the first copy to the shifted copy) and
    # reduce it with the transform-free integer Smith oracle
    rows = [[0] * 6 for _ in range(6)]
    rows[4][0] = 2  # 2*chi: generator -> shifted generator of copy two
    diag = helpers.naive_integer_diagonal(rows)
    assert diag == [2]
    # homology rank = 6 - 2*rank, torsion [2]
    C = trefoil()
    to_z = S.base_change_complex(
        C, S.standard_assignment(C.ring, R.Z, U="1", T="1"), R.Z)
    H = S.sharp_complex(to_z).homology_summary()
    assert H.free_rank == 6 - 2 * len(diag)
    assert [str(t) for t in H.torsion] == ["2"]


def test_sharp_twisted_trefoil_rank_two():
    C = trefoil()
    to_qt = S.base_change_complex(
        C, S.standard_assignment(C.ring, R.QT, U="1"), R.QT)
    cone = S.sharp_complex(to_qt, twisted=True)
    assert cone.rank_over_fractions() == 2


def test_sharp_trivial_rank_two():
    triv = S.SComplex.trivial(R.Q)
    assert S.sharp_complex(triv).homology_summary().free_rank == 2


def test_sharp_untwisted_splits_over_f2():
    rng = random.Random(444)
    for _ in range(15):
        C = helpers.random_scomplex(rng, R.F2T, max_gens=6)
        _names, dt = C.dtilde()
        reduced = L.homology(dt, dt).free_rank
        cone = S.sharp_complex(C)
        assert cone.homology_summary().free_rank == 2 * reduced


def test_sharp_twisted_needs_t():
    with pytest.raises(S.SComplexError):
        S.sharp_complex(S.SComplex.trivial(R.Z), twisted=True)


def test_serialize_round_trip_and_determinism():
    C = trefoil()
    doc = S.to_dict(C)
    text = json.dumps(doc, indent=2)
    C2 = S.from_dict(json.loads(text))
    assert S.to_dict(C2) == doc
    assert json.dumps(S.to_dict(C2), indent=2) == text
    assert C2.gens == C.gens and C2.d == C.d and C2.delta1 == C.delta1
    assert C2.v_trusted == C.v_trusted


def test_serialize_round_trip_randomized():
    rng = random.Random(555)
    for ring in (R.ZT, R.F2T, R.universal(4)):
        for _ in range(15):
            C = helpers.random_scomplex(rng, ring, max_gens=8)
            C2 = S.from_dict(json.loads(json.dumps(S.to_dict(C))))
            assert C2.d == C.d and C2.v == C.v
            assert C2.delta1 == C.delta1 and C2.delta2 == C.delta2
            assert C2.gens == C.gens


def test_schema_duplicate_names_rejected():
    doc = S.to_dict(trefoil())
    doc["generators"].append(dict(doc["generators"][0]))
    doc["d"] = [["0", "0"], ["0", "0"]]
    doc["v"] = [["0", "0"], ["0", "0"]]
    doc["delta1"] = ["0", "0"]
    doc["delta2"] = ["0", "0"]
    with pytest.raises(S.SchemaError) as err:
        S.from_dict(doc)
    assert "duplicate" in str(err.value)


def test_schema_error_paths():
    doc = S.to_dict(trefoil())
    doc["delta1"] = ["T^"]
    with pytest.raises(S.SchemaError) as err:
        S.from_dict(doc)
    assert "delta1[0]" in str(err.value)


def test_broken_complex_loads_but_fails_validation():
    # parsing and semantic validation are separate stages
    doc = S.to_dict(trefoil())
    doc["d"] = [["1"]]
    C = S.from_dict(doc)
    assert not S.validate(C).ok
