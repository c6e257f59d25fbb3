import itertools
import random

import pytest

from bosokit.hopf import (
    ActionSpec,
    BraidedVectorSpace,
    GROUPLIKE,
    HopfError,
    HopfPresented,
    PresentedHopfAction,
    braid_equation_check,
    cartan_check,
    check_hopf_axioms,
    cyclic_group_algebra,
    dual_abelian_group_algebra,
    group_algebra,
    is_module_algebra,
    jordan_plane,
    presentation_from_structure_constants,
    qls,
    quantum_line,
    smash_product,
    sweedler_algebra,
    validate_yd_pair,
    validate_yd_triple,
)
from bosokit.ncalg import FreeAlgebra, Generator, NcPoly, Presentation, groebner_truncated
from bosokit.scalars import FieldSpec


def s3_group_algebra(field):
    perms = list(itertools.permutations(range(3)))
    pidx = {p: i for i, p in enumerate(perms)}
    table = [[pidx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return group_algebra(field, table, names=[str(p) for p in perms]), perms, pidx


def test_group_algebra_axioms_and_flags():
    K = cyclic_group_algebra(FieldSpec.cyclotomic(5), 5)
    report = check_hopf_axioms(K)
    assert report.passed
    assert K.is_cocommutative()
    assert K.is_commutative()
    assert K.is_semisimple()


def test_s3_cocommutative_not_commutative():
    K, _, _ = s3_group_algebra(FieldSpec.rationals())
    assert check_hopf_axioms(K).passed
    assert K.is_cocommutative()
    assert not K.is_commutative()


def test_sweedler_axioms():
    SW = sweedler_algebra(FieldSpec.rationals())
    assert check_hopf_axioms(SW).passed
    assert not SW.is_cocommutative()
    assert not SW.is_semisimple()


def test_corrupted_antipode_fails_with_witness():
    K = cyclic_group_algebra(FieldSpec.rationals(), 2)
    K.antipode[1] = {0: K.field.one()}  # S(g) = 1
    report = check_hopf_axioms(K)
    assert not report.passed
    assert report.failures() == [("antipode", ("g",))]


def test_dual_abelian_group_algebra():
    K = dual_abelian_group_algebra(FieldSpec.cyclotomic(4), 4)
    assert check_hopf_axioms(K).passed
    assert K.metadata["kind"] == "dual_group"


def test_braid_equation_diagonal_and_jordan():
    Q4 = FieldSpec.cyclotomic(4)
    z = Q4.zeta()
    V = BraidedVectorSpace.diagonal([[z, z ** 3], [z, z]])
    ok, witness = braid_equation_check(V)
    assert ok and witness is None
    VJ = BraidedVectorSpace.jordan_block(FieldSpec.prime(3))
    ok, _ = braid_equation_check(VJ)
    assert ok


def test_braid_equation_perturbed_flip_fails():
    # the flip with the ((0,1) -> (0,0)) matrix entry set to 2; scaling a
    # nonzero flip entry stays diagonal and would still braid, so the
    # perturbation must hit a zero entry
    Q = FieldSpec.rationals()
    one = Q.one()
    images = {(i, j): {(j, i): one} for i in range(2) for j in range(2)}
    images[(0, 1)] = {(1, 0): one, (0, 0): Q.from_int(2)}
    V = BraidedVectorSpace(Q, 2, images)
    assert V.is_invertible()
    ok, witness = braid_equation_check(V)
    assert not ok
    assert witness == (0, 1, 1)


def test_braid_singular_rejected():
    Q = FieldSpec.rationals()
    images = {(i, j): {} for i in range(2) for j in range(2)}
    images[(0, 0)] = {(0, 0): Q.one()}
    V = BraidedVectorSpace(Q, 2, images)
    with pytest.raises(HopfError):
        braid_equation_check(V)


def test_yd_pair_abelian_group():
    Q4 = FieldSpec.cyclotomic(4)
    K = cyclic_group_algebra(Q4, 4)
    z = Q4.zeta()
    chi = [z ** k for k in range(4)]
    res = validate_yd_pair(K, 1, chi)
    assert res.ok
    assert res.braiding_scalar == z


def test_yd_pair_sweedler():
    Q = FieldSpec.rationals()
    SW = sweedler_algebra(Q)
    chi = [Q.one(), Q.from_int(-1), Q.zero(), Q.zero()]
    res = validate_yd_pair(SW, 1, chi)
    assert res.ok
    assert res.braiding_scalar == Q.from_int(-1)


def test_yd_pair_s3_sign_character_fails():
    Q = FieldSpec.rationals()
    K, perms, pidx = s3_group_algebra(Q)
    even = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    sign = [Q.one() if p in even else Q.from_int(-1) for p in perms]
    g = pidx[(1, 0, 2)]  # non-central transposition
    res = validate_yd_pair(K, g, sign)
    assert not res.ok
    assert res.witness is not None


def test_yd_pair_realizes_requested_braiding():
    # the diagonal braiding rebuilt from a family of pairs matches chi_j(g_i)
    Q4 = FieldSpec.cyclotomic(4)
    K = cyclic_group_algebra(Q4, 4)
    z = Q4.zeta()
    gs = [1, 2]
    chis = [[z ** k for k in range(4)], [(z ** 2) ** k for k in range(4)]]
    for g, chi in zip(gs, chis):
        assert validate_yd_pair(K, g, chi).ok
    q_matrix = [[chis[j][gs[i]] for j in range(2)] for i in range(2)]
    V = BraidedVectorSpace.diagonal(q_matrix)
    assert braid_equation_check(V)[0]
    assert q_matrix[0][0] == z


def test_yd_triple_examples():
    F3 = FieldSpec.prime(3)
    K = cyclic_group_algebra(F3, 3)
    chi = [F3.one()] * 3
    eta = [F3.from_int(k) for k in range(3)]
    assert validate_yd_triple(K, 1, chi, eta).ok
    eta_sq = [F3.from_int(k * k) for k in range(3)]
    res = validate_yd_triple(K, 1, chi, eta_sq)
    assert not res.ok and "derivation" in res.witness
    eta_zero = [F3.zero()] * 3
    res = validate_yd_triple(K, 1, chi, eta_zero)
    assert not res.ok and "eta(g)" in res.witness


def test_module_algebra_examples():
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    R = quantum_line(3, z)
    K = cyclic_group_algebra(Q3, 3)
    act = ActionSpec.cyclic_diagonal(K, R, [z])
    assert is_module_algebra(K, R, act)
    triv = ActionSpec.trivial(K, R)
    assert is_module_algebra(K, R, triv)
    F3 = FieldSpec.prime(3)
    J = jordan_plane(3, True)
    KP = cyclic_group_algebra(F3, 3)
    actj = ActionSpec.cyclic_linear(
        KP, J, [{0: F3.one()}, {1: F3.one(), 0: F3.one()}]
    )
    assert is_module_algebra(KP, J, actj)


def test_module_algebra_negative():
    # g.X = q X with q of order 6 on k[X]/(X^3): X^3 -> -X^3 != 0
    Q6 = FieldSpec.cyclotomic(6)
    z6 = Q6.zeta()
    R = quantum_line(3, z6 ** 2)
    K = cyclic_group_algebra(Q6, 3)
    act = ActionSpec.cyclic_diagonal(K, R, [z6])
    assert not is_module_algebra(K, R, act)


def test_smash_product_taft():
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    R = quantum_line(3, z)
    K = cyclic_group_algebra(Q3, 3)
    act = ActionSpec.cyclic_diagonal(K, R, [z])
    S = smash_product(R, K, act)
    assert S.result.dimension() == 9
    rels = {str(r) for r in S.result.presentation.relations}
    assert rels == {"X^3", "g^3 - 1", "g*X - zeta*X*g"}


def test_smash_product_trivial_action_is_tensor():
    Q = FieldSpec.rationals()
    R = quantum_line(2, Q.from_int(-1))
    K = cyclic_group_algebra(Q, 3)
    act = ActionSpec.trivial(K, R)
    S = smash_product(R, K, act)
    assert S.result.dimension() == R.dimension() * K.dim
    # commутation rules are plain commutators for the trivial action
    g, X = S.result.free.gen(0), S.result.free.gen(2 - 1)
    assert S.result.normal_form(g * X - X * g).is_zero()


def test_smash_product_restricted_jordan():
    F3 = FieldSpec.prime(3)
    J = jordan_plane(3, True)
    K = cyclic_group_algebra(F3, 3)
    act = ActionSpec.cyclic_linear(K, J, [{0: F3.one()}, {1: F3.one(), 0: F3.one()}])
    S = smash_product(J, K, act)
    assert S.result.dimension() == 27


def test_smash_associativity_sampled():
    rng = random.Random(2)
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    R = quantum_line(3, z)
    K = cyclic_group_algebra(Q3, 3)
    S = smash_product(R, K, ActionSpec.cyclic_diagonal(K, R, [z]))
    A = S.result
    words = [w for d in range(4) for w in A.normal_words(d)]
    one = A.field.one()
    for _ in range(500):
        u, v, w = (words[rng.randrange(len(words))] for _ in range(3))
        uv = A.normal_form(NcPoly(A.free, {u + v: one}))
        vw = A.normal_form(NcPoly(A.free, {v + w: one}))
        wpoly = NcPoly(A.free, {w: one})
        upoly = NcPoly(A.free, {u: one})
        assert A.normal_form(uv * wpoly) == A.normal_form(upoly * vw)


def test_builders():
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    assert quantum_line(3, z).dimension() == 3
    Q = FieldSpec.rationals()
    m1 = Q.from_int(-1)
    data = qls([[m1, Q.one()], [Q.one(), m1]])
    assert data.algebra.dimension() == 4
    assert data.big_n == [2, 2]
    assert data.divisibility_ok()
    Q4 = FieldSpec.cyclotomic(4)
    rep = cartan_check([[Q4.zeta()]], [(1,)])
    assert rep.passed


def test_builder_hypothesis_violations():
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    with pytest.raises(HopfError):
        quantum_line(4, z)
    with pytest.raises(HopfError) as err:
        qls([[z, z], [z, z]])  # q12 q21 = z^2 != 1
    assert "(0, 1)" in str(err.value)
    Q = FieldSpec.rationals()
    with pytest.raises(HopfError):
        quantum_line(1, Q.one())  # q = 1 in characteristic 0
    with pytest.raises(HopfError):
        qls([[Q.one()]])


def test_presentation_from_structure_constants():
    Q = FieldSpec.rationals()
    K = cyclic_group_algebra(Q, 4)
    free, rels, basis_words = presentation_from_structure_constants(K)
    assert [g.name for g in free.generators] == ["g"]
    assert len(rels) == 1 and str(rels[0]) == "g^4 - 1"
    SW = sweedler_algebra(Q)
    free, rels, basis_words = presentation_from_structure_constants(SW)
    pres = Presentation(
        free, rels, {0: Q.one(), 1: Q.zero()}
    )
    alg = groebner_truncated(pres, 6)
    assert alg.dimension() == 4


def test_presented_hopf_to_structure_constants():
    Q3 = FieldSpec.cyclotomic(3)
    free = FreeAlgebra(Q3, [Generator("g", 1)])
    pres = Presentation(free, [free.gen(0) ** 3 - free.one()], {0: Q3.one()})
    alg = groebner_truncated(pres, 8)
    H = HopfPresented(alg, {"g": GROUPLIKE})
    data = H.to_structure_constants()
    assert data.dim == 3
    assert check_hopf_axioms(data).passed
    assert data.is_cocommutative()


def test_presented_hopf_action_well_definedness():
    F3 = FieldSpec.prime(3)
    J = jordan_plane(3, False, cutoff=9)
    free = FreeAlgebra(F3, [Generator("g", 1), Generator("gi", 1)])
    pres = Presentation(
        free,
        [free.gen(0) * free.gen(1) - free.one(), free.gen(1) * free.gen(0) - free.one()],
        {0: F3.one(), 1: F3.one()},
    )
    H = HopfPresented(groebner_truncated(pres, 9), {"g": GROUPLIKE, "gi": GROUPLIKE})
    x, y = J.free.gen(0), J.free.gen(1)
    act = PresentedHopfAction(H, J, {(0, 0): x, (0, 1): y + x, (1, 0): x, (1, 1): y - x})
    assert act.is_module_algebra()
    bad = PresentedHopfAction(H, J, {(0, 0): x, (0, 1): y, (1, 0): x, (1, 1): y + x})
    assert not bad.is_module_algebra()  # g gi != id on y
