import random

import pytest

from pisoliton.fixtures import abelian_structure, example_frame
from pisoliton.frame import (Connection, JacobiError, LieFrame, check_jacobi, covariant_derivative, curvature,
                             levi_civita, lie_derivative_metric, ricci_of, second_bianchi_contracted_check,
                             torsion)
from pisoliton.generators import pd_metric, random_frame
from pisoliton.scalar import ParamSet, Scalar
from pisoliton.tensor import FrameTensor, L, U

E = ParamSet()


def test_jacobi_examples():
    assert check_jacobi(LieFrame.build(E, 4)).ok
    assert check_jacobi(example_frame()).ok
    so3 = LieFrame.build(E, 3, {(1, 2): [1, 0, 0], (0, 2): [0, -1, 0], (0, 1): [0, 0, 1]})
    assert check_jacobi(so3).ok


def test_jacobi_failure_witness():
    # [e0,e1] = e1, [e1,e2] = e0 is not a Lie algebra
    bad = LieFrame.build(E, 3, {(0, 1): [0, 1, 0], (1, 2): [1, 0, 0]})
    res = check_jacobi(bad)
    assert not res.ok and res.witness == (0, 1, 2)
    with pytest.raises(JacobiError):
        levi_civita(bad)
    with pytest.raises(JacobiError):
        second_bianchi_contracted_check(Connection(bad, FrameTensor.zeros(E, 3, (L, L, U))), None)


def test_frame_validation():
    with pytest.raises(ValueError):
        LieFrame.build(E, 3, {(1, 1): [0, 0, 0]})
    with pytest.raises(ValueError):
        LieFrame.build(E, 2, metric=[[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        LieFrame.build(E, 2, metric=[[1, 1], [1, 1]])


def test_abelian_is_flat():
    frame = LieFrame.build(E, 3, metric=pd_metric(random.Random(1), 3))
    conn, curv = ricci_of(frame)
    assert conn.gamma.is_zero()
    assert curv.riemann.is_zero() and curv.ricci.is_zero()
    assert curv.tau == 0
    assert second_bianchi_contracted_check(conn, curv) == (True, None)


def test_example_connection(example):
    s, conn, curv = example
    P = s.frame.params
    e = lambda k: [Scalar.one(P) if i == k else Scalar.zero(P) for i in range(5)]
    assert conn.nabla(1, e(0)) == e(3)
    assert s.g_vec(conn.nabla(1, e(3)), e(0)) == -1


def test_example_curvature(example):
    s, conn, curv = example
    assert [(idx, str(v)) for idx, v in curv.ricci.nonzero()] == [((0, 0), "-4")]
    assert curv.tau == -4
    assert second_bianchi_contracted_check(conn, curv) == (True, None)


def test_example_covariant_derivatives(example):
    s, conn, curv = example
    assert covariant_derivative(conn, s.frame.metric).is_zero()
    assert covariant_derivative(conn, curv.ricci)[1, 3, 0] == -4
    nabla_eta = covariant_derivative(conn, s.eta)
    for i in range(5):
        for j in range(5):
            assert nabla_eta[i, j] == s.g_phi()[i, j]


def test_lie_derivative(example):
    s, conn, curv = example
    P = s.frame.params
    assert lie_derivative_metric(conn, [0] * 5).is_zero()
    lxi = lie_derivative_metric(conn, list(s.xi.array))
    assert lxi == (s.associated() - s.eta_eta()).scale(2)
    assert lxi == s.g_phi().scale(2)
    K = P.extended("k")
    k = Scalar.var(K, "k")
    conn_k = levi_civita(s.frame.embed(K))
    assert lie_derivative_metric(conn_k, [k, 0, 0, 0, 0]) == lxi.embed(K).scale(k)


# -- properties on random frames ---------------------------------------------


def _assert_curvature_identities(frame: LieFrame):
    conn = levi_civita(frame)
    curv = curvature(frame, conn)
    assert torsion(conn).is_zero()
    assert covariant_derivative(conn, frame.metric).is_zero()
    R, Rl = curv.riemann, curv.riemann_lowered
    assert (R + R.permute((1, 2, 0, 3)) + R.permute((2, 0, 1, 3))).is_zero()
    assert Rl == Rl.permute((2, 3, 0, 1))
    assert (Rl + Rl.permute((1, 0, 2, 3))).is_zero()
    assert (Rl + Rl.permute((0, 1, 3, 2))).is_zero()
    assert curv.ricci == curv.ricci.permute((1, 0))
    assert second_bianchi_contracted_check(conn, curv)[0]


@pytest.mark.parametrize("seed", range(110))
def test_random_frame_identities(seed):
    frame = random_frame(random.Random(seed))
    assert frame.jacobi.ok
    _assert_curvature_identities(frame)


def test_random_frames_are_varied():
    kinds = [random_frame(random.Random(s)) for s in range(110)]
    assert sum(1 for f in kinds if not f.brackets.is_zero()) > 60
    assert len({f.dim for f in kinds}) >= 3


@pytest.mark.parametrize("dim", [1, 3, 5, 7])
def test_flat_controls(dim):
    s = abelian_structure(dim)
    _assert_curvature_identities(s.frame)


def test_symbolic_example_identities():
    _assert_curvature_identities(example_frame())
