import random
from fractions import Fraction

import pytest

from pisoliton.fixtures import abelian_structure, standard_phi
from pisoliton.frame import LieFrame, covariant_derivative, ricci_of
from pisoliton.generators import para_sasaki_candidate, rational
from pisoliton.scalar import ParamSet, Scalar
from pisoliton.soliton import (EINSTEIN_EQUIVALENT_PROPERTIES, Potential, _sym_eta, build_h_and_check,
                               check_correspondence, check_parallel_tensor, check_recurrence, classify,
                               closed_form_reeb, einstein_equivalence_consistent, nabla_rho, one_form_residual,
                               solve_einstein_like, solve_soliton)
from pisoliton.structure import PiStructure, PreconditionError, is_para_sasaki
from pisoliton.tensor import FrameTensor, L


def _strs(values):
    return tuple(str(v) for v in values)


# Einstein-like fits

def test_einstein_like_example(example):
    s, conn, curv = example
    el = solve_einstein_like(s, curv)
    assert el.status == "exact_fit"
    assert el.constants() == (0, 0, -4)
    assert el.kind == "eta_einstein"


def test_einstein_like_flat():
    s = abelian_structure()
    el = solve_einstein_like(s, ricci_of(s.frame)[1])
    assert el.fits and el.constants() == (0, 0, 0) and el.kind == "einstein"


def test_einstein_like_perturbed(example):
    s, conn, curv = example
    P = s.frame.params
    bump = FrameTensor.from_function(P, 5, (L, L), lambda i, j: int({i, j} == {1, 2}))
    el = solve_einstein_like(s, curv, ricci=curv.ricci + bump)
    assert el.status == "no_fit"
    assert el.witness == (1, 2)


# solitons

def test_reeb_soliton_example(example):
    s, conn, curv = example
    sol = solve_soliton(s, conn, curv, Potential.reeb())
    assert sol.fits and not sol.free
    assert sol.constants() == (0, -1, 5)
    assert sol.relations == {"sum_is_2n": True}


def test_collinear_free_k(example):
    s, conn, curv = example
    fam = solve_soliton(s, conn, curv, Potential.collinear())
    assert fam.fits and fam.free == ("k",)
    assert _strs((fam.lam, fam.mu, fam.nu, fam.k)) == ("0", "-k", "k + 4", "k")
    assert all(fam.relations.values())
    pinned = solve_soliton(s, conn, curv, Potential.collinear(constants=(0, -1, 5)))
    assert pinned.fits and pinned.k == 1 and pinned.k == -pinned.mu


def test_collinear_given_k(example):
    s, conn, curv = example
    one = solve_soliton(s, conn, curv, Potential.collinear(k=1))
    assert one.constants() == (0, -1, 5)
    two = solve_soliton(s, conn, curv, Potential.collinear(k=2))
    assert two.constants() == (0, -2, 6)
    sym = solve_soliton(s, conn, curv, Potential.collinear(k="t"))
    assert sym.params.names == ("p", "q", "t")
    assert _strs(sym.constants()) == ("0", "-t", "t + 4")
    with pytest.raises(ValueError):
        solve_soliton(s, conn, curv, Potential.collinear(k=1, constants=(0, -1, 5)))


def test_collinear_constants_no_fit(example):
    s, conn, curv = example
    assert solve_soliton(s, conn, curv, Potential.collinear(constants=(1, 1, 1))).status == "no_fit"


def test_flat_reeb_soliton_unique_zero():
    s = abelian_structure()
    conn, curv = ricci_of(s.frame)
    sol = solve_soliton(s, conn, curv, Potential.reeb())
    assert sol.fits and not sol.free and sol.constants() == (0, 0, 0)


# correspondence

def test_correspondence_example(example):
    s, conn, curv = example
    rep = check_correspondence(s, conn, curv)
    assert rep.ok and rep.status == "holds"
    assert all(rep.relations.values())
    assert rep.special_cases["eta_einstein"] == {"applies": True, "holds": True}
    assert rep.special_cases["einstein"]["applies"] is False


def test_correspondence_precondition():
    s = abelian_structure()
    assert check_correspondence(s, *ricci_of(s.frame)).status == "precondition_unmet"


# covariant derivative of ρ

def test_nabla_rho_example(example):
    s, conn, curv = example
    rep = nabla_rho(s, conn, curv)
    expected = {(1, 3, 0), (2, 4, 0), (3, 1, 0), (4, 2, 0)}
    expected |= {(i, k, j) for i, j, k in expected}
    assert {idx for idx, _ in rep.tensor.nonzero()} == expected
    assert all(v == -4 for _, v in rep.tensor.nonzero())
    # restricted to ker η
    assert all(rep.tensor[i, j, k].is_zero() for i in range(1, 5) for j in range(1, 5) for k in range(1, 5))


def test_nabla_rho_closed_forms(example):
    s, conn, curv = example
    reeb = solve_soliton(s, conn, curv, Potential.reeb())
    coll = solve_soliton(s, conn, curv, Potential.collinear(constants=reeb.constants()))
    rep = nabla_rho(s, conn, curv, reeb, coll)
    assert rep.reeb_closed_form and rep.collinear_closed_form


# recurrence

def test_recurrence_excluded(example):
    s, conn, curv = example
    sol = solve_soliton(s, conn, curv, Potential.reeb())
    res = check_recurrence(s, conn, curv, sol)
    assert res.status == "excluded_case"
    assert check_recurrence(s, conn, curv, None).status == "precondition_unmet"


def test_recurrence_sign_oracle(example):
    """With ρ = -g(., φ.) - λg - μg̃ - νη⊗η and ν = 2n - λ - μ symbolic,
    D ∇ρ = A R1 + B R2 holds identically for B = +2n(μ+1) only."""
    s0, _, _ = example
    P = ParamSet(("p", "q", "lam", "mu"))
    s = s0.with_frame(s0.frame.embed(P))
    lam, mu, n = Scalar.var(P, "lam"), Scalar.var(P, "mu"), s.n
    nu = 2 * n - lam - mu
    rho = -s.g_phi() - s.frame.metric.scale(lam) - s.associated().scale(mu) - s.eta_eta().scale(nu)
    d, z = s.dim, Scalar.zero(P)
    r1 = FrameTensor.from_function(P, d, (L, L), lambda i, j: sum((rho[i, k] * s.phi[k, j] for k in range(d)), z))
    r2 = FrameTensor.from_function(P, d, (L, L), lambda i, j: sum(
        (s.phi[a, i] * rho[a, b] * s.phi[b, j] for a in range(d) for b in range(d)), z))
    lhs = closed_form_reeb(s, mu, nu).scale((mu + 1) ** 2 - lam ** 2)
    A = lam * (lam - 2 * n) - (mu + 1) ** 2
    plus = _sym_eta(P, s, r1).scale(A) + _sym_eta(P, s, r2).scale(2 * n * (mu + 1))
    minus = _sym_eta(P, s, r1).scale(A) + _sym_eta(P, s, r2).scale(-2 * n * (mu + 1))
    assert lhs == plus
    assert lhs != minus


# classification

def test_classification_example(example):
    s, conn, curv = example
    sol = solve_soliton(s, conn, curv, Potential.reeb())
    rep = classify(s, conn, curv, sol)
    assert rep.locally_phi_symmetric
    assert rep.ricci_eta_parallel and rep.ricci_parallel_along_xi
    assert not rep.locally_ricci_symmetric
    assert not rep.ricci_semi_symmetric
    assert not rep.einstein
    assert rep["nabla_recurrent_formula_holds"].data["status"] == "excluded_case"
    assert rep["almost_pseudo_ricci_symmetric"].data["status"] == "no_fit"
    assert einstein_equivalence_consistent(rep) == (True, [])
    assert set(EINSTEIN_EQUIVALENT_PROPERTIES) <= set(rep.verdicts)


def _so3_structure():
    frame = LieFrame.build(ParamSet(), 3, {(1, 2): [1, 0, 0], (0, 2): [0, -1, 0], (0, 1): [0, 0, 1]})
    return PiStructure.build(frame, standard_phi(3), [1, 0, 0], [1, 0, 0])


def test_one_form_scaling_parallel_ricci():
    s = _so3_structure()
    conn, curv = ricci_of(s.frame)
    nrho = covariant_derivative(conn, curv.ricci)
    assert nrho.is_zero() and not curv.ricci.is_zero()
    rep = classify(s, conn, curv)
    alpha = rep["special_weakly_ricci_symmetric"].data["alpha"]
    assert one_form_residual(curv.ricci, nrho, alpha, None).is_zero()
    for c in (Fraction(-3), Fraction(1, 7)):
        scaled = [a * c for a in alpha]
        assert one_form_residual(curv.ricci, nrho, scaled, None).is_zero()


def test_one_form_residual_is_affine(example):
    s, conn, curv = example
    rng = random.Random(5)
    P = s.frame.params
    nrho = covariant_derivative(conn, curv.ricci)
    zero = [Scalar.zero(P)] * 5
    base = one_form_residual(curv.ricci, nrho, zero, zero)
    alpha = [Scalar.const(P, rational(rng)) for _ in range(5)]
    beta = [Scalar.const(P, rational(rng)) for _ in range(5)]
    r1 = one_form_residual(curv.ricci, nrho, alpha, beta) - base
    r3 = one_form_residual(curv.ricci, nrho, [a * 3 for a in alpha], [b * 3 for b in beta]) - base
    assert r3 == r1.scale(3)


# parallel tensors

def test_parallel_tensor_examples(example):
    s, conn, curv = example
    rep = check_parallel_tensor(s, conn, s.frame.metric.scale(3), curv)
    assert rep.parallel and rep.constant == 3 and rep.multiple_of_metric
    ee = check_parallel_tensor(s, conn, s.eta_eta(), curv)
    assert not ee.parallel
    assert covariant_derivative(conn, s.eta_eta())[1, 3, 0] == 1
    zero = check_parallel_tensor(s, conn, s.frame.metric.scale(0), curv)
    assert zero.parallel and zero.constant == 0


def test_parallel_tensor_errors(example):
    s, conn, curv = example
    skew = FrameTensor.from_function(s.frame.params, 5, (L, L), lambda i, j: i - j)
    with pytest.raises(ValueError):
        check_parallel_tensor(s, conn, skew)
    flat = abelian_structure()
    with pytest.raises(PreconditionError):
        check_parallel_tensor(flat, ricci_of(flat.frame)[0], flat.frame.metric)


def test_h_tensor_example(example):
    s, conn, curv = example
    rep = build_h_and_check(s, conn, curv, -1, 5)
    assert rep.h.is_zero() and rep.parallel
    assert rep.lam == 0 and rep.lambda_is_2n_minus_mu_minus_nu
    assert rep.soliton_verified and rep.converse_verified
    other = build_h_and_check(s, conn, curv, 0, 0)
    assert not other.parallel
    assert other.h == s.associated() - s.eta_eta().scale(5)


# properties over random para-Sasaki-like frames

def _accepted(count=40):
    out = []
    for seed in range(count):
        s = para_sasaki_candidate(random.Random(1000 + seed))
        conn, curv = ricci_of(s.frame)
        if is_para_sasaki(s, conn)[0]:
            out.append((seed, s, conn, curv))
    return out


@pytest.fixture(scope="module")
def accepted():
    frames = _accepted()
    assert len(frames) >= 20
    return frames


def test_duality_random(accepted):
    for seed, s, conn, curv in accepted:
        el = solve_einstein_like(s, curv)
        sol = solve_soliton(s, conn, curv, Potential.reeb(), para_sasaki=True)
        assert el.fits == sol.fits, seed
        if el.fits:
            (a, b, c), (lam, mu, nu) = el.constants(), sol.constants()
            assert a + lam == 0 and b + mu + 1 == 0 and c + nu - 1 == 0, seed
            assert lam + mu + nu == 2 * s.n


def test_collinear_family_random(accepted):
    for seed, s, conn, curv in accepted:
        fam = solve_soliton(s, conn, curv, Potential.collinear(), para_sasaki=True)
        if not fam.fits:
            continue
        assert all(fam.relations.values()), seed
        el = solve_einstein_like(s, curv)
        # η-Einstein with (a, b, c) = (-λ, 0, λ - 2n)
        lam = fam.lam
        assert el.fits
        a, b, c = (x.embed(fam.params) for x in el.constants())
        assert (a, b, c) == (-lam, 0, lam - 2 * s.n), seed


def test_closed_forms_and_classification_random(accepted):
    for seed, s, conn, curv in accepted:
        sol = solve_soliton(s, conn, curv, Potential.reeb(), para_sasaki=True)
        if not sol.fits:
            continue
        rep = nabla_rho(s, conn, curv, sol)
        assert rep.reeb_closed_form, seed
        verdicts = classify(s, conn, curv, sol)
        assert einstein_equivalence_consistent(verdicts)[0], seed
        h = build_h_and_check(s, conn, curv, sol.mu, sol.nu)
        assert h.parallel and h.lambda_is_2n_minus_mu_minus_nu, seed
