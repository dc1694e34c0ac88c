import numpy as np
import pytest

from openxxz.boundary import (
    BOUNDARY_IDENTITIES,
    check_boundary_identity,
    dressed_k,
    dressing_g,
    k_matrix,
    k_operator,
    k_pole_check,
    kbar_matrix,
    omega_coeffs,
)
from openxxz.core import DEFAULT_PARAMS, q_exp, spectral_samples
from openxxz.errors import UnknownIdentity
from openxxz.fock import build_fock
from openxxz.lax import l_operator, r_matrix, rbar_matrix
from openxxz.tensor import embed, identity_residual, rel_residual

P = DEFAULT_PARAMS
N = 16
SAMPLES = spectral_samples(P, 3, "bnd-unit", pole_checks=[k_pole_check(P)])


def test_k_matrix_entries():
    x = 1.07 - 0.22j
    k = k_matrix(x, P)
    assert abs(k.data[0, 0] - (x**P.s0 * P.eps_plus + x**-P.s1 * P.eps_minus)) < 1e-15
    assert abs(k.data[1, 1] - (x**-P.s0 * P.eps_plus + x**P.s1 * P.eps_minus)) < 1e-15
    kb = kbar_matrix(x, P)
    q = P.q
    assert abs(kb.data[0, 0] - (x**P.s0 * P.epsbar_plus / q + q * x**-P.s1 * P.epsbar_minus)) < 1e-15


def test_k_operator_level0_normalization():
    rep = build_fock(1, N, P)
    for x in SAMPLES:
        kop = k_operator("K", 1, x, rep, P)
        assert abs(kop.diag[0] - 1.0) < 1e-13


def test_k_operator_matches_qexp_formula():
    # level-n entry against the scalar q-exponential path from core
    rep = build_fock(1, N, P)
    q, lam = P.q, P.lam
    x = SAMPLES[0]
    kop = k_operator("K", 1, x, rep, P)
    kappa_inv = q_exp(-P.eps_minus * x**P.s / (lam * P.eps_plus), q**-2, P)
    for n in (0, 1, 3, 7):
        want = kappa_inv * x ** (-2 * P.s0 * n) * q_exp(
            -P.eps_minus * x**P.s * q ** (2 * n) / (lam * P.eps_plus), q**-2, P, inverse=True)
        assert abs(kop.diag[n] - want) < 1e-12 * max(1.0, abs(want))


def test_kcheckbar_decay_rate():
    # entries fall like |q^2 x^{-2 s0}|^n at the default point
    rep = build_fock(1, 24, P)
    x = 1.1 + 0.05j
    kcb = k_operator("KcheckBar", 1, x, rep, P)
    rate = abs(P.q**2 * x ** (-2 * P.s0))
    ratios = np.abs(kcb.diag[8:16] / kcb.diag[7:15])
    assert np.max(np.abs(ratios - rate) / rate) < 0.05


def test_flavor2_k_operator_is_zeta_of_flavor1():
    rep1 = build_fock(1, N, P)
    rep2 = build_fock(2, N, P)
    zp = P.zeta()
    rep1z = build_fock(1, N, zp)
    x = SAMPLES[1]
    for kind in ("K", "KcheckBar"):
        direct = k_operator(kind, 2, x, rep2, P).diag
        swapped = k_operator(kind, 1, x, rep1z, zp).diag
        assert np.max(np.abs(direct - swapped)) < 1e-13 * max(1.0, np.max(np.abs(swapped)))


def test_dressing_g_inverse():
    rep = build_fock(1, N, P)
    for barred in (False, True):
        g = dressing_g(rep, P, barred=barred)
        gi = dressing_g(rep, P, barred=barred, inverse=True)
        assert identity_residual([[g, gi]], [[1.0 * __import__("openxxz.tensor", fromlist=["identity_op"]).identity_op((N, 2))]], N - 2) < 1e-13
        # upper-triangular structure: no E21 component
        t = g.data.reshape(N, 2, N, 2)
        assert np.max(np.abs(t[:, 1, :, 0])) == 0.0


def test_dressed_k_empty_chain_is_bare_k():
    got = dressed_k("T", 1, SAMPLES[0], [], P)
    want = k_matrix(SAMPLES[0], P)
    assert rel_residual(got, want).value < 1e-15


def test_dressed_k_single_site_oracle():
    # direct 4x4 multiplication oracle
    x, xi = SAMPLES[0], 1.1 - 0.08j
    got = dressed_k("T", 1, x, [xi], P)
    dims = (2, 2)
    want = (
        embed(r_matrix(1.0 / (x * xi), P), [0, 1], dims)
        @ embed(k_matrix(x, P), [0], dims)
        @ embed(rbar_matrix(x / xi, P), [0, 1], dims)
    )
    assert rel_residual(got, want).value < 1e-14


def test_dressed_k_q_type_single_site_oracle():
    rep = build_fock(1, 10, P)
    x, xi = SAMPLES[1], 0.95 + 0.1j
    got = dressed_k("Q", 1, x, [xi], P, rep)
    dims = (10, 2)
    want = (
        embed(l_operator("L", 1, 1.0 / (x * xi), rep, P), [0, 1], dims)
        @ embed(k_operator("K", 1, x, rep, P).as_tensorop(), [0], dims)
        @ embed(l_operator("Lbar", 1, x / xi, rep, P), [0, 1], dims)
    )
    assert rel_residual(got, want).value < 1e-13


def test_omega21_printed_form():
    x = SAMPLES[2]
    co = omega_coeffs(1, x, P)
    want = P.lam * x**-P.s * (P.eps_plus * x**P.s1 + P.eps_minus * x**-P.s0) * P.p**-P.s0
    assert abs(co["omega21"] - want) < 1e-15


@pytest.mark.parametrize("name", BOUNDARY_IDENTITIES)
def test_registry_identities_pass(name):
    res = check_boundary_identity(name, P, SAMPLES, cutoff=N, trim=4)
    assert max(res) < P.tol_exact, f"{name}: {max(res):.3e}"


def test_refeq0_tight():
    res = check_boundary_identity("refeq0", P, SAMPLES)
    assert max(res) < 1e-12


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        check_boundary_identity("deltaconj.zz", P, SAMPLES)
    with pytest.raises(UnknownIdentity):
        check_boundary_identity("nope", P, SAMPLES)
