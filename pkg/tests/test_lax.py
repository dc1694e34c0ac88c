import numpy as np
import pytest

from openxxz.core import DEFAULT_PARAMS, Params, spectral_samples
from openxxz.errors import UnknownIdentity
from openxxz.fock import build_fock
from openxxz.lax import (
    LAX_IDENTITIES,
    check_lax_identity,
    g_matrix,
    l_operator,
    r_matrix,
    rbar_matrix,
    sigma_map,
    zeta_params,
)
from openxxz.tensor import TensorOp, rel_residual

P = DEFAULT_PARAMS
N = 20
SAMPLES = spectral_samples(P, 3, "lax-unit")


def test_r_matrix_entries():
    x = 0.9 + 0.3j
    r = r_matrix(x, P)
    q, lam, s = P.q, P.lam, P.s
    assert abs(r.data[0, 0] - (q - x**s / q)) < 1e-15
    assert abs(r.data[1, 2] - lam * x**P.s1) < 1e-15
    assert abs(r.data[2, 1] - lam * x**P.s0) < 1e-15
    assert abs(r.data[1, 1] - (1 - x**s)) < 1e-15


def test_r_at_one_is_scaled_permutation():
    r = r_matrix(1.0, P)
    perm = np.zeros((4, 4), dtype=complex)
    perm[0, 0] = perm[3, 3] = perm[1, 2] = perm[2, 1] = 1.0
    assert rel_residual(r, TensorOp(P.lam * perm, (2, 2))).value < 1e-14


def test_rbar_is_zeta_image_of_r_inverse_argument():
    for x in SAMPLES:
        assert check_lax_identity("rbar_from_r", P, [x])[0] < 1e-14


def test_l_operator_blocks_flavor1():
    rep = build_fock(1, N, P)
    x = 1.1 - 0.2j
    lop = l_operator("L", 1, x, rep, P)
    t = lop.data.reshape(N, 2, N, 2)
    q, lam = P.q, P.lam
    # (1,1) block q^{h/2}, (1,2) block lam x^{s0} f q^{-h/2}
    assert np.max(np.abs(np.diag(t[:, 0, :, 0]) - q ** -np.arange(N))) < 1e-12
    want12 = lam * x**P.s0 * rep.f @ np.diag(rep.qh_vec(-0.5))
    assert np.max(np.abs(t[:, 0, :, 1] - want12)) < 1e-12
    # Lcheck (2,2) block is -x^s/q q^{h/2}
    lc = l_operator("Lcheck", 1, x, rep, P).data.reshape(N, 2, N, 2)
    want22 = -(x**P.s / q) * rep.qh_vec(0.5)
    rel = np.abs(np.diag(lc[:, 1, :, 1]) - want22) / np.maximum(1.0, np.abs(want22))
    assert np.max(rel) < 1e-13


def test_flavor2_equals_sigma_zeta_transport():
    rep2 = build_fock(2, N, P)
    zp = zeta_params(P)
    rep1z = build_fock(1, N, zp)
    x = 0.95 + 0.1j
    for kind in ("L", "Lbar", "Lcheck", "Lcheckbar"):
        direct = l_operator(kind, 2, x, rep2, P)
        moved = sigma_map(l_operator(kind, 1, x, rep1z, zp), 1)
        num = np.max(np.abs(direct.data - moved.data))
        den = max(1.0, np.max(np.abs(moved.data)))
        assert num / den < 1e-12, kind


def test_g_matrix_zeta_sigma_invariant():
    g = g_matrix(P)
    gz = g_matrix(zeta_params(P))
    flipped = sigma_map(TensorOp(gz.data, (2,)), 0)
    assert rel_residual(g, flipped).value < 1e-15


def test_sigma_map_involution_and_zeta_involution():
    rng = np.random.default_rng(5)
    m = TensorOp(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)), (2, 2))
    assert rel_residual(sigma_map(sigma_map(m, 1), 1), m).value < 1e-15
    assert zeta_params(zeta_params(P)) == P


@pytest.mark.parametrize("name", LAX_IDENTITIES)
def test_registry_identities_pass(name):
    res = check_lax_identity(name, P, SAMPLES, cutoff=N, trim=4)
    assert max(res) < P.tol_exact, f"{name}: {max(res):.3e}"


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        check_lax_identity("nope", P, SAMPLES)


def test_inverse_identity_example_value():
    # L1(x) Lcheckbar1(x) = (1 - x^{-s}/q) Id; small cutoff keeps entries O(1)
    # so the plain absolute comparison is meaningful here.
    rep = build_fock(1, 8, P)
    x = SAMPLES[0]
    lop = l_operator("L", 1, x, rep, P)
    lcb = l_operator("Lcheckbar", 1, x, rep, P)
    prod = (lop @ lcb).data
    want = (1.0 - x**-P.s / P.q) * np.eye(16)
    keep = 2 * 4
    assert np.max(np.abs(prod[:keep, :keep] - want[:keep, :keep])) < 1e-11
