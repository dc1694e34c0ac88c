import io

import numpy as np
import pytest

from openxxz.core import DEFAULT_PARAMS, seeded_rng
from openxxz.errors import ShapeMismatch
from openxxz.tensor import (
    TensorOp,
    dump_tensor,
    embed,
    identity_op,
    kron,
    load_tensor,
    partial_trace,
    rel_residual,
    slot_transpose,
    trim_fock,
)

RNG = seeded_rng(DEFAULT_PARAMS, "tensor-tests")


def rand_op(dims):
    side = int(np.prod(dims))
    m = RNG.standard_normal((side, side)) + 1j * RNG.standard_normal((side, side))
    return TensorOp(m, dims)


def test_tensorop_validation():
    with pytest.raises(ShapeMismatch):
        TensorOp(np.zeros((2, 3)), (2,))
    with pytest.raises(ShapeMismatch):
        TensorOp(np.zeros((4, 4)), (2, 3))


def test_kron_identity_and_matrix_units():
    i2 = identity_op((2,))
    assert rel_residual(kron(i2, i2), identity_op((2, 2))).value == 0.0
    e12 = TensorOp(np.array([[0, 1], [0, 0]]), (2,))
    e21 = TensorOp(np.array([[0, 0], [1, 0]]), (2,))
    k = kron(e12, e21)
    # single nonzero at (<0|x<1|, |1>x|0>) = row 0*2+1, col 1*2+0
    want = np.zeros((4, 4))
    want[1, 2] = 1.0
    assert np.array_equal(k.data, want)


def test_kron_mixed_product():
    for _ in range(5):
        a, b, c, d = (rand_op((2,)) for _ in range(4))
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        assert rel_residual(lhs, rhs).value < 1e-13


def embed_oracle(a, slots, dims):
    """Index-loop embedding, independent of the reshape/transpose path."""
    m = len(dims)
    side = int(np.prod(dims))
    a_t = a.data.reshape(a.dims + a.dims)
    out = np.zeros((side, side), dtype=complex)
    import itertools
    for row in itertools.product(*(range(d) for d in dims)):
        for col in itertools.product(*(range(d) for d in dims)):
            if any(row[i] != col[i] for i in range(m) if i not in slots):
                continue
            ridx = tuple(row[s] for s in slots)
            cidx = tuple(col[s] for s in slots)
            ri = np.ravel_multi_index(row, dims)
            ci = np.ravel_multi_index(col, dims)
            out[ri, ci] = a_t[ridx + cidx]
    return out


def test_embed_single_slot():
    x = rand_op((2,))
    assert rel_residual(embed(x, [0], (2, 2)), kron(x, identity_op((2,)))).value < 1e-15
    assert rel_residual(embed(x, [1], (2, 2)), kron(identity_op((2,)), x)).value < 1e-15


def test_embed_identity_any_slots():
    i6 = identity_op((2, 3))
    assert rel_residual(embed(i6, [2, 0], (3, 4, 2)), identity_op((3, 4, 2))).value == 0.0


def test_embed_reordered_nonadjacent_slots():
    xy = rand_op((2, 2))
    dims = (2, 3, 2)
    got = embed(xy, [2, 0], dims)
    want = embed_oracle(xy, [2, 0], dims)
    assert rel_residual(got, TensorOp(want, dims)).value < 1e-14


def test_embed_shape_checks():
    x = rand_op((3,))
    with pytest.raises(ShapeMismatch):
        embed(x, [0], (2, 2))
    with pytest.raises(ShapeMismatch):
        embed(rand_op((2, 2)), [0, 0], (2, 2))


def test_partial_trace_product_state():
    a, b = rand_op((3,)), rand_op((4,))
    got = partial_trace(kron(a, b), 0)
    want = TensorOp(np.trace(a.data) * b.data, (4,))
    assert rel_residual(got, want).value < 1e-14
    assert rel_residual(partial_trace(identity_op((2, 2)), 1),
                        2.0 * identity_op((2,))).value == 0.0


def test_partial_trace_middle_slot_bruteforce():
    a = rand_op((2, 2, 2))
    got = partial_trace(a, 1)
    t = a.data.reshape(2, 2, 2, 2, 2, 2)
    want = np.zeros((4, 4), dtype=complex)
    for i0 in range(2):
        for i2 in range(2):
            for j0 in range(2):
                for j2 in range(2):
                    want[i0 * 2 + i2, j0 * 2 + j2] = sum(t[i0, k, i2, j0, k, j2] for k in range(2))
    assert rel_residual(got, TensorOp(want, (2, 2))).value < 1e-14


def test_partial_trace_cyclic_within_slot():
    dims = (2, 3, 2)
    for _ in range(3):
        a = embed(rand_op((3,)), [1], dims)
        b = embed(rand_op((3,)), [1], dims)
        assert rel_residual(partial_trace(a @ b, 1), partial_trace(b @ a, 1)).value < 1e-12


def test_slot_transpose():
    a, b = rand_op((2,)), rand_op((3,))
    ab = kron(a, b)
    got = slot_transpose(ab, 1)
    want = kron(a, TensorOp(b.data.T, (3,)))
    assert rel_residual(got, want).value < 1e-14
    assert rel_residual(slot_transpose(got, 1), ab).value == 0.0
    # t1 then t2 equals the full transpose
    m = rand_op((2, 3))
    full = slot_transpose(slot_transpose(m, 0), 1)
    assert rel_residual(full, TensorOp(m.data.T, m.dims)).value < 1e-14


def test_transpose_product_reversal_within_slot():
    dims = (2, 3)
    a = embed(rand_op((3,)), [1], dims)
    b = embed(rand_op((3,)), [1], dims)
    lhs = slot_transpose(a @ b, 1)
    rhs = slot_transpose(b, 1) @ slot_transpose(a, 1)
    assert rel_residual(lhs, rhs).value < 1e-13


def test_rel_residual_normalization():
    a = rand_op((2, 2))
    assert rel_residual(a, a).value == 0.0
    z = TensorOp(np.zeros((2, 2)), (2,))
    i2 = identity_op((2,))
    assert abs(rel_residual(z, i2).value - 1.0) < 1e-15  # ||I||=sqrt(2), max(1,..)=sqrt(2)
    pert = TensorOp(a.data + 1e-12, a.dims)
    r = rel_residual(pert, a).value
    assert 1e-13 < r < 1e-10


def test_trim_fock():
    a = rand_op((4, 2))
    t = trim_fock(a, 3)
    assert t.dims == (3, 2)
    assert np.array_equal(t.data, a.data.reshape(4, 2, 4, 2)[:3, :, :3, :].reshape(6, 6))


def test_dump_roundtrip():
    a = rand_op((2, 2))
    a.data[0, 1] = 0.0
    buf = io.StringIO()
    dump_tensor(a, buf)
    text = buf.getvalue()
    assert text.startswith("dims 2 2\n")
    back = load_tensor(io.StringIO(text))
    assert back.dims == (2, 2)
    assert rel_residual(back, a).value < 1e-15
