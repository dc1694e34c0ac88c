"""Shape-aware complex tensor operators.

A TensorOp is a square complex matrix together with the ordered list of slot
dimensions whose product is the matrix side.  Basis ordering is row-major:
the leftmost slot is the most significant index, matching left-to-right
tensor-product notation.
"""

from __future__ import annotations

from typing import IO, Iterable, Sequence

import numpy as np

from .core import Residual
from .errors import ShapeMismatch


class TensorOp:
    __slots__ = ("data", "dims")

    def __init__(self, data, dims: Sequence[int]):
        data = np.asarray(data, dtype=complex)
        dims = tuple(int(d) for d in dims)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ShapeMismatch(f"operator matrix must be square, got {data.shape}")
        if any(d <= 0 for d in dims):
            raise ShapeMismatch("slot dimensions must be positive")
        if int(np.prod(dims, dtype=np.int64)) != data.shape[0]:
            raise ShapeMismatch(f"prod(dims)={np.prod(dims)} != side {data.shape[0]}")
        self.data = data
        self.dims = dims

    # -- convenience algebra (dims must agree for binary ops) --------------
    def _same(self, other: "TensorOp"):
        if self.dims != other.dims:
            raise ShapeMismatch(f"dims mismatch: {self.dims} vs {other.dims}")

    def __matmul__(self, other: "TensorOp") -> "TensorOp":
        self._same(other)
        return TensorOp(self.data @ other.data, self.dims)

    def __add__(self, other: "TensorOp") -> "TensorOp":
        self._same(other)
        return TensorOp(self.data + other.data, self.dims)

    def __sub__(self, other: "TensorOp") -> "TensorOp":
        self._same(other)
        return TensorOp(self.data - other.data, self.dims)

    def __rmul__(self, scalar) -> "TensorOp":
        return TensorOp(complex(scalar) * self.data, self.dims)

    def __neg__(self) -> "TensorOp":
        return TensorOp(-self.data, self.dims)

    @property
    def side(self) -> int:
        return self.data.shape[0]

    def copy(self) -> "TensorOp":
        return TensorOp(self.data.copy(), self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __repr__(self):
        return f"TensorOp(dims={self.dims})"


def identity_op(dims: Sequence[int]) -> TensorOp:
    side = int(np.prod(tuple(dims), dtype=np.int64))
    return TensorOp(np.eye(side, dtype=complex), dims)


def kron(a: TensorOp, b: TensorOp) -> TensorOp:
    return TensorOp(np.kron(a.data, b.data), a.dims + b.dims)


def _check_slot(op: TensorOp, slot: int):
    if not (0 <= slot < len(op.dims)):
        raise ShapeMismatch(f"slot {slot} out of range for dims {op.dims}")


def embed(a: TensorOp, slots: Sequence[int], dims: Sequence[int]) -> TensorOp:
    """a acting on the named slots of the full slot list, identity elsewhere.

    slots may be non-adjacent and reordered: a's i-th slot lands on full slot
    slots[i].
    """
    dims = tuple(int(d) for d in dims)
    slots = list(slots)
    m = len(dims)
    if len(set(slots)) != len(slots):
        raise ShapeMismatch("embed slots must be distinct")
    if any(not (0 <= s < m) for s in slots):
        raise ShapeMismatch(f"embed slots {slots} out of range for {dims}")
    if tuple(a.dims) != tuple(dims[s] for s in slots):
        raise ShapeMismatch(f"operand dims {a.dims} do not match target slots {slots} of {dims}")
    rest = [i for i in range(m) if i not in slots]
    rest_dim = int(np.prod([dims[i] for i in rest], dtype=np.int64)) if rest else 1
    big = np.kron(a.data, np.eye(rest_dim, dtype=complex))
    # big is ordered (slot order: slots..., rest...); permute to natural order
    order = slots + rest
    tensor = big.reshape([dims[i] for i in order] + [dims[i] for i in order])
    perm = [order.index(i) for i in range(m)]
    tensor = tensor.transpose(perm + [m + p for p in perm])
    side = int(np.prod(dims, dtype=np.int64))
    return TensorOp(tensor.reshape(side, side), dims)


def partial_trace(a: TensorOp, slot: int) -> TensorOp:
    _check_slot(a, slot)
    m = len(a.dims)
    tensor = a.data.reshape(a.dims + a.dims)
    tensor = np.trace(tensor, axis1=slot, axis2=m + slot)
    new_dims = a.dims[:slot] + a.dims[slot + 1:]
    side = int(np.prod(new_dims, dtype=np.int64)) if new_dims else 1
    return TensorOp(tensor.reshape(side, side), new_dims if new_dims else (1,))


def slot_transpose(a: TensorOp, slot: int) -> TensorOp:
    _check_slot(a, slot)
    m = len(a.dims)
    tensor = a.data.reshape(a.dims + a.dims)
    tensor = np.swapaxes(tensor, slot, m + slot)
    return TensorOp(tensor.reshape(a.side, a.side), a.dims)


def rel_residual(a: TensorOp | np.ndarray, b: TensorOp | np.ndarray) -> Residual:
    """||A - B||_F / max(1, ||B||_F)."""
    da = a.data if isinstance(a, TensorOp) else np.asarray(a)
    db = b.data if isinstance(b, TensorOp) else np.asarray(b)
    if isinstance(a, TensorOp) and isinstance(b, TensorOp) and a.dims != b.dims:
        raise ShapeMismatch(f"dims mismatch: {a.dims} vs {b.dims}")
    if da.shape != db.shape:
        raise ShapeMismatch(f"shape mismatch: {da.shape} vs {db.shape}")
    return Residual(float(np.linalg.norm(da - db) / max(1.0, np.linalg.norm(db))))


def identity_residual(lhs_terms, rhs_terms, keep: int | None = None) -> float:
    """Componentwise backward-error residual of sum(prod(lhs)) = sum(prod(rhs)).

    Each term is a sequence of TensorOps multiplied left to right.  Entries of
    Fock-space operators grow like |q|^{-3n} across levels, so products cancel
    catastrophically in absolute terms; the meaningful check normalizes
    |LHS - RHS| entrywise by the matmul of the factors' absolute values (the
    scale at which any floating evaluation carries information).  An algebraic
    mistake still surfaces as an O(1) violation.  `keep` trims the Fock slot
    (slot 0) before comparing, cutting truncation-defect rows.
    """

    def term_value(factors):
        val = factors[0].data
        mag = np.abs(factors[0].data)
        for f in factors[1:]:
            val = val @ f.data
            mag = mag @ np.abs(f.data)
        return val, mag

    dims = lhs_terms[0][0].dims
    side = lhs_terms[0][0].side
    lhs = np.zeros((side, side), dtype=complex)
    rhs = np.zeros_like(lhs)
    scale = np.zeros((side, side), dtype=float)
    for term in lhs_terms:
        v, m = term_value(term)
        lhs += v
        scale += m
    for term in rhs_terms:
        v, m = term_value(term)
        rhs += v
        scale += m
    diff = TensorOp(lhs - rhs, dims)
    sc = TensorOp(scale.astype(complex), dims)
    if keep is not None:
        diff = trim_fock(diff, keep)
        sc = trim_fock(sc, keep)
    return float(np.max(np.abs(diff.data) / np.maximum(1.0, np.abs(sc.data))))


def trim_fock(a: TensorOp, keep: int) -> TensorOp:
    """Restrict slot 0 (the Fock slot by convention) to its first `keep` levels.

    Truncation breaks one oscillator relation on the top level; identity
    checks compare on the trimmed block only.
    """
    n = a.dims[0]
    if keep > n or keep < 1:
        raise ShapeMismatch(f"cannot keep {keep} of {n} levels")
    rest = int(np.prod(a.dims[1:], dtype=np.int64)) if len(a.dims) > 1 else 1
    block = a.data.reshape(n, rest, n, rest)[:keep, :, :keep, :]
    return TensorOp(block.reshape(keep * rest, keep * rest), (keep,) + a.dims[1:])


def dump_tensor(op: TensorOp, fh: IO[str]):
    """Plain-text dump: `dims d0 d1 ...` header, then `row col re im` per nonzero."""
    fh.write("dims " + " ".join(str(d) for d in op.dims) + "\n")
    rows, cols = np.nonzero(op.data)
    for r, c in zip(rows.tolist(), cols.tolist()):
        v = op.data[r, c]
        fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")


def load_tensor(lines: Iterable[str]) -> TensorOp:
    it = iter(lines)
    header = next(it).split()
    if header[0] != "dims":
        raise ValueError("dump header must start with 'dims'")
    dims = [int(t) for t in header[1:]]
    side = int(np.prod(dims, dtype=np.int64))
    data = np.zeros((side, side), dtype=complex)
    for line in it:
        line = line.strip()
        if not line:
            continue
        r, c, re, im = line.split()
        data[int(r), int(c)] = float(re) + 1j * float(im)
    return TensorOp(data, dims)
