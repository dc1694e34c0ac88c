"""Truncated Fock representations of the two q-oscillator algebras.

Flavor 1 acts on levels n = 0..N-1 with h-eigenvalue -2n, lowering operator
e (e|0> = 0) and raising operator f with unit matrix elements; all the
q-dependence sits in e.  Flavor 2 is realized inside the same space via
e2 = f1, f2 = e1, h2 = -h1.  Truncation sends the top state out of the
space to zero, which breaks exactly one defining relation on level N-1
(e f for flavor 1, f e for flavor 2); consumers trim top levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Params
from .errors import DegenerateQ, NoSolution, PoleHit, ShapeMismatch
from .tensor import TensorOp


@dataclass(frozen=True)
class FockRep:
    flavor: int
    n: int                      # cutoff: levels 0..n-1
    e: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    levels: np.ndarray = field(repr=False)   # h-eigenvalue per basis state
    params: Params = field(repr=False)

    def qh(self, xi: complex) -> np.ndarray:
        """Matrix of q^{xi h} (diagonal, principal branch for non-integer xi)."""
        return np.diag(np.power(self.params.q, xi * self.levels))

    def qh_vec(self, xi: complex) -> np.ndarray:
        return np.power(self.params.q, xi * self.levels)


def osc_weights(n: int, params: Params) -> np.ndarray:
    """a_m = q (1 - q^{-2m}) / lam^2 for m = 0..n-1 (e|m> = a_m |m-1>)."""
    q, lam = params.q, params.lam
    m = np.arange(n)
    return q * (1.0 - q ** (-2.0 * m)) / lam**2


def build_fock(flavor: int, n: int, params: Params) -> FockRep:
    if n < 2:
        raise ValueError("Fock cutoff must be >= 2")
    if abs(params.lam) < 1e-14:
        raise DegenerateQ("q - 1/q is numerically zero")
    a = osc_weights(n, params)
    e1 = np.diag(a[1:], k=1)          # e1[m-1, m] = a_m
    f1 = np.eye(n, k=-1, dtype=complex)   # f1[m+1, m] = 1
    if flavor == 1:
        return FockRep(1, n, e1, f1, -2.0 * np.arange(n), params)
    if flavor == 2:
        return FockRep(2, n, f1.copy(), e1.copy(), 2.0 * np.arange(n), params)
    raise ValueError(f"flavor must be 1 or 2, got {flavor}")


def cartan_diag(rep: FockRep, fn, of: str = "level") -> TensorOp:
    """diag(fn(.)) over basis states; fn sees the h-eigenvalue or q^h per `of`."""
    if of == "level":
        args = rep.levels
    elif of == "qh":
        args = np.power(rep.params.q, rep.levels)
    else:
        raise ValueError("of must be 'level' or 'qh'")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.array([complex(fn(a)) for a in args])
    if not np.all(np.isfinite(vals)):
        raise PoleHit("Cartan function overflows or hits a pole at some level")
    return TensorOp(np.diag(vals), (rep.n,))


def _t_ratio_steps(rep: FockRep) -> np.ndarray:
    """r_m = d_{m+1}/d_m for the transposition conjugator diag(d).

    Solved from D^{-1} e^T D = q^{-h-1} f on the off-diagonal of e; the f^T
    relation yields the same recursion, which t_conjugator cross-checks.
    """
    q = rep.params.q
    n = rep.n
    target = (q ** (-1 - rep.levels))[:, None] * rep.f   # q^{-h-1} f as a matrix
    steps = np.zeros(n - 1, dtype=complex)
    for m in range(n - 1):
        if rep.e[m, m + 1] != 0:
            denom = target[m + 1, m]
            if denom == 0:
                raise NoSolution("transposition solve hit a zero target entry")
            steps[m] = rep.e[m, m + 1] / denom
        else:
            # flavor 2: e is lower-triangular; use the transposed relation
            num = target[m, m + 1]
            if rep.e[m + 1, m] == 0:
                raise NoSolution("oscillator matrices have no off-diagonal to solve on")
            steps[m] = num / rep.e[m + 1, m]
    return steps


def t_conjugator(rep: FockRep) -> np.ndarray:
    """Diagonal d with X^t = D^{-1} X^T D realizing the oscillator anti-involution.

    Entries grow like |q|^{-m^2}; beyond roughly level 25 at the default
    parameter point they overflow.  Use t_apply for band-limited operators,
    which only ever forms nearby-level ratios.
    """
    steps = _t_ratio_steps(rep)
    d = np.concatenate([[1.0 + 0.0j], np.cumprod(steps)])
    # consistency: the f^T relation must reproduce the same conjugator
    q = rep.params.q
    lhs = rep.f.T  # want D^{-1} f^T D = e q^{h+1}
    rhs = rep.e @ np.diag(q ** (rep.levels + 1))
    finite = np.isfinite(d)
    for m in range(rep.n - 1):
        if not (finite[m] and finite[m + 1]):
            break
        got = d[m + 1] / d[m] * lhs[m, m + 1] if lhs[m, m + 1] != 0 else d[m] / d[m + 1] * lhs[m + 1, m]
        want = rhs[m, m + 1] if lhs[m, m + 1] != 0 else rhs[m + 1, m]
        if abs(got - want) > 1e-9 * max(1.0, abs(want)):
            raise NoSolution(f"t-conjugator recursions disagree at level {m}")
    return d


def t_apply(op: TensorOp, rep: FockRep, slot: int = 0) -> TensorOp:
    """Anti-involution t on the Fock slot: partial transpose + D-conjugation.

    Implemented through ratios d_n/d_m = exp(L_n - L_m) evaluated only on
    nonzero entries, so band-limited operators never touch the overflowing
    far corners of D.
    """
    if op.dims[slot] != rep.n:
        raise ShapeMismatch(f"slot {slot} dim {op.dims[slot]} != Fock cutoff {rep.n}")
    steps = _t_ratio_steps(rep)
    logd = np.concatenate([[0.0 + 0.0j], np.cumsum(np.log(steps))])
    m = len(op.dims)
    tensor = op.data.reshape(op.dims + op.dims)
    tensor = np.swapaxes(tensor, slot, m + slot).copy()
    # scale entry (.., row n_r .., .., col n_c ..) by exp(logd[n_c] - logd[n_r])
    shape_r = [1] * (2 * m)
    shape_r[slot] = rep.n
    shape_c = [1] * (2 * m)
    shape_c[m + slot] = rep.n
    mask = tensor != 0
    expo = (-logd.reshape(shape_r)) + logd.reshape(shape_c)
    expo = np.broadcast_to(expo, tensor.shape)
    tensor[mask] = tensor[mask] * np.exp(expo[mask])
    return TensorOp(tensor.reshape(op.side, op.side), op.dims)


def relation_residuals(rep: FockRep, trim: int = 1) -> dict[str, float]:
    """Max defect of the defining relations on levels 0..n-1-trim."""
    q, lam = rep.params.q, rep.params.lam
    n, keep = rep.n, rep.n - trim
    qh = np.power(q, rep.levels)
    sign = 1.0 if rep.flavor == 1 else -1.0
    fe = rep.f @ rep.e
    ef = rep.e @ rep.f
    # flavor 1: fe = q(1-q^h)/lam^2, ef = q(1-q^{h-2})/lam^2
    # flavor 2: fe = q(1-q^{-h-2})/lam^2, ef = q(1-q^{-h})/lam^2
    if rep.flavor == 1:
        fe_want = q * (1.0 - qh) / lam**2
        ef_want = q * (1.0 - qh * q**-2) / lam**2
    else:
        fe_want = q * (1.0 - q ** (-rep.levels - 2)) / lam**2
        ef_want = q * (1.0 - q ** (-rep.levels)) / lam**2
    com_want = sign * np.power(q, sign * rep.levels) / lam

    def rel(got, want):
        return float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want))))

    out = {
        "fe": rel(np.diag(fe)[:keep], fe_want[:keep]),
        "ef": rel(np.diag(ef)[:keep], ef_want[:keep]),
        "commutator": rel(np.diag(ef - fe)[:keep], com_want[:keep]),
    }
    # Cartan shifts q^{xi h} e q^{-xi h} = q^{2 xi} e at xi = 1/2
    half = np.diag(rep.qh_vec(0.5))
    half_inv = np.diag(rep.qh_vec(-0.5))
    out["cartan_e"] = rel((half @ rep.e @ half_inv)[:keep, :keep], (q * rep.e)[:keep, :keep])
    out["cartan_f"] = rel((half @ rep.f @ half_inv)[:keep, :keep], (rep.f / q)[:keep, :keep])
    return out
