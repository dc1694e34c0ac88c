"""R-matrices, L-operators and the Lax-level identity registry.

All operators are finite matrices: the 4x4 six-vertex R-matrices and the
2x2-block L-operators over a truncated Fock space (dims [N, 2], Fock slot
first).  Spectral-parameter shifts by fractional powers of q are integer
powers of the base p (q = p^s), e.g. the dual-reflection shift q^{4/s} = p^4.
"""

from __future__ import annotations

import numpy as np

from .core import Params
from .errors import ShapeMismatch, UnknownIdentity
from .fock import FockRep, build_fock, t_apply
from .tensor import (
    TensorOp,
    embed,
    identity_op,
    identity_residual,
    kron,
    rel_residual,
    slot_transpose,
)

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = np.array([[0, 0], [1, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)
FLIP = E12 + E21
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)

L_KINDS = ("L", "Lbar", "Lcheck", "Lcheckbar")


def r_matrix(x: complex, params: Params) -> TensorOp:
    """Six-vertex R(x) on C^2 (x) C^2."""
    q, lam, s = params.q, params.lam, params.s
    xs = x**s
    d = q - xs / q
    m = 1.0 - xs
    data = np.array(
        [
            [d, 0, 0, 0],
            [0, m, lam * x**params.s1, 0],
            [0, lam * x**params.s0, m, 0],
            [0, 0, 0, d],
        ],
        dtype=complex,
    )
    return TensorOp(data, (2, 2))


def rbar_matrix(x: complex, params: Params) -> TensorOp:
    """Companion R-bar(x); equals R(1/x) with the gradation swapped."""
    q, lam, s = params.q, params.lam, params.s
    xs = x ** (-s)
    d = q - xs / q
    m = 1.0 - xs
    data = np.array(
        [
            [d, 0, 0, 0],
            [0, m, lam * x**-params.s0, 0],
            [0, lam * x**-params.s1, m, 0],
            [0, 0, 0, d],
        ],
        dtype=complex,
    )
    return TensorOp(data, (2, 2))


def g_matrix(params: Params) -> TensorOp:
    """Diagonal twist g = diag(q^{(s0-s1)/s}, q^{-(s0-s1)/s}) = diag(p^{s0-s1}, p^{s1-s0})."""
    w = params.p ** (params.s0 - params.s1)
    return TensorOp(np.diag([w, 1.0 / w]), (2,))


def l_operator(kind: str, flavor: int, x: complex, rep: FockRep, params: Params) -> TensorOp:
    """One of the eight Fock x C^2 L-operators, dims [N, 2]."""
    if kind not in L_KINDS:
        raise UnknownIdentity(f"unknown L-operator kind {kind!r}")
    if rep.flavor != flavor:
        raise ShapeMismatch(f"rep flavor {rep.flavor} does not match requested {flavor}")
    q, lam = params.q, params.lam
    s0, s1, s = params.s0, params.s1, params.s
    hp = np.diag(rep.qh_vec(0.5))
    hm = np.diag(rep.qh_vec(-0.5))
    e_up = rep.e @ hp
    f_dn = rep.f @ hm
    xs = x**s if kind in ("L", "Lcheck") else x**-s
    xa = x**s0 if kind in ("L", "Lcheck") else x**-s1   # coefficient of the f block
    xb = x**s1 if kind in ("L", "Lcheck") else x**-s0   # coefficient of the e block
    b12 = lam * xa * f_dn
    b21 = lam * xb * e_up
    if flavor == 1:
        if kind in ("L", "Lbar"):
            b11 = hp
            b22 = hm - (xs / q) * hp
        else:
            b11 = hp - (xs / q) * hm
            b22 = -(xs / q) * hp
    else:
        if kind in ("L", "Lbar"):
            b11 = hp - (xs / q) * hm
            b22 = hm
        else:
            b11 = -(xs / q) * hm
            b22 = hm - (xs / q) * hp
    data = np.kron(b11, E11) + np.kron(b12, E12) + np.kron(b21, E21) + np.kron(b22, E22)
    return TensorOp(data, (rep.n, 2))


def sigma_map(a: TensorOp, slot: int) -> TensorOp:
    """Diagram automorphism on a 2-dim slot: conjugation by the flip matrix."""
    if a.dims[slot] != 2:
        raise ShapeMismatch(f"sigma_map needs a 2-dim slot, got {a.dims[slot]}")
    fl = embed(TensorOp(FLIP, (2,)), [slot], a.dims)
    return fl @ a @ fl


def zeta_params(params: Params) -> Params:
    return params.zeta()


# ---------------------------------------------------------------------------
# identity registry
# ---------------------------------------------------------------------------

def _scalar_id(value: complex, dims) -> TensorOp:
    return complex(value) * identity_op(dims)


def _llcb(flavor, x, rep, params, keep):
    lop = l_operator("L", flavor, x, rep, params)
    lcb = l_operator("Lcheckbar", flavor, x, rep, params)
    c = _scalar_id(1.0 - x**-params.s / params.q, lop.dims)
    return [
        identity_residual([[lop, lcb]], [[c]], keep),
        identity_residual([[lcb, lop]], [[c]], keep),
    ]


def _lclb(flavor, x, rep, params, keep):
    lc = l_operator("Lcheck", flavor, x, rep, params)
    lb = l_operator("Lbar", flavor, x, rep, params)
    c = _scalar_id(1.0 - x**params.s / params.q, lc.dims)
    return [
        identity_residual([[lc, lb]], [[c]], keep),
        identity_residual([[lb, lc]], [[c]], keep),
    ]


def _twisted_pair(kind_shift, kind_plain, scalar, flavor, x, rep, params, keep):
    """g2 A(x p^4)^{t2} g2^{-1} B(x)^{t2} = scalar, both orders."""
    p4 = params.p**4
    g2 = kron(identity_op((rep.n,)), g_matrix(params))
    g2i = TensorOp(np.linalg.inv(g2.data), g2.dims)
    a = slot_transpose(l_operator(kind_shift, flavor, x * p4, rep, params), 1)
    b = slot_transpose(l_operator(kind_plain, flavor, x, rep, params), 1)
    c = _scalar_id(scalar, a.dims)
    return [
        identity_residual([[g2, a, g2i, b]], [[c]], keep),
        identity_residual([[b, g2, a, g2i]], [[c]], keep),
    ]


def _lcbls(flavor, x, rep, params, keep):
    q, s = params.q, params.s
    return _twisted_pair("L", "Lcheckbar", q**2 - x**-s / q, flavor, x, rep, params, keep)


def _lblcs(flavor, x, rep, params, keep):
    q, s = params.q, params.s
    return _twisted_pair("Lcheck", "Lbar", q**2 - q**3 * x**s, flavor, x, rep, params, keep)


def _tt(flavor, x, rep, params, keep):
    pairs = [("L", "Lbar"), ("Lbar", "L"), ("Lcheck", "Lcheckbar"), ("Lcheckbar", "Lcheck")]
    out = []
    for a, b in pairs:
        lhs = slot_transpose(t_apply(l_operator(a, flavor, x, rep, params), rep), 1)
        rhs = l_operator(b, flavor, 1.0 / x, rep, params)
        out.append(identity_residual([[lhs]], [[rhs]], keep))
    return out


def _l2l1(flavor, x, rep, params, keep):
    """Flavor-2 operators are the zeta o (1 (x) sigma) images of flavor-1."""
    if flavor != 2:
        return [0.0]
    zp = params.zeta()
    rep1z = build_fock(1, rep.n, zp)
    out = []
    for kind in L_KINDS:
        direct = l_operator(kind, 2, x, rep, params)
        image = sigma_map(l_operator(kind, 1, x, rep1z, zp), 1)
        out.append(identity_residual([[direct]], [[image]], keep))
    return out


def _rll(variant, flavor, xyz, rep, params, keep):
    """Evaluated Yang-Baxter relations on Fock (x) C^2 (x) C^2."""
    x, y, z = xyz
    dims = (rep.n, 2, 2)
    l12 = lambda kind, arg: embed(l_operator(kind, flavor, arg, rep, params), [0, 1], dims)
    l13 = lambda kind, arg: embed(l_operator(kind, flavor, arg, rep, params), [0, 2], dims)
    r23 = embed(r_matrix(y / z, params), [1, 2], dims)
    rb23 = embed(rbar_matrix(y / z, params), [1, 2], dims)
    if variant == 1:
        lhs = [l12("L", x / y), l13("L", x / z), r23]
        rhs = [r23, l13("L", x / z), l12("L", x / y)]
    elif variant == 2:
        lhs = [r23, l12("Lbar", x / y), l13("Lbar", x / z)]
        rhs = [l13("Lbar", x / z), l12("Lbar", x / y), r23]
    elif variant == 3:
        lhs = [l13("L", x / z), l12("L", x / y), rb23]
        rhs = [rb23, l12("L", x / y), l13("L", x / z)]
    elif variant == 4:
        lhs = [rb23, l13("Lbar", x / z), l12("Lbar", x / y)]
        rhs = [l12("Lbar", x / y), l13("Lbar", x / z), rb23]
    else:
        raise UnknownIdentity(f"RLL variant {variant}")
    return [identity_residual([lhs], [rhs], keep)]


def _runitarity(x, params):
    r = r_matrix(x, params)
    rb = rbar_matrix(x, params)
    q, s = params.q, params.s
    c = _scalar_id(q**2 + q**-2 - x**s - x**-s, (2, 2))
    return [
        rel_residual(r @ rb, c).value,
        rel_residual(rb @ r, c).value,
    ]


def _rbar_from_r(x, params):
    img = r_matrix(1.0 / x, params.zeta())
    return [rel_residual(rbar_matrix(x, params), img).value]


def check_lax_identity(name: str, params: Params, samples: list[complex],
                       cutoff: int = 32, trim: int = 4) -> list[float]:
    """Residuals of one registry identity over the given spectral samples.

    Identities touching the Fock space run at the given cutoff and are
    compared on levels 0..cutoff-trim-1 for both flavors.
    """
    keep = cutoff - trim
    res: list[float] = []
    if name == "runitarity":
        for x in samples:
            res += _runitarity(x, params)
        return res
    if name == "rbar_from_r":
        for x in samples:
            res += _rbar_from_r(x, params)
        return res
    reps = {fl: build_fock(fl, cutoff, params) for fl in (1, 2)}
    simple = {"LLcb": _llcb, "LcLb": _lclb, "LcbLs": _lcbls, "LbLcs": _lblcs,
              "tt": _tt, "L2L1": _l2l1}
    if name in simple:
        fn = simple[name]
        for fl in (1, 2):
            for x in samples:
                res += fn(fl, x, reps[fl], params, keep)
        return res
    if name.startswith("RLL"):
        variant = int(name[3:])
        pool = list(samples) * 3 if len(samples) < 3 else list(samples)
        triples = [tuple(pool[(j + i) % len(pool)] for i in (0, 1, 2)) for j in range(len(samples))]
        for fl in (1, 2):
            for xyz in triples:
                res += _rll(variant, fl, xyz, reps[fl], params, keep)
        return res
    raise UnknownIdentity(f"lax identity {name!r} not in registry")


LAX_IDENTITIES = ("LLcb", "LcLb", "LcbLs", "LbLcs", "tt", "L2L1",
                  "RLL1", "RLL2", "RLL3", "RLL4", "runitarity", "rbar_from_r")
