"""Vectorized double-double complex arithmetic (~31 significant digits).

The Fock-trace assembly of Q-operators cancels intermediate terms that grow
like |q|^{-2(L-1)n} at level n, which exhausts float64 already at L = 2.
Double-double (Dekker/Bailey error-free transforms) gives an effective
epsilon of ~5e-32, enough for chains up to L = 3 at the accuracy the trace
tolerances ask for.  Only the operations the monodromy assembly needs are
implemented.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2^27 + 1
EPS_DD = 4.93e-32


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_sum(a, b):
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _add(xh, xl, yh, yl):
    sh, se = _two_sum(xh, yh)
    se = se + (xl + yl)
    return _quick_sum(sh, se)


def _mul(xh, xl, yh, yl):
    ph, pe = _two_prod(xh, yh)
    pe = pe + (xh * yl + xl * yh)
    return _quick_sum(ph, pe)


def _div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = _mul(q1, np.zeros_like(q1), yh, yl)
    rh, rl = _add(xh, xl, -th, -tl)
    q2 = (rh + rl) / yh
    return _quick_sum(q1, q2)


class CDD:
    """Complex double-double array: four float64 component arrays."""

    __slots__ = ("rh", "rl", "ih", "il")

    def __init__(self, rh, rl, ih, il):
        self.rh, self.rl, self.ih, self.il = rh, rl, ih, il

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, shape):
        return cls(*(np.zeros(shape) for _ in range(4)))

    @classmethod
    def from_complex(cls, z):
        z = np.asarray(z, dtype=complex)
        return cls(z.real.astype(float).copy(), np.zeros(z.shape),
                   z.imag.astype(float).copy(), np.zeros(z.shape))

    @classmethod
    def scalar(cls, z):
        return cls.from_complex(np.asarray(complex(z)))

    def to_complex(self):
        return (self.rh + self.rl) + 1j * (self.ih + self.il)

    @property
    def shape(self):
        return np.shape(self.rh)

    def copy(self):
        return CDD(self.rh.copy(), self.rl.copy(), self.ih.copy(), self.il.copy())

    def reshape(self, *shape):
        return CDD(self.rh.reshape(*shape), self.rl.reshape(*shape),
                   self.ih.reshape(*shape), self.il.reshape(*shape))

    def __getitem__(self, idx):
        return CDD(self.rh[idx], self.rl[idx], self.ih[idx], self.il[idx])

    def setslice(self, idx, other: "CDD"):
        self.rh[idx] = other.rh
        self.rl[idx] = other.rl
        self.ih[idx] = other.ih
        self.il[idx] = other.il

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "CDD") -> "CDD":
        rh, rl = _add(self.rh, self.rl, other.rh, other.rl)
        ih, il = _add(self.ih, self.il, other.ih, other.il)
        return CDD(rh, rl, ih, il)

    def __sub__(self, other: "CDD") -> "CDD":
        rh, rl = _add(self.rh, self.rl, -other.rh, -other.rl)
        ih, il = _add(self.ih, self.il, -other.ih, -other.il)
        return CDD(rh, rl, ih, il)

    def __neg__(self) -> "CDD":
        return CDD(-self.rh, -self.rl, -self.ih, -self.il)

    def __mul__(self, other: "CDD") -> "CDD":
        ar, al_, ai, ail = self.rh, self.rl, self.ih, self.il
        br, brl, bi, bil = other.rh, other.rl, other.ih, other.il
        reh, rel_ = _mul(ar, al_, br, brl)
        imh, iml = _mul(ai, ail, bi, bil)
        rh, rl = _add(reh, rel_, -imh, -iml)
        t1h, t1l = _mul(ar, al_, bi, bil)
        t2h, t2l = _mul(ai, ail, br, brl)
        ih, il = _add(t1h, t1l, t2h, t2l)
        return CDD(rh, rl, ih, il)

    def __truediv__(self, other: "CDD") -> "CDD":
        # z / w = z * conj(w) / |w|^2 with dd real arithmetic throughout
        num = self * other.conj()
        dh, dl = _add(*_mul(other.rh, other.rl, other.rh, other.rl),
                      *_mul(other.ih, other.il, other.ih, other.il))
        rh, rl = _div(num.rh, num.rl, dh, dl)
        ih, il = _div(num.ih, num.il, dh, dl)
        return CDD(rh, rl, ih, il)

    def conj(self) -> "CDD":
        return CDD(self.rh, self.rl, -self.ih, -self.il)

    def abs2(self) -> np.ndarray:
        return self.rh * self.rh + self.ih * self.ih

    def power(self, k: int) -> "CDD":
        """Integer power by binary exponentiation."""
        if k == 0:
            return CDD.from_complex(np.ones(self.shape, dtype=complex))
        inv = k < 0
        k = abs(k)
        base = self
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            base = base * base
            k >>= 1
        if inv:
            one = CDD.from_complex(np.ones(out.shape, dtype=complex))
            out = one / out
        return out

    def sum(self, axis=None) -> "CDD":
        """Sum via sequential compensated accumulation along the axis."""
        if axis is None:
            flat = self.reshape(-1)
            acc = CDD.scalar(0.0)
            for i in range(flat.shape[0]):
                acc = acc + flat[i]
            return acc
        n = self.shape[axis]
        idx0 = [slice(None)] * len(self.shape)
        idx0[axis] = 0
        acc = self[tuple(idx0)].copy()
        for i in range(1, n):
            idx0[axis] = i
            acc = acc + self[tuple(idx0)]
        return acc


def cumprod_dd(factor: CDD, n: int, start: CDD | None = None) -> CDD:
    """[s, s*f, s*f^2, ..., s*f^{n-1}] for scalar dd inputs."""
    out = CDD.zeros((n,))
    acc = CDD.scalar(1.0) if start is None else start
    for i in range(n):
        out.setslice(i, acc)
        acc = acc * factor
    return out


def geometric_dd(base: CDD, n: int) -> CDD:
    """[1, base, base^2, ..., base^{n-1}] as a dd vector."""
    return cumprod_dd(base, n)
