"""Global parameter bundle and scalar q-special functions.

Every fractional power of q that appears downstream (q^{1/s}, q^{4/s}, ...)
is an integer power of the fundamental base p, with q = p^s.  All functions
here are pure: same inputs give bit-identical outputs.
"""

from __future__ import annotations

import cmath
import hashlib
import math
import zlib
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateQ, PoleHit, SeriesNotConverged

_TERM_TOL = 1e-16
_POCH_TAIL = 1e-18


@dataclass(frozen=True)
class Params:
    """Parameter point: base p (q = p^s), gradation, boundary scalars, tolerances."""

    p: complex = 0.62 + 0.21j
    s0: int = 1
    s1: int = 1
    eps_plus: complex = 1.0
    eps_minus: complex = 0.3 + 0.1j
    epsbar_plus: complex = 1.0
    epsbar_minus: complex = 0.2 - 0.05j
    tol_exact: float = 1e-10
    tol_trace: float = 1e-8
    series_cap: int = 4000
    rng_seed: int = 2021
    sample_count: int = 5
    allow_general_gradation: bool = False

    def __post_init__(self):
        if not self.allow_general_gradation:
            if self.s0 < 0 or self.s1 < 0:
                raise ValueError("s0, s1 must be nonnegative (set allow_general_gradation to lift)")
        if self.s < 1:
            raise ValueError("s = s0 + s1 must be >= 1")
        q = self.p ** self.s
        if not (0.0 < abs(q) < 1.0):
            raise ValueError(f"|q| must lie in (0, 1); got |q| = {abs(q):.6g}")
        if self.eps_plus * self.eps_minus * self.epsbar_plus * self.epsbar_minus == 0:
            raise ValueError("boundary scalars eps_pm, epsbar_pm must all be nonzero")
        if self.series_cap < 16:
            raise ValueError("series_cap too small")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")

    @property
    def s(self) -> int:
        return self.s0 + self.s1

    @property
    def q(self) -> complex:
        return self.p ** self.s

    @property
    def lam(self) -> complex:
        q = self.q
        return q - 1.0 / q

    def zeta(self) -> "Params":
        """Parameter swap s0<->s1, eps+<->eps-, epsbar+<->epsbar-."""
        return replace(
            self,
            s0=self.s1,
            s1=self.s0,
            eps_plus=self.eps_minus,
            eps_minus=self.eps_plus,
            epsbar_plus=self.epsbar_minus,
            epsbar_minus=self.epsbar_plus,
        )

    def digest(self, extra: str = "") -> str:
        blob = "|".join(
            repr(v)
            for v in (
                self.p, self.s0, self.s1, self.eps_plus, self.eps_minus,
                self.epsbar_plus, self.epsbar_minus, self.tol_exact,
                self.tol_trace, self.series_cap, self.rng_seed,
                self.sample_count, extra,
            )
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


DEFAULT_PARAMS = Params()


@dataclass(frozen=True)
class Residual:
    """Frobenius-norm relative residual ||A - B|| / max(1, ||B||)."""

    value: float

    def __post_init__(self):
        if not (self.value >= 0.0):
            raise ValueError("residual must be nonnegative")


def _check_lam(params: Params):
    if abs(params.lam) < 1e-14:
        raise DegenerateQ("q - 1/q is numerically zero")


def q_bracket(x: complex, params: Params) -> complex:
    """[x]_q = (q^x - q^-x) / (q - q^-1), principal branch for complex x."""
    _check_lam(params)
    lq = cmath.log(params.q)
    return (cmath.exp(x * lq) - cmath.exp(-x * lq)) / params.lam


def q_pochhammer(a: complex, n, params: Params, base: complex | None = None) -> complex:
    """(a; b)_n = prod_{j<n} (1 - a b^j); n = math.inf truncates at |a b^j| < 1e-18."""
    b = params.q if base is None else base
    if n is not math.inf and n != float("inf"):
        n = int(n)
        if n < 0:
            raise ValueError("q-Pochhammer order must be nonnegative or inf")
        out = 1.0 + 0.0j
        f = complex(a)
        for _ in range(n):
            out *= 1.0 - f
            f *= b
        return out
    if abs(b) >= 1.0:
        raise SeriesNotConverged("infinite q-Pochhammer needs |base| < 1")
    out = 1.0 + 0.0j
    f = complex(a)
    for _ in range(params.series_cap):
        if abs(f) < _POCH_TAIL:
            return out
        out *= 1.0 - f
        f *= b
    raise SeriesNotConverged("q-Pochhammer tail did not fall below 1e-18")


def q_exp_series(z: complex, base: complex, params: Params) -> complex:
    """Truncated defining series of exp_base(z); oracle-grade, small |z| only."""
    if abs(1.0 - base) < 1e-14:
        raise DegenerateQ("q-exponential base too close to 1")
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    bk = base
    for _ in range(1, params.series_cap + 1):
        term *= z * (1.0 - base) / (1.0 - bk)
        total += term
        if abs(term) < _TERM_TOL * max(1.0, abs(total)):
            return total
        bk *= base
    raise SeriesNotConverged("q-exponential series hit the term cap")


def q_exp(z: complex, base: complex, params: Params, inverse: bool = False,
          check: bool = False) -> complex:
    """exp_base(z) via the two-branch infinite product; inverse gives exp_{1/base}(-z).

    |base| < 1 uses ((1-base) z; base)_inf^{-1}; |base| > 1 uses
    ((base^{-1}-1) z; base^{-1})_inf.  `check` cross-verifies against the
    truncated series when z is safely inside the series' disc.
    """
    if inverse:
        return q_exp(-z, 1.0 / base, params, inverse=False, check=check)
    ab = abs(base)
    if abs(ab - 1.0) < 1e-12:
        raise SeriesNotConverged("neither product branch applies: |base| = 1")
    if ab < 1.0:
        val = 1.0 / _poch_product((1.0 - base) * z, base, params)
    else:
        ib = 1.0 / base
        val = _poch_product((ib - 1.0) * z, ib, params)
    if check and abs(z * (1.0 - base)) < 0.75:
        ref = q_exp_series(z, base, params)
        if abs(val - ref) > 1e-11 * max(1.0, abs(ref)):
            raise SeriesNotConverged(
                f"product/series cross-check failed: {val} vs {ref}")
    return val


def _poch_product(a: complex, b: complex, params: Params) -> complex:
    """(a; b)_inf with a pole guard on each factor."""
    out = 1.0 + 0.0j
    f = complex(a)
    for _ in range(params.series_cap):
        if abs(f) < _POCH_TAIL:
            return out
        factor = 1.0 - f
        if abs(factor) < 1e-12:
            raise PoleHit(f"q-exponential product factor vanishes (|1-a b^j| = {abs(factor):.2e})")
        out *= factor
        f *= b
    raise SeriesNotConverged("q-exponential product did not converge")


def phi_series(z: complex, params: Params) -> complex:
    """Phi(z) = sum_{k>=1} z^k / (k (q^k + q^-k)); terms decay like (z q)^k."""
    q = params.q
    if abs(z * q) >= 1.0 - 1e-12:
        raise SeriesNotConverged(f"Phi series diverges at |z q| = {abs(z * q):.6g}")
    total = 0.0 + 0.0j
    zk = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    for k in range(1, params.series_cap + 1):
        zk *= z
        qk *= q
        term = zk / (k * (qk + 1.0 / qk))
        total += term
        if abs(term) < _TERM_TOL * max(1.0, abs(total)):
            return total
    raise SeriesNotConverged("Phi series hit the term cap")


def lambda_series(z: complex, params: Params) -> complex:
    """Lambda(z) = sum_k (q^2k + q^-2k) / (k (q^k + q^-k)) z^k, radius |q|.

    Only valid well inside |z| < |q|; norm_functions uses the log-split form
    instead, which reaches |z| < 1/|q|.
    """
    q = params.q
    if abs(z) >= abs(q) - 1e-12:
        raise SeriesNotConverged(f"Lambda series diverges at |z| = {abs(z):.6g}, radius |q| = {abs(q):.6g}")
    total = 0.0 + 0.0j
    zk = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    for k in range(1, params.series_cap + 1):
        zk *= z
        qk *= q
        q2k = qk * qk
        term = (q2k + 1.0 / q2k) / (k * (qk + 1.0 / qk)) * zk
        total += term
        if abs(term) < _TERM_TOL * max(1.0, abs(total)):
            return total
    raise SeriesNotConverged("Lambda series hit the term cap")


@dataclass(frozen=True)
class NormFunctions:
    phi: complex
    phi1: complex
    phi1_check: complex


def norm_functions(x: complex, params: Params) -> NormFunctions:
    """Normalization scalars phi(x), phi1(x), phi1_check(x).

    phi(x) = exp(-Lambda(x^s / q)) is evaluated through the identity
    Lambda(z) = -log(1-qz) - log(1-z/q) - 2 Phi(z), which extends the domain
    from |x^s| < |q|^2 (raw series) to |x^s| < 1.
    """
    q = params.q
    xs = x ** params.s
    if abs(xs) >= 1.0 - 1e-12:
        raise SeriesNotConverged(f"phi requires |x^s| < 1; got {abs(xs):.6g}")
    z = xs / q
    phi = (1.0 - q * z) * (1.0 - z / q) * cmath.exp(2.0 * phi_series(z, params))
    phi1 = cmath.exp(-phi_series(xs, params))
    phi1_check = (-q ** -1 * x ** -params.s) * cmath.exp(-phi_series(xs * q * q, params))
    return NormFunctions(phi=phi, phi1=phi1, phi1_check=phi1_check)


def seeded_rng(params: Params, key: str) -> np.random.Generator:
    """Deterministic generator derived from the global seed and a string key."""
    return np.random.default_rng([params.rng_seed, zlib.crc32(key.encode())])


def spectral_samples(params: Params, count: int, key: str,
                     pole_checks=(), rmin: float = 0.8, rmax: float = 1.25) -> list[complex]:
    """Seeded random spectral points with |x| in [rmin, rmax].

    Candidates failing any pole_check callback (predicate: x -> bool, True
    means reject) are redrawn; identities rational in x are certified with
    overwhelming probability by agreement at such points.
    """
    rng = seeded_rng(params, key)
    out: list[complex] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise PoleHit("could not find pole-free spectral samples")
        r = math.exp(rng.uniform(math.log(rmin), math.log(rmax)))
        th = rng.uniform(0.0, 2.0 * math.pi)
        x = r * cmath.exp(1j * th)
        if any(chk(x) for chk in pole_checks):
            continue
        out.append(x)
    return out


def sample_pair_list(params: Params, count: int, key: str, pole_checks=()) -> list[tuple[complex, complex]]:
    xs = spectral_samples(params, 2 * count, key, pole_checks)
    return list(zip(xs[:count], xs[count:]))
