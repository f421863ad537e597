"""Concurrence estimators that need only local data or a few invariants.

Each estimator targets a specific family of low-rank states:

* pure states, where sqrt(1 - I1) is exact;
* the canonical rank-2 family, whose five parameters are recoverable from
  the two local polarization vectors alone;
* rank-2 mixtures of a separable pair with a pure state, where
  max(sqrt(1 - I1), sqrt(1 - I2)) is evaluated as a candidate formula and
  checked against the oracle by the validation harness;
* rank-2 mixtures of a product basis state with an orthogonal pure state,
  including the equal-weight two-dimensional projections and the ladder
  line, where closed forms are exact;
* X-shaped states with inner coherence, with both the direct closed form
  and an invariant-only expression that the harness grades empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    I1Zero,
    InvalidPurity,
    NotPure,
    ReconstructionDegenerate,
)
from .invariants import InvariantVector, purity_residuals
from .qstate import BlochDecomposition, DensityOperator, decompose

PURITY_RESIDUAL_TOL = 1e-6
DEGENERACY_TOL = 1e-8
RADICAND_TOL = 1e-10
WEIGHT_TOL = 1e-10

_TWO_PI = 2.0 * math.pi


def _guard_radicand(x: float, tol: float = RADICAND_TOL) -> float:
    """Clamp a slightly negative radicand to zero; reject a clearly negative one."""
    if x < -tol:
        raise DomainError(f"radicand {x} is negative beyond tolerance {tol}")
    return max(x, 0.0)


def estimate_pure(bloch: BlochDecomposition) -> float:
    """Concurrence of a pure state from its polarization alone: sqrt(1 - |p|^2).

    Raises NotPure when the purity residuals exceed 1e-6.
    """
    r1, r2 = purity_residuals(bloch)
    if max(abs(r1), abs(r2)) > PURITY_RESIDUAL_TOL:
        raise NotPure(f"purity residuals ({r1}, {r2}) exceed {PURITY_RESIDUAL_TOL}")
    i1 = float(bloch.p @ bloch.p)
    return math.sqrt(_guard_radicand(1.0 - i1))


# ---------------------------------------------------------------------------
# canonical rank-2 family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rank2Canonical:
    """Canonical parameters of a rank-2 state in its eigenbasis.

    nu is the weight of the Schmidt-form eigenvector
    cos(alpha)|00> + sin(alpha)|11>; the orthogonal eigenvector mixes the
    Schmidt plane (angle eta) with the |01>, |10> plane (angle beta, relative
    phase gamma).
    """

    nu: float
    alpha: float
    beta: float
    gamma: float
    eta: float

    def __post_init__(self):
        if not -1e-12 <= self.nu <= 1.0 + 1e-12:
            raise ValueError("nu must lie in [0, 1]")
        half_pi = math.pi / 2.0
        for name in ("alpha", "beta", "eta"):
            v = getattr(self, name)
            if not -1e-12 <= v <= half_pi + 1e-12:
                raise ValueError(f"{name} must lie in [0, pi/2]")
        if not -1e-12 <= self.gamma <= _TWO_PI + 1e-12:
            raise ValueError("gamma must lie in [0, 2 pi)")


def canonical_vectors_rank2(params: Rank2Canonical) -> tuple[np.ndarray, np.ndarray]:
    """The two orthonormal eigenvectors selected by the canonical parameters."""
    ca, sa = math.cos(params.alpha), math.sin(params.alpha)
    cb, sb = math.cos(params.beta), math.sin(params.beta)
    ce, se = math.cos(params.eta), math.sin(params.eta)
    chi = np.array([ca, 0.0, 0.0, sa], dtype=complex)
    chi_perp = np.array(
        [
            ce * sa,
            se * sb * np.exp(-1j * params.gamma),
            se * cb,
            -ce * ca,
        ],
        dtype=complex,
    )
    return chi, chi_perp


def assemble_rank2(params: Rank2Canonical) -> DensityOperator:
    """Density operator nu |chi><chi| + (1 - nu) |chi_perp><chi_perp|."""
    chi, chi_perp = canonical_vectors_rank2(params)
    m = params.nu * np.outer(chi, chi.conj())
    m += (1.0 - params.nu) * np.outer(chi_perp, chi_perp.conj())
    return DensityOperator(m)


def local_observables_rank2(params: Rank2Canonical) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form polarization vectors (p, s) of the canonical rank-2 state.

    These expressions follow from tracing the assembled state against the
    single-qubit operators and agree with decompose(assemble_rank2(params))
    to machine precision.
    """
    nu = params.nu
    ca, sa = math.cos(params.alpha), math.sin(params.alpha)
    cb, sb = math.cos(params.beta), math.sin(params.beta)
    ce, se = math.cos(params.eta), math.sin(params.eta)
    cg, sg = math.cos(params.gamma), math.sin(params.gamma)
    c2a = math.cos(2.0 * params.alpha)
    c2b = math.cos(2.0 * params.beta)
    k = 2.0 * (1.0 - nu) * ce * se
    p = np.array(
        [
            k * (sa * cb - ca * sb * cg),
            -k * ca * sb * sg,
            nu * c2a - (1.0 - nu) * (ce * ce * c2a + se * se * c2b),
        ]
    )
    s = np.array(
        [
            k * (sa * sb * cg - ca * cb),
            -k * sa * sb * sg,
            nu * c2a - (1.0 - nu) * (ce * ce * c2a - se * se * c2b),
        ]
    )
    return p, s


def reconstruct_rank2(p, s, tol: float = DEGENERACY_TOL) -> Rank2Canonical:
    """Recover the canonical rank-2 parameters from the two polarizations.

    The inversion runs on ratios of the measured components: the y ratio
    fixes the Schmidt angle, two x/y combinations fix the transverse angles
    (the sign of p_y resolves the azimuthal reflection), and the z components
    fix the eigenvalue weight and the mixing angle. Whenever a required
    denominator falls below tol the map is singular there and
    ReconstructionDegenerate is raised; callers should fall back to the
    degenerate-family estimator.
    """
    p = np.asarray(p, dtype=float).reshape(3)
    s = np.asarray(s, dtype=float).reshape(3)
    px, py, pz = p
    sx, sy, sz = s
    for name, val in (("p_y", py), ("s_y", sy), ("p_x", px), ("s_x", sx)):
        if abs(val) <= tol:
            raise ReconstructionDegenerate(f"{name} = {val} is below tol {tol}")

    ratio = sy / py
    if ratio < 0.0:
        raise ReconstructionDegenerate(
            "y components have opposite signs; data is outside the family"
        )
    alpha = math.atan(ratio)
    sa, ca = math.sin(alpha), math.cos(alpha)

    denom = sa * px + ca * sx
    if abs(denom) <= tol:
        raise ReconstructionDegenerate(
            f"sin(alpha) p_x + cos(alpha) s_x = {denom} is below tol {tol}"
        )
    u = (ca * px + sa * sx) / denom
    v = -py * (sa - ca * u) / (px * ca)
    t = math.hypot(u, v)
    if t <= tol:
        raise ReconstructionDegenerate("transverse angle is unresolved")
    beta = math.atan(t)
    gamma = math.atan2(v, u) % _TWO_PI
    sb = math.sin(beta)
    sg = math.sin(gamma)

    if abs(sa * sb * sg) <= tol:
        raise ReconstructionDegenerate("azimuthal sine vanished during inversion")
    k = -sy / (sa * sb * sg)
    if k <= tol:
        raise ReconstructionDegenerate(f"inferred mixing amplitude {k} is not positive")

    c2b = math.cos(2.0 * beta)
    if abs(c2b) <= tol:
        raise ReconstructionDegenerate("cos(2 beta) is below tol; weight is unresolved")
    q = (sz - pz) / (2.0 * c2b)
    if q <= tol:
        raise ReconstructionDegenerate(f"inferred weight component {q} is not positive")
    d = k * k / (4.0 * q)
    nu = 1.0 - d - q
    if not -1e-6 <= nu <= 1.0 + 1e-6:
        raise ReconstructionDegenerate(f"inferred eigenvalue weight {nu} is unphysical")
    nu = min(max(nu, 0.0), 1.0)
    eta = math.atan2(math.sqrt(q), math.sqrt(d))
    return Rank2Canonical(nu=nu, alpha=alpha, beta=beta, gamma=gamma, eta=eta)


# ---------------------------------------------------------------------------
# rank-2 separable-plus-pure family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rank2SepDecomp:
    """Rank-2 mixture of an orthogonal separable pair with an in-span pure state.

    The separable part mixes |00> (weight mu) with a |10> + b |11>; the pure
    part is cos(theta) |00> + e^{i phase} sin(theta) (a |10> + b |11>). lam
    is the separable part's total weight.
    """

    lam: float
    mu: float
    a: float
    b: float
    theta: float
    phase: float

    def __post_init__(self):
        for name in ("lam", "mu"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.a < 0.0 or self.b < 0.0:
            raise ValueError("a and b must be nonnegative")
        if abs(self.a**2 + self.b**2 - 1.0) > WEIGHT_TOL:
            raise ValueError("a^2 + b^2 must equal 1")


def assemble_rank2_sep(params: Rank2SepDecomp) -> DensityOperator:
    chi2 = np.array([0.0, 0.0, params.a, params.b], dtype=complex)
    psi = math.cos(params.theta) * np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    psi += np.exp(1j * params.phase) * math.sin(params.theta) * chi2
    sep = params.mu * np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    sep += (1.0 - params.mu) * np.outer(chi2, chi2.conj())
    m = params.lam * sep + (1.0 - params.lam) * np.outer(psi, psi.conj())
    return DensityOperator(m)


def estimate_rank2_sep2(inv: InvariantVector) -> float:
    """Candidate rank-2 concurrence from the first two invariants.

    Evaluates max(sqrt(1 - I1), sqrt(1 - I2)) exactly as the closed form
    states it. The validation harness measures how well this tracks the
    oracle across the family; it is reported, not trusted.
    """
    return max(
        math.sqrt(_guard_radicand(1.0 - inv.i1)),
        math.sqrt(_guard_radicand(1.0 - inv.i2)),
    )


# ---------------------------------------------------------------------------
# rank-2 degenerate family: product state plus orthogonal pure state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rank2Degenerate:
    """Mixture lam |00><00| + (1 - lam) |psi><psi| with psi orthogonal to |00>.

    psi = r1 |01> + c |10> + r2 |11> with r1, r2 real nonnegative and c
    complex, normalized to one.
    """

    lam: float
    r1: float
    r2: float
    c: complex

    def __post_init__(self):
        if not -1e-12 <= self.lam <= 1.0 + 1e-12:
            raise ValueError("lam must lie in [0, 1]")
        if self.r1 < 0.0 or self.r2 < 0.0:
            raise ValueError("r1 and r2 must be nonnegative")
        norm2 = self.r1**2 + abs(self.c) ** 2 + self.r2**2
        if abs(norm2 - 1.0) > WEIGHT_TOL:
            raise ValueError("r1^2 + |c|^2 + r2^2 must equal 1")


def assemble_rank2_degenerate(params: Rank2Degenerate) -> DensityOperator:
    psi = np.array([0.0, params.r1, params.c, params.r2], dtype=complex)
    m = params.lam * np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    m += (1.0 - params.lam) * np.outer(psi, psi.conj())
    return DensityOperator(m)


def estimate_rank2_degenerate(params: Rank2Degenerate) -> float:
    """Exact concurrence of the degenerate family: (1 - lam) 2 r1 |c|."""
    return (1.0 - params.lam) * 2.0 * params.r1 * abs(params.c)


def mixedness_to_lambda(purity: float) -> tuple[float, float]:
    """Both mixing weights compatible with a measured purity.

    The family purity is 2 lam^2 - 2 lam + 1, so each purity in [1/2, 1]
    corresponds to the pair lam = (1 -+ sqrt(2 purity - 1)) / 2, returned in
    ascending order. Raises InvalidPurity outside the attainable range.
    """
    if not 0.5 - 1e-12 <= purity <= 1.0 + 1e-12:
        raise InvalidPurity(f"purity {purity} is outside [1/2, 1]")
    root = math.sqrt(_guard_radicand(2.0 * purity - 1.0))
    return 0.5 * (1.0 - root), 0.5 * (1.0 + root)


def estimate_projection2(inv: InvariantVector) -> float:
    """Concurrence of an equal-weight two-dimensional projection from I1, I2.

    Exact on mixtures (|00><00| + |psi><psi|) / 2 with psi orthogonal to
    |00>. Raises DomainError if either radicand is negative beyond tolerance.
    """
    inner = _guard_radicand(
        (inv.i1 - inv.i2) ** 2 / 4.0 - (inv.i1 + inv.i2) / 2.0 + 0.25
    )
    outer = _guard_radicand((1.0 - inv.i1 - inv.i2) / 2.0 - math.sqrt(inner))
    return math.sqrt(outer)


# ---------------------------------------------------------------------------
# X-shaped states with inner coherence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XState:
    """Diagonal weights (u_plus, w1, w2, u_minus) with one coherence z
    between |01> and |10>. Positivity requires |z|^2 <= w1 w2."""

    u_plus: float
    w1: float
    w2: float
    u_minus: float
    z: complex

    def __post_init__(self):
        weights = (self.u_plus, self.w1, self.w2, self.u_minus)
        if min(weights) < -1e-12:
            raise ValueError("diagonal weights must be nonnegative")
        if abs(sum(weights) - 1.0) > WEIGHT_TOL:
            raise ValueError("diagonal weights must sum to 1")
        if abs(self.z) ** 2 > self.w1 * self.w2 + 1e-12:
            raise ValueError("|z|^2 must not exceed w1 w2")


def assemble_xstate(x: XState) -> DensityOperator:
    m = np.diag([x.u_plus, x.w1, x.w2, x.u_minus]).astype(complex)
    m[1, 2] = x.z
    m[2, 1] = np.conj(x.z)
    return DensityOperator(m)


def xstate_concurrence(x: XState) -> float:
    """Exact concurrence of the X family: 2 max(0, |z| - sqrt(u+ u-))."""
    return 2.0 * max(0.0, abs(x.z) - math.sqrt(max(x.u_plus * x.u_minus, 0.0)))


def xstate_concurrence_invariant(inv: InvariantVector) -> float:
    """Invariant-only X-state expression, evaluated in its literal form.

    Computes sqrt(2 (I8 - I5/I1)) - sqrt((1 + sqrt(I5/I1))^2 - (I1 + I2)^2),
    clamped below at zero. Raises I1Zero when I1 vanishes and DomainError
    when a radicand is negative beyond tolerance; the validation harness
    records how often that happens and how far the value sits from the
    oracle. This expression is under empirical test, not assumed correct.
    """
    if inv.i1 <= 1e-12:
        raise I1Zero(f"i1 = {inv.i1} is too small to divide by")
    ratio = inv.i5 / inv.i1
    first = _guard_radicand(2.0 * (inv.i8 - ratio))
    second = _guard_radicand(
        (1.0 + math.sqrt(max(ratio, 0.0))) ** 2 - (inv.i1 + inv.i2) ** 2
    )
    return max(0.0, math.sqrt(first) - math.sqrt(second))


# ---------------------------------------------------------------------------
# ladder line
# ---------------------------------------------------------------------------


def assemble_ladder(lam: float) -> DensityOperator:
    """Mixture lam |00><00| + (1 - lam) |singlet><singlet|."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    singlet = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
    m = lam * np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    m += (1.0 - lam) * np.outer(singlet, singlet.conj())
    return DensityOperator(m)


def ladder_concurrence(lam: float) -> float:
    """Concurrence along the ladder line: 1 - lam."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    return 1.0 - lam


def ladder_from_correlation(szpz: float) -> float:
    """Ladder concurrence from the single z-z correlation: 1 - (szpz + 1) / 2."""
    if not -1.0 - 1e-12 <= szpz <= 1.0 + 1e-12:
        raise ValueError("correlation must lie in [-1, 1]")
    return 1.0 - 0.5 * (szpz + 1.0)


def invariants_of(rho: DensityOperator) -> InvariantVector:
    """Convenience: invariant vector straight from a density operator."""
    from .invariants import invariant_vector

    return invariant_vector(decompose(rho))
