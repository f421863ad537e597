"""Local-unitary invariants built from the Bloch decomposition.

From the polarizations p, s and the correlation matrix pi we form the
derived vectors a = pi s and b = pi^T p (each rotates with its own qubit's
frame), their cross products, and the symmetric matrix t = pi pi^T. The nine
scalars below are unchanged under independent rotations of the two qubits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import I3Mismatch
from .qstate import BlochDecomposition

I3_TOL = 1e-8


@dataclass(frozen=True)
class DerivedCorrelates:
    """Covariant vectors and matrix derived from one Bloch decomposition.

    a = pi s and alpha = p x a live on qubit A's frame, b = pi^T p and
    beta = s x b on qubit B's, and t = pi pi^T conjugates with A's rotation.
    """

    a: np.ndarray
    b: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    t: np.ndarray


def derived_correlates(bloch: BlochDecomposition) -> DerivedCorrelates:
    p, s, pi = bloch.p, bloch.s, bloch.pi
    a = pi @ s
    b = pi.T @ p
    return DerivedCorrelates(
        a=a,
        b=b,
        alpha=np.cross(p, a),
        beta=np.cross(s, b),
        t=pi @ pi.T,
    )


@dataclass(frozen=True)
class InvariantVector:
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: float
    i7: float
    i8: float
    i9: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.i1, self.i2, self.i3, self.i4, self.i5,
             self.i6, self.i7, self.i8, self.i9]
        )

    def to_dict(self) -> dict:
        return {f"i{k}": float(v) for k, v in enumerate(self.as_array(), start=1)}

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantVector":
        return cls(**{f"i{k}": float(d[f"i{k}"]) for k in range(1, 10)})


def invariant_vector(bloch: BlochDecomposition, tol: float = I3_TOL) -> InvariantVector:
    """Evaluate all nine invariants.

    The third invariant is computed along both contractions, p . (pi s) and
    s . (pi^T p); they are equal for any correlation matrix, so a mismatch
    beyond tol signals corrupted input and raises I3Mismatch.
    """
    p, s, pi = bloch.p, bloch.s, bloch.pi
    d = derived_correlates(bloch)
    i3_pa = float(p @ d.a)
    i3_sb = float(s @ d.b)
    if abs(i3_pa - i3_sb) > tol:
        raise I3Mismatch(f"p.a = {i3_pa} but s.b = {i3_sb}")
    t = d.t
    return InvariantVector(
        i1=float(p @ p),
        i2=float(s @ s),
        i3=i3_pa,
        i4=float(d.a @ d.a),
        i5=float(d.b @ d.b),
        i6=float(np.trace(t)),
        i7=float(d.a @ pi @ d.b),
        i8=float(np.sum(t * t)),
        i9=float(d.alpha @ pi @ d.beta),
    )


def purity_residuals(bloch: BlochDecomposition) -> tuple[float, float]:
    """Residuals of the two pure-state identities.

    Returns (|p|^2 - |s|^2, 2 |p|^2 + tr(pi pi^T) - 3); both vanish exactly
    on pure states and the second is strictly negative on mixed ones.
    """
    p2 = float(bloch.p @ bloch.p)
    s2 = float(bloch.s @ bloch.s)
    tr_t = float(np.sum(bloch.pi * bloch.pi))
    return p2 - s2, 2.0 * p2 + tr_t - 3.0
