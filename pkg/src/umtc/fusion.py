"""Exact fusion-ring arithmetic: axioms, SU(2)_k rules, quantum dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PF_POWER_TOL = 1e-12
PF_MAX_ITER = 10000


class NonConvergence(Exception):
    """Power iteration failed to converge; the ring is malformed."""


@dataclass(frozen=True, eq=False)
class FusionRing:
    """A fusion ring: integer tensor N[i,j,k], duality permutation, label names.

    Label 0 is the unit.  N[i,j,k] is the multiplicity of k in i x j.
    """

    N: np.ndarray
    dual: tuple
    display_names: tuple

    def __post_init__(self):
        N = np.ascontiguousarray(self.N, dtype=np.int64)
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        object.__setattr__(self, "display_names", tuple(self.display_names))
        r = self.rank
        if self.N.shape != (r, r, r):
            raise ValueError("fusion tensor shape inconsistent with rank")
        if len(self.dual) != r:
            raise ValueError("duality permutation length inconsistent with rank")

    @property
    def rank(self) -> int:
        return len(self.display_names)

    def fusion_matrix(self, i: int) -> np.ndarray:
        """The matrix (N_i)[j,k] of left multiplication by label i."""
        return self.N[i]

    def equals(self, other: "FusionRing") -> bool:
        return (
            self.rank == other.rank
            and np.array_equal(self.N, other.N)
            and self.dual == other.dual
        )


def trivial_ring() -> FusionRing:
    return FusionRing(np.ones((1, 1, 1), dtype=np.int64), (0,), ("0",))


def verify_fusion_ring(ring: FusionRing) -> list:
    """Check the fusion-ring axioms; returns a list of violation strings.

    Empty list means the ring is valid.  All checks are exact integer
    comparisons.
    """
    N = ring.N
    r = ring.rank
    violations = []
    if np.any(N < 0):
        violations.append("negativity: fusion coefficients must be nonnegative")

    eye = np.eye(r, dtype=np.int64)
    if not np.array_equal(N[0], eye):
        violations.append("unit: N[0,j,k] != delta_jk")
    if not np.array_equal(N[:, 0, :], eye):
        violations.append("unit: N[i,0,k] != delta_ik")

    left = np.einsum("ijm,mkl->ijkl", N, N)
    right = np.einsum("jkm,iml->ijkl", N, N)
    if not np.array_equal(left, right):
        violations.append("associativity: (i j) k != i (j k)")

    dual = np.asarray(ring.dual)
    if sorted(ring.dual) != list(range(r)) or not np.array_equal(dual[dual], np.arange(r)):
        violations.append("duality: dual is not an involutive permutation")
    else:
        perm = np.zeros((r, r), dtype=np.int64)
        perm[np.arange(r), dual] = 1
        if not np.array_equal(N[:, :, 0], perm):
            violations.append("duality: N[i,j,0] != delta_{j, dual(i)}")
        # Frobenius reciprocity
        if not np.array_equal(N, N[dual].transpose(0, 2, 1)):
            violations.append("Frobenius: N[i,j,k] != N[dual(i),k,j]")
        if not np.array_equal(N, N[:, dual, :].transpose(2, 1, 0)):
            violations.append("Frobenius: N[i,j,k] != N[k,dual(j),i]")

    return violations


def su2_fusion(k: int) -> FusionRing:
    """SU(2) level-k fusion ring on labels 0..k in spin order.

    i x j contains l once iff |i-j| <= l <= i+j, i+j+l even, i+j+l <= 2k.
    All labels are self-dual.
    """
    if k < 0:
        raise ValueError("level must be nonnegative")
    r = k + 1
    N = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            for l in range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2):
                N[i, j, l] = 1
    return FusionRing(N, tuple(range(r)), tuple(str(i) for i in range(r)))


def pf_dimensions(ring: FusionRing, tol: float = 1e-9) -> np.ndarray:
    """Perron-Frobenius dimension of each simple object.

    Power iteration on the total fusion matrix establishes convergence, the
    per-object value is then refined as the spectral radius of N_i.  Checks
    d_i d_j = sum_k N[i,j,k] d_k within ``tol``.
    """
    N = ring.N.astype(float)
    r = ring.rank
    M = N.sum(axis=0)
    v = np.ones(r)
    for _ in range(PF_MAX_ITER):
        w = M @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            raise NonConvergence("total fusion matrix is nilpotent")
        w /= norm
        if np.linalg.norm(w - v) < PF_POWER_TOL:
            break
        v = w
    else:
        raise NonConvergence("power iteration did not converge")

    d = np.array([max(abs(np.linalg.eigvals(N[i]))) for i in range(r)])
    defect = np.max(np.abs(np.outer(d, d) - np.einsum("ijk,k->ij", N, d)))
    if defect > tol:
        raise NonConvergence(f"dimension homomorphism defect {defect:.3e} > {tol}")
    return d


def global_dimension(ring: FusionRing) -> float:
    """Sum of squared Perron-Frobenius dimensions."""
    d = pf_dimensions(ring)
    return float(np.sum(d * d))
