"""Modular (S,T) data: Verlinde fusion, Gauss sums, reversal, Deligne products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion import FusionRing, pf_dimensions, verify_fusion_ring
from .phases import ZERO_PHASE, RationalPhase

VERLINDE_TOL = 1e-6
LINALG_TOL = 1e-9
CHARGE_MAX_DENOMINATOR = 240


class NonIntegralFusion(Exception):
    """Verlinde coefficients are not (nonnegative) integers: inconsistent S."""


class NonModular(Exception):
    """Data failed a modularity precondition (e.g. Gauss sum off the circle)."""


@dataclass(frozen=True, eq=False)
class ModularData:
    """A fusion ring with S-matrix, exact rational twists and dimensions."""

    ring: FusionRing
    S: np.ndarray
    twists: tuple
    dims: np.ndarray
    D_total: float

    def __post_init__(self):
        S = np.ascontiguousarray(self.S, dtype=complex)
        S.setflags(write=False)
        object.__setattr__(self, "S", S)
        dims = np.ascontiguousarray(self.dims, dtype=float)
        dims.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "twists", tuple(self.twists))
        r = self.rank
        if S.shape != (r, r) or len(self.twists) != r or dims.shape != (r,):
            raise ValueError("modular data shapes inconsistent with rank")

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def display_names(self) -> tuple:
        return self.ring.display_names

    def t_diagonal(self) -> np.ndarray:
        return np.array([t.unit() for t in self.twists])


def trivial_data() -> ModularData:
    from .fusion import trivial_ring

    return ModularData(trivial_ring(), np.ones((1, 1)), (ZERO_PHASE,), np.ones(1), 1.0)


def make_modular_data(S: np.ndarray, twists, display_names=None) -> ModularData:
    """Assemble ModularData from an S-matrix and twists alone.

    The fusion ring comes from the Verlinde formula, dimensions from the
    first row of S.  Used for condensation output, where only (S,T) is known.
    """
    S = np.asarray(S, dtype=complex)
    r = S.shape[0]
    if display_names is None:
        display_names = tuple(str(i) for i in range(r))
    ring = _verlinde_ring(S, display_names)
    D_total = 1.0 / float(np.real(S[0, 0]))
    dims = np.real(S[0]) * D_total
    return ModularData(ring, S, tuple(twists), dims, D_total)


def _verlinde_tensor(S: np.ndarray) -> np.ndarray:
    """Raw (float) Verlinde coefficients from an S-matrix."""
    inv0 = 1.0 / S[0]
    return np.einsum("im,jm,km,m->ijk", S, S, np.conj(S), inv0)


def _verlinde_ring(S: np.ndarray, display_names, tol: float = VERLINDE_TOL) -> FusionRing:
    raw = _verlinde_tensor(S)
    N = np.rint(np.real(raw)).astype(np.int64)
    dev = np.max(np.abs(raw - N))
    if dev > tol:
        raise NonIntegralFusion(f"Verlinde coefficient off an integer by {dev:.3e}")
    if np.any(N < 0):
        raise NonIntegralFusion("negative Verlinde coefficient")
    dual = tuple(int(np.argmax(N[i, :, 0])) for i in range(S.shape[0]))
    return FusionRing(N, dual, display_names)


def verlinde(md: ModularData, tol: float = VERLINDE_TOL) -> FusionRing:
    """Fusion ring of the S-matrix via the Verlinde formula.

    Raises NonIntegralFusion when a rounded coefficient deviates by more
    than ``tol`` or comes out negative.
    """
    return _verlinde_ring(md.S, md.display_names, tol)


def s_from_fusion_and_twists(ring: FusionRing, twists, dims=None) -> np.ndarray:
    """S-matrix from the balancing identity.

    S_ij = (1/D) sum_k N[dual(i),j,k] * (theta_k / (theta_i theta_j)) * d_k.
    Independent of any catalog S; serves as the cross-check that fusion rules
    and twists determine the S-matrix.
    """
    if dims is None:
        dims = pf_dimensions(ring)
    theta = np.array([t.unit() for t in twists])
    D = np.sqrt(float(np.sum(dims * dims)))
    dual = np.asarray(ring.dual)
    weighted = ring.N[dual] * (theta * dims)[np.newaxis, np.newaxis, :]
    return weighted.sum(axis=2) / (np.outer(theta, theta) * D)


def gauss_sum(md: ModularData, sign: int = +1) -> complex:
    """sum_i d_i^2 exp(+-2 pi i theta_i)."""
    theta = md.t_diagonal()
    if sign < 0:
        theta = np.conj(theta)
    return complex(np.sum(md.dims**2 * theta))


def central_charge_mod8(md: ModularData, tol: float = LINALG_TOL):
    """Central charge c mod 8 with exp(2 pi i c/8) = gauss_sum(+)/D_total.

    Returns (c/8 as RationalPhase, float representative in [0,8)).  The
    rational reconstruction uses denominators <= 240 for c itself and
    errors out rather than guessing.
    """
    g = gauss_sum(md, +1)
    if abs(abs(g) - md.D_total) > tol * max(1.0, md.D_total):
        raise NonModular(
            f"|gauss sum| = {abs(g):.12g} != D_total = {md.D_total:.12g}"
        )
    c = (np.angle(g / md.D_total) / (2 * np.pi) * 8) % 8.0
    c_exact = RationalPhase.from_float(c / 8 * (1), max_denominator=8 * CHARGE_MAX_DENOMINATOR, tol=tol)
    # c/8 with den(c) <= 240: re-derive c as exact fraction and re-check
    c_frac = (c_exact.fraction * 8) % 8
    if c_frac.denominator > CHARGE_MAX_DENOMINATOR:
        raise NonModular(f"central charge {c_frac} has denominator > {CHARGE_MAX_DENOMINATOR}")
    return RationalPhase.of(c_frac, 8), float(c_frac % 8)


def reverse(md: ModularData) -> ModularData:
    """Opposite braiding: conjugate S entrywise, negate all twists."""
    return ModularData(
        md.ring, np.conj(md.S), tuple(-t for t in md.twists), md.dims, md.D_total
    )


def deligne_product(a: ModularData, b: ModularData) -> ModularData:
    """Product category: labels are pairs in lexicographic order.

    S is the Kronecker product, twists add mod 1, dimensions multiply.
    """
    ra, rb = a.rank, b.rank
    N = np.einsum("ijk,abc->iajbkc", a.ring.N, b.ring.N).reshape(ra * rb, ra * rb, ra * rb)
    dual = tuple(a.ring.dual[i] * rb + b.ring.dual[j] for i in range(ra) for j in range(rb))
    names = tuple(
        f"{a.display_names[i]},{b.display_names[j]}" for i in range(ra) for j in range(rb)
    )
    ring = FusionRing(N, dual, names)
    twists = tuple(a.twists[i] + b.twists[j] for i in range(ra) for j in range(rb))
    return ModularData(
        ring,
        np.kron(a.S, b.S),
        twists,
        np.kron(a.dims, b.dims),
        a.D_total * b.D_total,
    )


@dataclass(frozen=True)
class VerificationReport:
    """Named checks with pass/fail and the maximal deviation observed."""

    checks: tuple

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list:
        return [name for name, passed, _ in self.checks if not passed]

    def __str__(self) -> str:
        lines = [
            f"{'PASS' if passed else 'FAIL'}  {name}  (max dev {dev:.3e})"
            for name, passed, dev in self.checks
        ]
        return "\n".join(lines)


def verify_modular(md: ModularData, tol: float = 1e-8) -> VerificationReport:
    """Full (S,T) axiom suite; every check reports its maximal deviation."""
    S = md.S
    r = md.rank
    checks = []

    def add(name, dev):
        checks.append((name, bool(dev <= tol), float(dev)))

    add("S symmetric", np.max(np.abs(S - S.T)))
    add("S unitary", np.max(np.abs(S @ np.conj(S.T) - np.eye(r))))

    S2 = S @ S
    perm = np.zeros((r, r))
    perm[np.arange(r), np.asarray(md.ring.dual)] = 1.0
    add("S^2 = charge conjugation", np.max(np.abs(S2 - perm)))

    T = np.diag(md.t_diagonal())
    lam = gauss_sum(md, +1) / md.D_total
    ST = S @ T
    add("(ST)^3 = (gauss/D) S^2", np.max(np.abs(ST @ ST @ ST - lam * S2)))

    add("first row positive", max(0.0, -float(np.min(np.real(S[0])))) + np.max(np.abs(np.imag(S[0]))))
    add("unit twist trivial", 0.0 if md.twists[0].is_zero else 1.0)

    try:
        ring = verlinde(md)
        add("Verlinde integrality", 0.0)
        ring_violations = verify_fusion_ring(ring)
        add("Verlinde ring axioms", 0.0 if not ring_violations else 1.0)
        S_bal = s_from_fusion_and_twists(ring, md.twists, md.dims)
        add("balancing identity", np.max(np.abs(S_bal - S)))
    except NonIntegralFusion:
        add("Verlinde integrality", 1.0)

    return VerificationReport(tuple(checks))
