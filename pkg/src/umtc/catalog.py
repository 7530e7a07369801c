"""Constructors for the concrete categories: SU(2)_k, Ising-type, Fibonacci, pointed."""

from __future__ import annotations

import numpy as np

from .fusion import FusionRing, su2_fusion
from .modular import ModularData
from .phases import ZERO_PHASE, RationalPhase


def su2(k: int) -> ModularData:
    """SU(2) level-k modular data in spin order rho_0..rho_k.

    twist_i = i(i+2)/(4(k+2)) mod 1,
    S_ij = sqrt(2/(k+2)) sin((i+1)(j+1) pi/(k+2)),
    d_i = sin((i+1)pi/(k+2))/sin(pi/(k+2)).
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    ring = su2_fusion(k)
    n = k + 2
    twists = tuple(RationalPhase.of(i * (i + 2), 4 * n) for i in range(k + 1))
    grid = np.arange(1, k + 2)
    S = np.sqrt(2.0 / n) * np.sin(np.outer(grid, grid) * np.pi / n)
    dims = np.sin(grid * np.pi / n) / np.sin(np.pi / n)
    D_total = np.sqrt(n / 2.0) / np.sin(np.pi / n)
    return ModularData(ring, S, twists, dims, D_total)


def ising_like(nu: int) -> ModularData:
    """Ising-fusion modular data of Spin(nu)_1 for odd nu.

    Rank 3 with sigma = label 1, fermion = label 2; twists (0, nu/16, 1/2),
    global dimension 4, central charge nu/2 mod 8.
    """
    if nu % 2 == 0 or nu < 1:
        raise ValueError("nu must be an odd positive integer")
    N = np.zeros((3, 3, 3), dtype=np.int64)
    N[0] = np.eye(3, dtype=np.int64)
    N[:, 0, :] = np.eye(3, dtype=np.int64)
    N[1, 1, 0] = N[1, 1, 2] = 1
    N[1, 2, 1] = N[2, 1, 1] = 1
    N[2, 2, 0] = 1
    ring = FusionRing(N, (0, 1, 2), ("0", "1", "2"))
    s = np.sqrt(2.0)
    S = 0.5 * np.array([[1, s, 1], [s, 0, -s], [1, -s, 1]])
    twists = (ZERO_PHASE, RationalPhase.of(nu, 16), RationalPhase.of(1, 2))
    return ModularData(ring, S, twists, np.array([1.0, s, 1.0]), 2.0)


def fibonacci(variant: str) -> ModularData:
    """The golden category tau x tau = 1 + tau, in two braidings.

    variant "g2": twist_tau = 2/5 (central charge 14/5 mod 8);
    variant "f4": twist_tau = 3/5, the reverse of "g2" (charge 26/5), so
    that the g2 and f4 charges sum to 0 mod 8.
    """
    variant = variant.lower()
    if variant not in ("g2", "f4"):
        raise ValueError("variant must be 'g2' or 'f4'")
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0] = np.eye(2, dtype=np.int64)
    N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1
    ring = FusionRing(N, (0, 1), ("0", "1"))
    phi = (1 + np.sqrt(5.0)) / 2
    D = np.sqrt(phi + 2)
    S = np.array([[1, phi], [phi, -1]]) / D
    num = 2 if variant == "g2" else 3
    twists = (ZERO_PHASE, RationalPhase.of(num, 5))
    return ModularData(ring, S, twists, np.array([1.0, phi]), D)


def pointed_cyclic(n: int, q) -> ModularData:
    """Pointed modular data on Z_n from a nondegenerate quadratic form.

    ``q`` is a length-n sequence of RationalPhase with q[0]=0 and q(a)=q(-a);
    S[a,b] = exp(-2 pi i b(a,b))/sqrt(n) with b(a,b)=q(a+b)-q(a)-q(b), the
    sign being the one the balancing identity forces for twists exp(2 pi i q).
    """
    if n < 1:
        raise ValueError("n must be positive")
    q = tuple(q)
    if len(q) != n:
        raise ValueError("quadratic form must have one value per group element")
    if not q[0].is_zero:
        raise ValueError("q(0) must be 0")
    for a in range(n):
        if q[a] != q[(-a) % n]:
            raise ValueError(f"q({a}) != q({-a % n}): not a quadratic form")
    bil = [[q[(a + b) % n] - q[a] - q[b] for b in range(n)] for a in range(n)]
    for a in range(1, n):
        if all(bil[a][b].is_zero for b in range(n)):
            raise ValueError(f"degenerate quadratic form: {a} is in the radical")
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, (a + b) % n] = 1
    ring = FusionRing(
        N, tuple((-a) % n for a in range(n)), tuple(str(a) for a in range(n))
    )
    S = np.array([[(-bil[a][b]).unit() for b in range(n)] for a in range(n)]) / np.sqrt(n)
    return ModularData(ring, S, q, np.ones(n), np.sqrt(float(n)))


def parse_catalog_id(text: str) -> ModularData:
    """Parse the canonical text form: su2:K, ising:NU, fib:g2|f4, zn:N:q0,q1,..."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "su2" and len(parts) == 2:
            return su2(int(parts[1]))
        if kind == "ising" and len(parts) == 2:
            return ising_like(int(parts[1]))
        if kind == "fib" and len(parts) == 2:
            return fibonacci(parts[1])
        if kind == "zn" and len(parts) == 3:
            n = int(parts[1])
            q = tuple(RationalPhase.parse(v) for v in parts[2].split(","))
            return pointed_cyclic(n, q)
    except ValueError as exc:
        raise ValueError(f"bad catalog id {text!r}: {exc}") from exc
    raise ValueError(f"unrecognized catalog id {text!r}")


CATALOG_FORMS = (
    "su2:K            SU(2) level K (K >= 1)",
    "ising:NU         Ising-type Spin(NU)_1, NU odd",
    "fib:g2 | fib:f4  Fibonacci, the two braidings",
    "zn:N:q0,q1,...   pointed Z_N with quadratic form (phases as fractions)",
)
