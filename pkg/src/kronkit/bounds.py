"""Closed-form constants, box sizes, and window lengths.

All rational quantities are computed exactly with arbitrary-precision
integers; the only transcendental ingredient (the log in the
Gonek-Montgomery box size) is evaluated as a rigorous enclosure whose
precision escalates until the ceiling is determined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError, EpsilonOutOfRange
from .scalar import (DEFAULT_BITS, HALF, Q, Scalar, ceil_scalar,
                     exp_enclosure, log_enclosure, qfloor, with_escalation)


def gamma(N: int):
    """Window constant 2^(N-2) / (N * (N!)^2), exact."""
    if N < 2:
        raise DomainError(f"dimension must be >= 2, got {N}")
    f = math.factorial(N)
    return Q(2 ** (N - 2), N * f * f)


def gamma1(d: int, part: str):
    """Transference constant: d for part A, 2^(d-1)/(d!)^2 for part B."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if part == "A":
        return Q(d)
    if part == "B":
        f = math.factorial(d)
        return Q(2 ** (d - 1), f * f)
    raise DomainError(f"part must be 'A' or 'B', got {part!r}")


def _check_eps(eps):
    for e in eps:
        e = Q(e)
        if not (0 < e < HALF):
            raise EpsilonOutOfRange(f"epsilon {e} outside (0, 1/2)")


def box_theorem1(N: int, eps: Sequence):
    """Per-coordinate box bounds 1/(gamma * eps_j) with their floors.

    Returns (m_star, m_floor): exact rationals and the integer ranges
    actually enumerated (|m_j| <= floor(m_star_j)).
    """
    if len(eps) != N:
        raise DomainError(f"expected {N} epsilons, got {len(eps)}")
    _check_eps(eps)
    g = gamma(N)
    m_star = [1 / (g * Q(e)) for e in eps]
    for ms in m_star:
        if ms < 1:
            raise EpsilonOutOfRange(f"box bound {ms} < 1")
    return m_star, [qfloor(ms) for ms in m_star]


def box_gm(N: int, eps: Sequence, bits: int = DEFAULT_BITS) -> list[int]:
    """Gonek-Montgomery box sizes ceil((1/eps_j) * ln(N/eps_j))."""
    if N < 2:
        raise DomainError(f"dimension must be >= 2, got {N}")
    _check_eps(eps)

    out = []
    for e in eps:
        e = Q(e)

        def one(b, e=e):
            return ceil_scalar(log_enclosure(N / e, b) / e)

        out.append(with_escalation(one, bits))
    return out


def window_theorem1(N: int, delta) -> Scalar:
    """Window length 1/(gamma(N) * delta)."""
    d = delta if isinstance(delta, Scalar) else Scalar(Q(delta))
    if not d.gt(0):
        raise DomainError("delta must be positive")
    return 1 / (Scalar(gamma(N)) * d)


def window_gm(delta) -> Scalar:
    """Gonek-Montgomery window length 4/delta."""
    d = delta if isinstance(delta, Scalar) else Scalar(Q(delta))
    if not d.gt(0):
        raise DomainError("delta must be positive")
    return 4 / d


def crossover_epsilon(N: int, bits: int = DEFAULT_BITS) -> Scalar:
    """Epsilon below which the 1/(gamma*eps) box beats the GM box.

    Solves ln(N/eps) = 1/gamma(N): eps0 = N * exp(-1/gamma(N)).
    """
    g = gamma(N)
    return exp_enclosure(-1 / g, bits) * N


@dataclass(frozen=True)
class ComparisonRow:
    eps: object  # exact rational
    m_star: object  # exact rational
    m_gm: int
    star_is_smaller: bool


def compare_bounds(N: int, eps_grid: Sequence,
                   bits: int = DEFAULT_BITS) -> list[ComparisonRow]:
    """One row per grid epsilon comparing the two box sizes exactly."""
    rows = []
    g = gamma(N)
    for e in eps_grid:
        e = Q(e)
        _check_eps([e])
        m_star = 1 / (g * e)
        m_gm = box_gm(N, [e], bits)[0]
        rows.append(ComparisonRow(e, m_star, m_gm, m_star < m_gm))
    return rows


@dataclass
class BoundSet:
    """Every closed-form quantity attached to one N, eps, delta choice."""

    N: int
    gamma: object
    gamma1_A: object
    gamma1_B: object
    M_star: list
    M_floor: list
    M_gm: list
    M_cor: list = field(default_factory=list)
    T_star: Optional[Scalar] = None
    T_gm: Optional[Scalar] = None
    T_cor: Optional[Scalar] = None

    def to_json(self):
        return {
            "N": self.N,
            "gamma": str(self.gamma),
            "gamma1_A": str(self.gamma1_A),
            "gamma1_B": str(self.gamma1_B),
            "M_star": [str(x) for x in self.M_star],
            "M_floor": [int(x) for x in self.M_floor],
            "M_gm": [int(x) for x in self.M_gm],
            "M_cor": [str(x) for x in self.M_cor],
            "T_star": self.T_star.to_json() if self.T_star else None,
            "T_gm": self.T_gm.to_json() if self.T_gm else None,
            "T_cor": self.T_cor.to_json() if self.T_cor else None,
        }


def bound_set(N: int, eps: Sequence, delta=None,
              bits: int = DEFAULT_BITS) -> BoundSet:
    """Assemble the full bound table for dimension N."""
    m_star, m_floor = box_theorem1(N, eps)
    g1 = gamma1(N, "B")
    bs = BoundSet(
        N=N,
        gamma=gamma(N),
        gamma1_A=gamma1(N, "A"),
        gamma1_B=g1,
        M_star=m_star,
        M_floor=m_floor,
        M_gm=box_gm(N, eps, bits),
        M_cor=[1 / (2 * Q(e) * g1) for e in eps],
    )
    if delta is not None:
        bs.T_star = window_theorem1(N, delta)
        bs.T_gm = window_gm(delta)
        d = delta if isinstance(delta, Scalar) else Scalar(Q(delta))
        bs.T_cor = 2 / (Scalar(g1) * d)
    return bs
