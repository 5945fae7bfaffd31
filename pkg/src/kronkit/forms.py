"""Systems of linear forms and their transposes.

A system holds an m x n coefficient matrix theta; the forward forms are
L_j(x) = sum_i theta[i][j] * x_i (one per column j), the transposed forms
are R_i(u) = sum_j theta[i][j] * u_j (one per row i).  Both evaluations
read the same matrix, so there is no transpose copy to drift out of sync.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch
from .scalar import Q, Scalar


class LinearFormSystem:
    """Immutable m x n matrix of Scalars, stored row-major by variable."""

    __slots__ = ("theta", "m", "n")

    def __init__(self, theta: Sequence[Sequence[Scalar]]):
        if not theta or not theta[0]:
            raise DimensionMismatch("theta must be a non-empty matrix")
        n = len(theta[0])
        for row in theta:
            if len(row) != n:
                raise DimensionMismatch("ragged theta matrix")
        self.theta = tuple(tuple(_as_scalar(v) for v in row) for row in theta)
        self.m = len(theta)
        self.n = n

    @property
    def d(self) -> int:
        return self.m + self.n

    def eval_forms(self, a: Sequence[int]) -> list[Scalar]:
        """(L_1(a), ..., L_n(a)) for an integer vector a of length m."""
        if len(a) != self.m:
            raise DimensionMismatch(f"expected m={self.m} entries, got {len(a)}")
        out = []
        for j in range(self.n):
            s = Scalar(Q(0))
            for i in range(self.m):
                if a[i]:
                    s = s + self.theta[i][j] * int(a[i])
            out.append(s)
        return out

    def eval_transposed(self, u: Sequence[int]) -> list[Scalar]:
        """(R_1(u), ..., R_m(u)) for an integer vector u of length n."""
        if len(u) != self.n:
            raise DimensionMismatch(f"expected n={self.n} entries, got {len(u)}")
        out = []
        for i in range(self.m):
            s = Scalar(Q(0))
            for j in range(self.n):
                if u[j]:
                    s = s + self.theta[i][j] * int(u[j])
            out.append(s)
        return out

    def is_rational(self) -> bool:
        return all(v.is_exact for row in self.theta for v in row)

    def __repr__(self):
        return f"LinearFormSystem(m={self.m}, n={self.n})"


def _as_scalar(v) -> Scalar:
    return v if isinstance(v, Scalar) else Scalar(Q(v))
