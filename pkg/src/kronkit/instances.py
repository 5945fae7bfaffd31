"""Problem instances and their JSON file format.

Two instance kinds exist: "kronecker" (target numbers lambda, alpha with
per-coordinate epsilon, a window start tau, and an optional hypothesis
threshold delta) and "linear_system" (an m x n coefficient matrix with
alpha, epsilon and either X bounds or integer windows).  All numbers are
decimal strings, fraction strings, or preset tokens; files parse exactly
and unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError
from .forms import LinearFormSystem
from .scalar import DEFAULT_BITS, Q, Real, Scalar

_KRONECKER_FIELDS = {"kind", "lambda", "alpha", "epsilon", "tau", "delta",
                     "precision_bits"}
_LINEAR_FIELDS = {"kind", "m", "n", "theta", "alpha", "epsilon", "X",
                  "tau", "T", "precision_bits"}


def _parse_reals(values, name) -> list[Real]:
    if not isinstance(values, (list, tuple)):
        raise DomainError(f"{name} must be an array of strings")
    return [Real.parse(str(v)) for v in values]


def _require_rational(reals: Sequence[Real], name) -> list:
    out = []
    for r in reals:
        if not r.is_rational:
            raise DomainError(f"{name} entries must be rational, got "
                              f"{r.serialize()!r}")
        out.append(r.arg)
    return out


@dataclass
class KroneckerInstance:
    """Inputs of the one-parameter approximation problem."""

    lam: list[Real]
    alpha: list[Real]
    eps: list[Real]
    tau: Real = field(default_factory=lambda: Real.rational(0))
    delta: Optional[Real] = None
    precision_bits: int = DEFAULT_BITS

    def __post_init__(self):
        if not (len(self.lam) == len(self.alpha) == len(self.eps)):
            raise DomainError("lambda, alpha, epsilon must share a length")
        for e in self.eps_rationals():
            if not (0 < e < Q(1, 2)):
                raise DomainError(f"epsilon {e} outside (0, 1/2)")
        if self.delta is not None and not self.delta.is_rational:
            raise DomainError("delta must be rational")
        if not self.tau.is_rational:
            raise DomainError("tau must be rational")

    @property
    def N(self) -> int:
        return len(self.lam)

    def lambdas(self, bits: Optional[int] = None) -> list[Scalar]:
        return [r.scalar(bits or self.precision_bits) for r in self.lam]

    def alphas(self, bits: Optional[int] = None) -> list[Scalar]:
        return [r.scalar(bits or self.precision_bits) for r in self.alpha]

    def eps_rationals(self) -> list:
        return _require_rational(self.eps, "epsilon")

    def tau_rational(self):
        return self.tau.arg

    def delta_rational(self):
        return None if self.delta is None else self.delta.arg

    def delta_scalar(self, bits: Optional[int] = None) -> Scalar:
        if self.delta is None:
            raise DomainError("instance has no delta")
        return self.delta.scalar(bits or self.precision_bits)

    def to_json(self):
        out = {
            "kind": "kronecker",
            "lambda": [r.serialize() for r in self.lam],
            "alpha": [r.serialize() for r in self.alpha],
            "epsilon": [r.serialize() for r in self.eps],
            "tau": self.tau.serialize(),
            "precision_bits": self.precision_bits,
        }
        if self.delta is not None:
            out["delta"] = self.delta.serialize()
        return out

    @staticmethod
    def from_json(data: dict) -> "KroneckerInstance":
        unknown = set(data) - _KRONECKER_FIELDS
        if unknown:
            raise DomainError(f"unknown instance fields: {sorted(unknown)}")
        for req in ("lambda", "alpha", "epsilon"):
            if req not in data:
                raise DomainError(f"missing instance field {req!r}")
        return KroneckerInstance(
            lam=_parse_reals(data["lambda"], "lambda"),
            alpha=_parse_reals(data["alpha"], "alpha"),
            eps=_parse_reals(data["epsilon"], "epsilon"),
            tau=Real.parse(str(data.get("tau", "0"))),
            delta=(Real.parse(str(data["delta"]))
                   if "delta" in data and data["delta"] is not None else None),
            precision_bits=int(data.get("precision_bits", DEFAULT_BITS)),
        )


@dataclass
class LinearSystemInstance:
    """Inputs of the linear-form system problem (transference side)."""

    m: int
    n: int
    theta: list[Real]  # row-major, m rows of n entries
    alpha: list[Real]
    eps: list[Real]
    X: Optional[list[Real]] = None
    tau: Optional[list[Real]] = None
    T: Optional[list[Real]] = None
    precision_bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError("m and n must be >= 1")
        if len(self.theta) != self.m * self.n:
            raise DomainError("theta must hold m*n row-major entries")
        if len(self.alpha) != self.n or len(self.eps) != self.n:
            raise DomainError("alpha and epsilon must have n entries")
        if self.X is not None and len(self.X) != self.m:
            raise DomainError("X must have m entries")
        if (self.tau is None) != (self.T is None):
            raise DomainError("tau and T windows come together")
        if self.tau is not None and (len(self.tau) != self.m
                                     or len(self.T) != self.m):
            raise DomainError("tau and T must have m entries")

    def system(self, bits: Optional[int] = None) -> LinearFormSystem:
        bits = bits or self.precision_bits
        rows = [[self.theta[i * self.n + j].scalar(bits)
                 for j in range(self.n)] for i in range(self.m)]
        return LinearFormSystem(rows)

    def alphas(self, bits: Optional[int] = None) -> list[Scalar]:
        return [r.scalar(bits or self.precision_bits) for r in self.alpha]

    def eps_rationals(self) -> list:
        return _require_rational(self.eps, "epsilon")

    def x_rationals(self) -> list:
        if self.X is None:
            raise DomainError("instance has no X bounds")
        return _require_rational(self.X, "X")

    def to_json(self):
        out = {
            "kind": "linear_system",
            "m": self.m,
            "n": self.n,
            "theta": [r.serialize() for r in self.theta],
            "alpha": [r.serialize() for r in self.alpha],
            "epsilon": [r.serialize() for r in self.eps],
            "precision_bits": self.precision_bits,
        }
        if self.X is not None:
            out["X"] = [r.serialize() for r in self.X]
        if self.tau is not None:
            out["tau"] = [r.serialize() for r in self.tau]
            out["T"] = [r.serialize() for r in self.T]
        return out

    @staticmethod
    def from_json(data: dict) -> "LinearSystemInstance":
        unknown = set(data) - _LINEAR_FIELDS
        if unknown:
            raise DomainError(f"unknown instance fields: {sorted(unknown)}")
        for req in ("m", "n", "theta", "alpha", "epsilon"):
            if req not in data:
                raise DomainError(f"missing instance field {req!r}")
        return LinearSystemInstance(
            m=int(data["m"]),
            n=int(data["n"]),
            theta=_parse_reals(data["theta"], "theta"),
            alpha=_parse_reals(data["alpha"], "alpha"),
            eps=_parse_reals(data["epsilon"], "epsilon"),
            X=(_parse_reals(data["X"], "X") if "X" in data else None),
            tau=(_parse_reals(data["tau"], "tau") if "tau" in data else None),
            T=(_parse_reals(data["T"], "T") if "T" in data else None),
            precision_bits=int(data.get("precision_bits", DEFAULT_BITS)),
        )


def load_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "kind" not in data:
        raise DomainError("instance file must be an object with a 'kind'")
    if data["kind"] == "kronecker":
        return KroneckerInstance.from_json(data)
    if data["kind"] == "linear_system":
        return LinearSystemInstance.from_json(data)
    raise DomainError(f"unknown instance kind {data['kind']!r}")


def save_instance(inst, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(inst.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
