"""Report records emitted by every certification routine.

Each check returns a frozen record carrying the named functionals it
computed, the two sides of the inequality or identity it certifies, the
margin ``rhs - lhs``, an equality flag, and the resolution/tolerance at
which it ran.  Records are plain data: nothing here recomputes geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping


def equality_flag(lhs: float, rhs: float, tol: float) -> bool:
    """True when ``|rhs - lhs| <= tol * max(|lhs|, |rhs|, 1)``."""
    return abs(rhs - lhs) <= tol * max(abs(lhs), abs(rhs), 1.0)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one certified inequality or identity."""

    name: str
    lhs: float
    rhs: float
    functionals: Mapping[str, float]
    tolerance: float
    resolution: Mapping[str, int]
    equality: bool
    passed: bool
    notes: tuple[str, ...] = ()

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def __post_init__(self):
        object.__setattr__(self, "functionals", MappingProxyType(dict(self.functionals)))
        object.__setattr__(self, "resolution", MappingProxyType(dict(self.resolution)))

    def as_dict(self) -> dict:
        """Flat dict view used by the CLI writers."""
        out = {"name": self.name}
        out.update(self.functionals)
        out.update(
            lhs=self.lhs,
            rhs=self.rhs,
            margin=self.margin,
            equality=self.equality,
            passed=self.passed,
            tolerance=self.tolerance,
        )
        out.update({f"resolution_{k}": v for k, v in self.resolution.items()})
        if self.notes:
            out["notes"] = "; ".join(self.notes)
        return out


def make_report(name, lhs, rhs, functionals, tol, resolution, passed=None,
                equality=None, notes=()) -> InequalityReport:
    """Assemble a report, deriving the equality flag from the margin."""
    if equality is None:
        equality = equality_flag(lhs, rhs, tol)
    if passed is None:
        passed = rhs - lhs >= -tol * max(abs(lhs), abs(rhs), 1.0)
    return InequalityReport(
        name=name, lhs=float(lhs), rhs=float(rhs),
        functionals={k: float(v) for k, v in functionals.items()},
        tolerance=float(tol), resolution=resolution,
        equality=bool(equality), passed=bool(passed), notes=tuple(notes),
    )
