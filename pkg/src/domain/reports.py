"""Verification report models."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .models import EnsembleSpec, complex_pair

# strict theorem inequalities are accepted within this padding
BOUND_SLACK = 1e-6

ANNULUS_INNER = 0.5
ANNULUS_OUTER = 2.0


@dataclass(frozen=True)
class AnnulusReport:
    """Eigenvalue moduli of one instance against the (1/2, 2) annulus."""
    instance_id: str
    moduli: Tuple[float, ...]
    inner_margin: float
    outer_margin: float
    passed: bool
    distinct: Optional[int] = None

    @classmethod
    def from_moduli(
        cls,
        instance_id: str,
        moduli: Sequence[float],
        slack: float = BOUND_SLACK,
        distinct: Optional[int] = None,
    ) -> "AnnulusReport":
        moduli = tuple(float(x) for x in moduli)
        inner = min(moduli) - ANNULUS_INNER
        outer = ANNULUS_OUTER - max(moduli)
        return cls(
            instance_id=instance_id,
            moduli=moduli,
            inner_margin=inner,
            outer_margin=outer,
            passed=inner > -slack and outer > -slack,
            distinct=distinct,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "id": self.instance_id,
            "moduli": list(self.moduli),
            "inner_margin": self.inner_margin,
            "outer_margin": self.outer_margin,
            "pass": self.passed,
        }
        if self.distinct is not None:
            data["distinct"] = self.distinct
        return data


@dataclass(frozen=True)
class DiscReport:
    """Maximum eigenvalue modulus of one instance against the r_eff + 1 disc."""
    instance_id: str
    moduli: Tuple[float, ...]
    r_declared: float
    r_eff: float
    bound: float
    max_modulus: float
    margin: float
    passed: bool
    diagonal_cauchy: Optional[float] = None

    @classmethod
    def from_moduli(
        cls,
        instance_id: str,
        moduli: Sequence[float],
        r_declared: float,
        r_eff: float,
        slack: float = BOUND_SLACK,
        diagonal_cauchy: Optional[float] = None,
    ) -> "DiscReport":
        moduli = tuple(float(x) for x in moduli)
        max_modulus = max(moduli)
        bound = r_eff + 1.0
        margin = bound - max_modulus
        return cls(
            instance_id=instance_id,
            moduli=moduli,
            r_declared=float(r_declared),
            r_eff=float(r_eff),
            bound=bound,
            max_modulus=max_modulus,
            margin=margin,
            passed=margin > -slack,
            diagonal_cauchy=diagonal_cauchy,
        )

    @property
    def declared_bound(self) -> float:
        return self.r_declared + 1.0

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "id": self.instance_id,
            "moduli": list(self.moduli),
            "r_declared": self.r_declared,
            "declared_bound": self.declared_bound,
            "r_eff": self.r_eff,
            "bound": self.bound,
            "max_modulus": self.max_modulus,
            "margin": self.margin,
            "pass": self.passed,
        }
        if self.diagonal_cauchy is not None:
            data["diagonal_cauchy"] = self.diagonal_cauchy
        return data


@dataclass(frozen=True)
class UnitCircleReport:
    """Confirmed roots of unity for a doubly stochastic polynomial."""
    instance_id: str
    m: int
    points: Tuple[Tuple[complex, float], ...]
    distinct_unit: Optional[int] = None
    remainder: Optional[float] = None
    remainder_scale: Optional[float] = None
    passed: bool = True

    @property
    def moduli(self) -> List[float]:
        return [abs(z) for z, _ in self.points]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.instance_id,
            "m": self.m,
            "points": [complex_pair(z) for z, _ in self.points],
            "residuals": [float(res) for _, res in self.points],
            "moduli": self.moduli,
            "pass": self.passed,
        }
        if self.distinct_unit is not None:
            data["distinct_unit"] = self.distinct_unit
        if self.remainder is not None:
            data["remainder"] = self.remainder
            data["remainder_scale"] = self.remainder_scale
        return data


@dataclass(frozen=True)
class WitnessValue:
    """Extreme modulus reached by one member of a witness sequence."""
    label: str
    parameter: Any
    modulus: float

    def to_dict(self) -> Dict[str, Any]:
        parameter = list(self.parameter) if isinstance(self.parameter, tuple) else self.parameter
        return {"label": self.label, "parameter": parameter, "modulus": self.modulus}


@dataclass(frozen=True)
class SweepReport:
    """Observed extremes of a family against its analytic inf and sup."""
    spec: EnsembleSpec
    observed_min: float
    observed_max: float
    witnesses: Tuple[WitnessValue, ...]
    analytic_inf: float
    analytic_sup: float
    trials_run: int = 0
    slack: float = BOUND_SLACK

    @property
    def passed(self) -> bool:
        return (self.observed_min > self.analytic_inf - self.slack
                and self.observed_max < self.analytic_sup + self.slack)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "observed_min": self.observed_min,
            "observed_max": self.observed_max,
            "analytic_inf": self.analytic_inf,
            "analytic_sup": self.analytic_sup,
            "trials_run": self.trials_run,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "moduli": [self.observed_min, self.observed_max],
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    """Document emitted by every CLI command."""
    command: str
    config: Dict[str, Any]
    instances: List[Dict[str, Any]] = field(default_factory=list)
    worst_margins: Dict[str, float] = field(default_factory=dict)
    passed: bool = True
    runtime_s: Optional[float] = None

    def add(self, instance: Dict[str, Any]) -> None:
        """Append an instance document and fold its verdict into the summary."""
        self.instances.append(instance)
        if instance.get("pass") is False:
            self.passed = False

    def track_margin(self, name: str, value: float) -> None:
        """Keep the smallest value seen for a named margin."""
        current = self.worst_margins.get(name)
        if current is None or value < current:
            self.worst_margins[name] = float(value)

    def to_dict(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "pass": self.passed,
            "instances": len(self.instances),
            "worst_margins": dict(sorted(self.worst_margins.items())),
        }
        if self.runtime_s is not None:
            summary["runtime_s"] = self.runtime_s
        return {
            "command": self.command,
            "config": self.config,
            "instances": self.instances,
            "summary": summary,
        }
