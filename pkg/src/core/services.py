"""Command orchestration: one VerificationReport per CLI command."""

import os
import time
import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config.settings import RunConfig, Settings
from ..domain.errors import UsageError
from ..domain.models import EnsembleSpec, Family, MatrixPolynomial, ScalarPolynomial
from ..domain.reports import VerificationReport
from ..infrastructure.polynomial_store import PolynomialStore
from . import ensembles, matpoly, numerics, verify

# a root exceeding the Cauchy bound by more than this is a failure
CAUCHY_SLACK = 1e-8
# relative tolerance on the n^(2/3) moduli of the non-commuting counterexample
COUNTEREXAMPLE_RTOL = 1e-5


class VerificationService:
    """Maps each command to library calls and assembles its report."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.logger = logging.getLogger(__name__)
        self.store = PolynomialStore(indent=settings.output.json_indent)

        self._handlers: Dict[str, Callable[[RunConfig, VerificationReport], None]] = {
            "eig": self._eig,
            "bounds cauchy": self._bounds_cauchy,
            "verify ds": self._verify_ds,
            "verify schur": self._verify_schur,
            "verify unit-circle": self._verify_unit_circle,
            "verify unitary": self._verify_unitary,
            "extremal inf": self._extremal_inf,
            "extremal sup": self._extremal_sup,
            "extremal schur-sup": self._extremal_schur_sup,
            "counterexample": self._counterexample,
            "example mass-spring": self._mass_spring,
            "sweep": self._sweep,
        }

    @property
    def commands(self) -> List[str]:
        return list(self._handlers)

    def run(self, config: RunConfig) -> VerificationReport:
        """Execute one command and return its report."""
        handler = self._handlers.get(config.command)
        if handler is None:
            raise UsageError(f"unknown command {config.command!r}")

        start_time = time.perf_counter()
        report = VerificationReport(command=config.command, config=config.echo())
        handler(config, report)
        elapsed = time.perf_counter() - start_time
        if config.timing:
            report.runtime_s = round(elapsed, 3)

        self.logger.info(
            f"{config.command}: {len(report.instances)} instance(s), "
            f"pass={report.passed}, {elapsed:.2f}s"
        )
        return report

    # -- helpers -----------------------------------------------------------------

    def _require(self, config: RunConfig, name: str):
        value = getattr(config, name)
        if value is None:
            raise UsageError(f"{config.command} needs --{name}")
        return value

    def _param(self, config: RunConfig, name: str, default):
        # an explicit 0 must reach validation
        value = getattr(config, name)
        return default if value is None else value

    def _load_input(self, config: RunConfig) -> MatrixPolynomial:
        return self.store.load(self._require(config, "input_path"))

    def _input_id(self, config: RunConfig) -> str:
        return os.path.basename(config.input_path)

    def _emit(self, config: RunConfig, P: MatrixPolynomial) -> None:
        if config.emit_path:
            self.store.save(P, config.emit_path)

    def _trials(self, config: RunConfig) -> int:
        trials = config.trials if config.trials is not None else self.settings.campaign.default_trials
        if trials < 0:
            raise UsageError(f"--trials must be nonnegative, got {trials}")
        return trials

    def _workers(self, config: RunConfig) -> int:
        return config.workers if config.workers is not None else self.settings.campaign.workers

    def _birkhoff_terms(self, config: RunConfig) -> Optional[int]:
        return config.k if config.k is not None else self.settings.campaign.birkhoff_terms

    def _seeds(self, config: RunConfig) -> List[int]:
        return [config.seed + t for t in range(self._trials(config))]

    # -- commands ------------------------------------------------------------------

    def _eig(self, config: RunConfig, report: VerificationReport) -> None:
        P = self._load_input(config)
        tol = config.tol if config.tol is not None else matpoly.EIGENVALUE_TOL
        spectrum = matpoly.polyeig(P, tol=tol)
        instance = {"id": self._input_id(config), "n": P.n, "m": P.m}
        instance.update(spectrum.to_dict())
        instance["pass"] = True
        report.add(instance)
        report.track_margin("backward_error_headroom", tol - float(spectrum.residuals.max()))

    def _bounds_cauchy(self, config: RunConfig, report: VerificationReport) -> None:
        P = self._load_input(config)
        if P.n == 1:
            p = ScalarPolynomial.trimmed([c[0, 0] for c in P.coeffs])
        else:
            p = matpoly.det_poly(P)
        bound = verify.cauchy_bound(p)
        roots = numerics.scalar_roots(p)
        margin = bound - roots.max_modulus
        report.add({
            "id": self._input_id(config),
            "polynomial": p.to_dict(),
            "bound": bound,
            "max_modulus": roots.max_modulus,
            "moduli": [float(x) for x in roots.moduli],
            "margin": margin,
            "pass": margin >= -CAUCHY_SLACK,
        })
        report.track_margin("cauchy", margin)

    def _verify_ds(self, config: RunConfig, report: VerificationReport) -> None:
        if config.input_path:
            polynomials = [(self._input_id(config), self._load_input(config))]
        else:
            n, m = self._param(config, "n", 3), self._param(config, "m", 3)
            k = self._birkhoff_terms(config)
            polynomials = [
                (f"trial-{seed}", ensembles.random_D_polynomial(n, m, k, seed))
                for seed in self._seeds(config)
            ]
        tol = config.tol if config.tol is not None else ensembles.VALIDATE_TOL

        def check(item):
            instance_id, P = item
            annulus = verify.annulus_check(P, instance_id, tol=tol)
            points = verify.unit_circle_eigs(P)
            instance = annulus.to_dict()
            instance["unit_circle_points"] = len(points)
            if P.m >= 2 and annulus.distinct < 2:
                instance["pass"] = False
            return annulus, instance

        for annulus, instance in verify.run_trials(check, polynomials, self._workers(config)):
            report.add(instance)
            report.track_margin("inner", annulus.inner_margin)
            report.track_margin("outer", annulus.outer_margin)

    def _verify_schur(self, config: RunConfig, report: VerificationReport) -> None:
        r = config.r if config.r is not None else 1.0
        if config.input_path:
            polynomials = [(self._input_id(config), self._load_input(config))]
        else:
            n, m = self._param(config, "n", 3), self._param(config, "m", 3)
            polynomials = [
                (f"trial-{seed}", ensembles.random_commuting_sr(n, m, r, seed))
                for seed in self._seeds(config)
            ]
        tol = config.tol if config.tol is not None else ensembles.SR_VALIDATE_TOL

        def check(item):
            instance_id, P = item
            return verify.disc_check(P, r, instance_id, tol=tol)

        for disc in verify.run_trials(check, polynomials, self._workers(config)):
            report.add(disc.to_dict())
            report.track_margin("disc", disc.margin)

    def _verify_unit_circle(self, config: RunConfig, report: VerificationReport) -> None:
        if config.input_path:
            polynomials = [(self._input_id(config), self._load_input(config))]
        else:
            n, m = self._param(config, "n", 3), self._param(config, "m", 3)
            k = self._birkhoff_terms(config)
            # every fourth trial gets a rank-one leading coefficient
            polynomials = [
                (f"trial-{seed}",
                 ensembles.random_ds_polynomial(n, m, k, seed, singular_leading=seed % 4 == 3))
                for seed in self._seeds(config)
            ]
        tol = config.tol if config.tol is not None else verify.UNIT_CIRCLE_TOL

        def check(item):
            instance_id, P = item
            return verify.unit_circle_report(P, instance_id, tol=tol)

        for circle in verify.run_trials(check, polynomials, self._workers(config)):
            report.add(circle.to_dict())
            report.track_margin("residual_headroom", tol - max(res for _, res in circle.points))

    def _verify_unitary(self, config: RunConfig, report: VerificationReport) -> None:
        n, m = self._param(config, "n", 3), self._param(config, "m", 3)

        def check(seed):
            P = ensembles.random_unitary_polynomial(n, m, seed)
            return verify.annulus_check(P, f"trial-{seed}", family=Family.UNITARY, tol=config.tol)

        for annulus in verify.run_trials(check, self._seeds(config), self._workers(config)):
            report.add(annulus.to_dict())
            report.track_margin("inner", annulus.inner_margin)
            report.track_margin("outer", annulus.outer_margin)

    def _extremal_inf(self, config: RunConfig, report: VerificationReport) -> None:
        r = self._require(config, "r")
        P, d = ensembles.extremal_inf_witness(r)
        spectrum = matpoly.polyeig(P)
        smallest = spectrum.min_modulus
        report.add({
            "id": f"inf-witness-r{r}",
            "d": d,
            "min_modulus": smallest,
            "moduli": [float(x) for x in spectrum.moduli],
            "pass": verify.ANNULUS_INNER < smallest < r,
        })
        report.track_margin("below_r", r - smallest)
        self._emit(config, P)

    def _extremal_sup(self, config: RunConfig, report: VerificationReport) -> None:
        m = self._require(config, "m")
        P = ensembles.extremal_sup_witness(m)
        spectrum = matpoly.polyeig(P)
        report.add({
            "id": f"sup-witness-m{m}",
            "max_modulus": spectrum.max_modulus,
            "moduli": [float(x) for x in spectrum.moduli],
            "pass": spectrum.max_modulus < verify.ANNULUS_OUTER,
        })
        report.track_margin("outer", verify.ANNULUS_OUTER - spectrum.max_modulus)
        self._emit(config, P)

    def _extremal_schur_sup(self, config: RunConfig, report: VerificationReport) -> None:
        m, n_param = self._require(config, "m"), self._require(config, "n")
        r = config.r if config.r is not None else 1.0
        P = ensembles.schur_sup_witness(m, n_param, r)
        disc = verify.disc_check(P, r, f"schur-sup-m{m}-n{n_param}")
        report.add(disc.to_dict())
        report.track_margin("disc", disc.margin)
        self._emit(config, P)

    def _counterexample(self, config: RunConfig, report: VerificationReport) -> None:
        kind = config.kind or "noncommuting"
        if kind == "noncommuting":
            n_param = self._param(config, "n", 8)
            P = ensembles.noncommuting_counterexample(n_param)
            spectrum = matpoly.polyeig(P)
            expected = n_param ** (2.0 / 3.0)
            nonzero = np.sort(spectrum.moduli)[1:]
            matches = bool(np.allclose(nonzero, expected, rtol=COUNTEREXAMPLE_RTOL, atol=0.0))
            failed = ensembles.sr_violations(P, r=1.0)
            report.add({
                "id": f"noncommuting-n{n_param}",
                "failed_predicates": failed,
                "expected_modulus": expected,
                "max_modulus": spectrum.max_modulus,
                "moduli": [float(x) for x in spectrum.moduli],
                "pass": matches and failed == ["commutativity"],
            })
        elif kind == "ds-endpoint":
            n = self._param(config, "n", 3)
            P = ensembles.ds_endpoint_counterexample(n)
            spectrum = matpoly.polyeig(P)
            failed = ensembles.D_violations(P)
            report.add({
                "id": f"ds-endpoint-n{n}",
                "failed_predicates": failed,
                "min_modulus": spectrum.min_modulus,
                "moduli": [float(x) for x in spectrum.moduli],
                "pass": failed == ["permutation_ends"]
                and spectrum.min_modulus < verify.ANNULUS_INNER,
            })
        else:
            raise UsageError(f"unknown counterexample kind {kind!r}")
        self._emit(config, P)

    def _mass_spring(self, config: RunConfig, report: VerificationReport) -> None:
        size = self._param(config, "size", 50)
        P = ensembles.mass_spring(size)
        # the ∞-norm disc radius, plus the vanishing ε that makes the inequality strict
        norm_radius = max(numerics.inf_norm(c) for c in P.coeffs[:-1])
        r_declared = norm_radius * (1.0 + 1e-12)
        disc = verify.disc_check(P, r_declared, f"mass-spring-N{size}")
        instance = disc.to_dict()
        instance["norm_radius"] = norm_radius
        instance["norm_bound"] = norm_radius + 1.0
        instance["pass"] = disc.passed and disc.max_modulus <= norm_radius + 1.0
        report.add(instance)
        report.track_margin("disc", disc.margin)
        self._emit(config, P)

    def _sweep(self, config: RunConfig, report: VerificationReport) -> None:
        family = Family(config.family or Family.D.value)
        campaign = self.settings.campaign
        r = config.r if config.r is not None else (1.0 if family is Family.SR else None)
        spec = EnsembleSpec(
            family=family,
            n=self._param(config, "n", 3),
            m=self._param(config, "m", 3),
            r=r,
            trials=self._trials(config),
            seed=config.seed,
            k=self._birkhoff_terms(config),
        )
        sweep = verify.sweep_extremes(
            spec,
            workers=self._workers(config),
            inf_radii=campaign.inf_witness_radii,
            sup_max_degree=campaign.sup_witness_max_degree,
            schur_ladder=campaign.schur_witness_ladder,
        )
        instance = sweep.to_dict()
        instance["id"] = f"sweep-{family.value}"
        report.add(instance)
        report.track_margin("inf", sweep.observed_min - sweep.analytic_inf)
        report.track_margin("sup", sweep.analytic_sup - sweep.observed_max)
