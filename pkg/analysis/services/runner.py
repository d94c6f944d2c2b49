"""
Run service orchestrator.

Resolves a validated RunConfig into kernels, point sets and matrices,
dispatches to the analysis services and assembles the report.
"""

import logging
from typing import Any, Callable, Dict, Mapping, Optional

from django.conf import settings

from rkhs_douglas import __version__

from .config import RunConfig, validate_run_config
from .counterexample import (
    build_counterexample,
    counterexample_majorization,
    counterexample_operator_identity,
    forced_coefficient_check,
    growth_report,
    minimal_norm_solve,
    norm_lower_bound,
)
from .douglas import corona_block_matrix, douglas_solve
from .exceptions import MatrixValidationError, ParseError
from .io import (
    load_json,
    parse_kernel,
    parse_point_argument,
    polynomial_matrix_to_json,
    read_matrix_pair,
    read_points,
    read_polynomial_matrix,
    read_polynomial_pair,
)
from .kernels import KernelSpec, PointSet, gram, sample_points
from .pick import (
    diagonal_np_oracle,
    dominance_constant,
    falsify_np,
    kernel_dominance,
    np_test,
    psd_check,
)
from .pick.schur import origin
from .reports import Report, format_cell
from .shifts import verify_identities, verify_identity

logger = logging.getLogger(__name__)

# Points sampled for the counterexample majorization check when none are given
COUNTEREXAMPLE_SAMPLE_SIZE = 6


class RunService:
    """
    Main service for command runs.

    This service:
    - Merges settings, config files and flags into a RunConfig
    - Resolves kernels, point sets and matrix inputs
    - Dispatches to the analysis services
    - Builds reports that embed the config, tool version and seed
    """

    def __init__(self):
        self.config = settings.RKHS_CONFIG
        self._handlers: Dict[str, Callable[[RunConfig], Report]] = {
            "np-test": self._np_test,
            "np-oracle": self._np_oracle,
            "gram": self._gram,
            "douglas-solve": self._douglas_solve,
            "corona-check": self._corona_check,
            "verify-identity": self._verify_identity,
            "counterexample": self._counterexample,
            "growth-report": self._growth_report,
            "falsify": self._falsify,
            "dominance": self._dominance,
        }

    def build_config(
        self,
        command: str,
        flags: Optional[Mapping[str, Any]] = None,
        config_file: Optional[str] = None,
    ) -> RunConfig:
        """
        Validate options for a command.

        Raises:
            ConfigError: If the options are invalid
            ParseError: If the config file cannot be read
        """
        file_config = None
        if config_file:
            file_config = load_json(config_file)
            if not isinstance(file_config, dict):
                raise ParseError("Config file must hold a JSON object", config_file)
        return validate_run_config(command, flags, self.config, file_config)

    def run(self, run_config: RunConfig) -> Report:
        """
        Execute one command.

        Returns:
            Report; ``passed`` tells whether the verdict met expectations

        Raises:
            RKHSError: Any domain error from the services
        """
        logger.info(f"Running {run_config.command} (seed={run_config.seed})")
        report = self._handlers[run_config.command](run_config)
        logger.info(f"Finished {run_config.command}: passed={report.passed}")
        return report

    def _report(self, rc: RunConfig, result: Dict[str, Any], passed: bool, **kwargs) -> Report:
        return Report(
            command=rc.command,
            config=rc.to_dict(),
            tool_version=__version__,
            seed=rc.seed,
            result=result,
            passed=bool(passed),
            **kwargs,
        )

    def _kernel(self, rc: RunConfig, option: str = "kernel") -> KernelSpec:
        return parse_kernel(rc.get(option))

    def _points(self, rc: RunConfig, spec: KernelSpec) -> PointSet:
        if rc.points:
            return read_points(rc.points)
        return sample_points(spec, rc.random_points, rc.seed)

    def _base(self, rc: RunConfig, spec: KernelSpec):
        if rc.base is None:
            return origin(spec)
        return parse_point_argument(rc.base)

    def _np_test(self, rc: RunConfig) -> Report:
        spec = self._kernel(rc)
        pts = self._points(rc, spec)
        report = np_test(
            spec,
            pts,
            self._base(rc, spec),
            rc.tolerance,
            seed=rc.seed,
            margin=self.config["point_margin"],
        )
        return self._report(rc, report.to_dict(), passed=report.is_psd is True)

    def _np_oracle(self, rc: RunConfig) -> Report:
        verdict = diagonal_np_oracle(self._kernel(rc), rc.order)
        return self._report(rc, verdict.to_dict(), passed=verdict.is_np)

    def _gram(self, rc: RunConfig) -> Report:
        spec = self._kernel(rc)
        pts = self._points(rc, spec)
        matrix = gram(spec, pts, self.config["point_margin"])
        verdict = psd_check(matrix, rc.tolerance)
        cells = matrix.exact if matrix.exact is not None else matrix.entries.tolist()
        result = {
            "kernel": spec.to_dict(),
            "points": pts.to_list(),
            "matrix": matrix.to_list(),
            "exact": None if matrix.exact is None else [[str(v) for v in row] for row in matrix.exact],
            "verdict": verdict.to_dict(),
        }
        header = [f"p{j}" for j in range(matrix.size)]
        return self._report(rc, result, passed=verdict.is_psd, table=(header, cells))

    def _douglas_solve(self, rc: RunConfig) -> Report:
        a, b = read_matrix_pair(rc.matrices)
        result = douglas_solve(a, b, rc.rank_tolerance)
        return self._report(rc, result.to_dict(), passed=result.is_contraction)

    def _corona_check(self, rc: RunConfig) -> Report:
        spec = self._kernel(rc)
        phi, psi = read_polynomial_pair(rc.multipliers)
        pts = self._points(rc, spec)
        block = corona_block_matrix(phi, psi, spec, pts, self.config["point_margin"])
        verdict = psd_check(block, rc.tolerance)
        result = {
            "kernel": spec.to_dict(),
            "points": pts.to_list(),
            "block_size": block.size,
            "block_matrix": block.to_list(),
            "verdict": verdict.to_dict(),
            "is_psd": verdict.is_psd,
            "min_eigenvalue": verdict.min_eigenvalue,
            "evidence_only": verdict.is_psd,
        }
        return self._report(rc, result, passed=verdict.is_psd)

    @staticmethod
    def _identity_passed(report) -> bool:
        passed = report.exact_zero and report.min_diagonal >= 0
        if report.displayed_identity is not None:
            passed = passed and report.displayed_identity
        return bool(passed)

    def _verify_identity(self, rc: RunConfig) -> Report:
        if rc.n_max is not None:
            return self._verify_identity_range(rc)
        report = verify_identity(rc.space, rc.n, rc.degree)
        passed = self._identity_passed(report)
        text_lines = []
        if report.defect_entries:
            text_lines.append("defects (source -> target: value):")
            text_lines.extend(
                f"  {d.source} -> {d.target}: {format_cell(d.value)}" for d in report.defect_entries
            )
        return self._report(rc, report.to_dict(), passed=passed, text_lines=text_lines)

    def _verify_identity_range(self, rc: RunConfig) -> Report:
        tasks = [(rc.space, n, rc.degree or n + 8) for n in range(rc.n, rc.n_max + 1)]
        reports = verify_identities(tasks, workers=rc.workers)
        rows = [
            (r.n, r.max_degree, r.exact_zero, r.min_diagonal, self._identity_passed(r))
            for r in reports
        ]
        result = {
            "space": rc.space,
            "reports": [r.to_dict() for r in reports],
            "all_passed": all(row[-1] for row in rows),
        }
        return self._report(
            rc,
            result,
            passed=result["all_passed"],
            table=(("N", "max_degree", "exact_zero", "min_diagonal", "passed"), rows),
        )

    def _counterexample(self, rc: RunConfig) -> Report:
        n = rc.n
        instance = build_counterexample(n)
        certificate = minimal_norm_solve(
            n,
            degree_bound=rc.degree_bound,
            torus_grid_size=rc.grid,
            search_grid_size=rc.search_grid,
            max_evaluations=rc.max_evaluations,
        )
        bidisk = KernelSpec.builtin("hardy_bidisk")
        if rc.points:
            pts = read_points(rc.points)
        else:
            pts = sample_points(bidisk, rc.random_points or COUNTEREXAMPLE_SAMPLE_SIZE, rc.seed)
        majorization = counterexample_majorization(n, pts, rc.tolerance)
        operator_identity = counterexample_operator_identity(n, rc.degree or n + 8)

        result = {
            "instance": instance.to_dict(),
            "lower_bound": norm_lower_bound(n).to_dict(),
            "certificate": certificate.to_dict(),
            "majorization": majorization.to_dict(),
            "operator_identity": operator_identity.to_dict(),
        }
        passed = certificate.optimal and all(certificate.forced_coefficients)
        passed = passed and majorization.is_psd and operator_identity.exact_zero
        if rc.solution:
            solution = read_polynomial_matrix(rc.solution)
            result["solution"] = polynomial_matrix_to_json(solution)
            result["solution_forced_coefficients"] = forced_coefficient_check(n, solution)
        return self._report(rc, result, passed=passed)

    def _growth_report(self, rc: RunConfig) -> Report:
        report = growth_report(
            rc.n_max,
            degree_bound=rc.degree_bound,
            torus_grid_size=rc.grid,
            search_grid_size=rc.search_grid,
            max_evaluations=rc.max_evaluations,
            workers=rc.workers,
        )
        rows = [(row.n, row.lower_bound, row.achieved_norm, row.optimal) for row in report.rows]
        passed = report.strictly_increasing and all(row.optimal for row in report.rows)
        return self._report(
            rc,
            report.to_dict(),
            passed=passed,
            table=(("N", "lower_bound", "achieved_norm", "optimal"), rows),
        )

    def _falsify(self, rc: RunConfig) -> Report:
        spec = self._kernel(rc)
        base = None if rc.base is None else parse_point_argument(rc.base)
        report = falsify_np(spec, rc.trials, rc.size, rc.seed, rc.tolerance, base=base)
        result = {
            "kernel": spec.to_dict(),
            "trials": rc.trials,
            "size": rc.size,
            "falsified": report is not None,
            "report": None if report is None else report.to_dict(),
        }
        return self._report(rc, result, passed=report is None)

    def _dominance(self, rc: RunConfig) -> Report:
        lower = self._kernel(rc)
        upper = self._kernel(rc, "upper")
        pts = self._points(rc, lower)
        verdict = kernel_dominance(lower, upper, pts, rc.scale_fraction, rc.tolerance)
        try:
            constant = dominance_constant(lower, upper, pts)
        except MatrixValidationError as e:
            logger.warning(f"No dominance constant: {e}")
            constant = None
        result = {
            "lower": lower.to_dict(),
            "upper": upper.to_dict(),
            "scale": rc.scale_fraction,
            "points": pts.to_list(),
            "verdict": verdict.to_dict(),
            "is_psd": verdict.is_psd,
            "min_eigenvalue": verdict.min_eigenvalue,
            "dominance_constant": constant,
        }
        return self._report(rc, result, passed=verdict.is_psd)
