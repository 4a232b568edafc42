import json
import math

from aiida.engine import WorkChain
from aiida.orm import Bool, Dict, Float

from ..cli.config import RunConfig
from ..cli.main import run
from ..cli.render import render_json

__all__ = ["CliffordCheck", "ClosureCheck", "SS4Check", "SpectrumCheck", "ZeroModeCheck"]

FAILED_RESIDUAL = 1e+10


def _storable(value):
    """JSON-clean copy: no periods in mapping keys, non-finite floats as strings."""
    if isinstance(value, dict):
        return {str(k).replace(".", "_"): _storable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_storable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class _basicCheck(WorkChain):
    command: str

    @classmethod
    def define(cls, spec):
        super().define(spec)
        spec.input(
            "parameters",
            valid_type=Dict,
            default=lambda: Dict({}),
            help="Run configuration overrides (system, k, omega, w, tol, ...).",
        )
        spec.outline(cls.run_check, cls.finalize)
        spec.output("report", valid_type=Dict, help="Checks and result payload of the run.")
        spec.output("passed", valid_type=Bool)
        spec.output("max_residual", valid_type=Float, help="Largest residual over all numeric checks.")
        spec.exit_code(300, "ERROR_CHECK_FAILED", message="At least one check exceeded its threshold.")
        spec.exit_code(301, "ERROR_INVALID_PARAMETERS", message="The run configuration was rejected.")

    def run_check(self):
        parameters = self.inputs.parameters.get_dict()
        try:
            cfg = RunConfig(command=self.command, **parameters)
        except (TypeError, ValueError) as error:
            self.report(f"Invalid parameters {parameters}: {error}")
            return self.exit_codes.ERROR_INVALID_PARAMETERS
        _, payload, _ = run(cfg)
        self.ctx.payload = _storable(json.loads(render_json(payload)))
        residuals = [check["residual"] for check in payload["checks"] if "residual" in check]
        errors = [check for check in payload["checks"] if "error" in check]
        # errored runs carry no residual
        self.ctx.max_residual = FAILED_RESIDUAL if errors else min(max(residuals, default=0.0), FAILED_RESIDUAL)
        self.ctx.passed = payload["pass"]
        self.report(f"{self.command}: {len(payload['checks'])} checks, passed={payload['pass']}")

    def finalize(self):
        self.out("report", Dict(self.ctx.payload).store())
        self.out("passed", Bool(self.ctx.passed).store())
        self.out("max_residual", Float(self.ctx.max_residual).store())
        if not self.ctx.passed:
            return self.exit_codes.ERROR_CHECK_FAILED


class CliffordCheck(_basicCheck):
    """Defining relations of the four generator families and the derived bilinears."""

    command = "verify clifford"


class SS4Check(_basicCheck):
    """Supersymmetry algebra of a one- or three-dimensional realization."""

    command = "verify ss4"


class ClosureCheck(_basicCheck):
    """Structure-constant closure of a named algebra table; needs ``algebra`` in the parameters."""

    command = "verify closure"


class SpectrumCheck(_basicCheck):
    command = "spectrum"


class ZeroModeCheck(_basicCheck):
    command = "zero-modes"
