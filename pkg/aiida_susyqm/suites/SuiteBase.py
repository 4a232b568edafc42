from typing import Callable, Type

from aiida.engine import WorkChain, run
from aiida.orm import Bool, Dict, Float, List


class VerificationSuite(WorkChain):
    """Run a batch of check WorkChains and reduce them to one verdict."""

    evaluator_workchain: Type[WorkChain]
    extractor: Callable

    @classmethod
    def define(cls, spec):
        assert cls.evaluator_workchain is not None, "evaluator must be set"
        assert cls.extractor is not None, "extractor must be set"

        super().define(spec)
        spec.input("targets", valid_type=List, help="Parameter sets, one check per entry.")
        spec.input(
            "common",
            valid_type=Dict,
            default=lambda: Dict({}),
            help="Parameters shared by every target.",
        )

        spec.outline(cls.initialize, cls.run_checks, cls.finalize)

        spec.output("passed", valid_type=Bool, help="True when every check finished ok.")
        spec.output("worst_residual", valid_type=Float, help="Largest extracted residual.")
        spec.output("residuals", valid_type=List, help="Extracted residual per target.")
        spec.output(
            "failed_targets",
            valid_type=List,
            required=False,
            help="Targets whose check failed, with the check node pk.",
        )

    def initialize(self):
        self.ctx.targets = self.inputs.targets.get_list()
        if not self.ctx.targets:
            raise ValueError("Verification suite needs at least one target.")

    def run_checks(self):
        outputs = run(self.evaluator_workchain, targets=self.inputs.targets, common=self.inputs.common)
        self.ctx.results = outputs["evaluation_results"].get_list()
        self.ctx.residuals = [float(v) for v in self.extractor(self.ctx.results)]
        self.ctx.failed = [
            {"target": target, "pk": item["pk"]}
            for target, item in zip(self.ctx.targets, self.ctx.results)
            if item["status"] != "ok"
        ]
        self.report(f"{len(self.ctx.results) - len(self.ctx.failed)}/{len(self.ctx.results)} checks passed")

    def finalize(self):
        self.out("passed", Bool(not self.ctx.failed).store())
        self.out("worst_residual", Float(max(self.ctx.residuals)).store())
        self.out("residuals", List(list=self.ctx.residuals).store())
        if self.ctx.failed:
            self.out("failed_targets", List(list=self.ctx.failed).store())
