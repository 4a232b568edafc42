from typing import Type

from aiida.engine import ToContext, WorkChain
from aiida.orm import Dict, List


class EvalWorkChainCheck(WorkChain):
    """Run the bound check WorkChain once per target.

    Each target is a mapping of run configuration keys. Keys from ``common``
    are filled in underneath it, so a target's own value always wins.
    """

    check_workchain: Type[WorkChain]

    @classmethod
    def define(cls, spec):
        assert cls.check_workchain is not None, "check must be set"
        super().define(spec)
        spec.input("targets", valid_type=List, help="Run configurations to verify")
        spec.input(
            "common",
            valid_type=Dict,
            default=lambda: Dict({}),
            help="Configuration keys shared by every target",
        )
        spec.outline(cls.merge_targets, cls.evaluate, cls.result)
        spec.output(
            "evaluation_results",
            valid_type=List,
            help="One {pk, status, exit_status} record per target, in target order",
        )

    def merge_targets(self):
        common = self.inputs.common.get_dict()
        merged = []
        for target in self.inputs.targets.get_list():
            if not isinstance(target, dict):
                raise ValueError(f"Target {target} is not a parameter mapping.")
            merged.append({**common, **target})
        self.ctx.parameters = merged

    def evaluate(self):
        self.report(f"Submitting {len(self.ctx.parameters)} {self.check_workchain.__name__} runs")
        futures = {
            f"eval_{idx}": self.submit(self.check_workchain, parameters=Dict(parameters))
            for idx, parameters in enumerate(self.ctx.parameters)
        }
        return ToContext(**futures)

    def result(self):
        records = []
        for idx in range(len(self.ctx.parameters)):
            node = self.ctx[f"eval_{idx}"]
            records.append(
                {
                    "pk": node.pk,
                    "status": "ok" if node.is_finished_ok else "failed",
                    "exit_status": node.exit_status,
                }
            )
        self.out("evaluation_results", List(list=records).store())
