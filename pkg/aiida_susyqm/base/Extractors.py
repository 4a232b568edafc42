from typing import Callable

from aiida.common.exceptions import NotExistent
from aiida.orm import load_node


class BasicExtractor:
    """Score each evaluation record with one number; unreadable nodes get ``penalty``.

    Check WorkChains that exceed a threshold finish with a non-zero exit
    status but still attach their outputs, so failed records are read too.
    """

    def __init__(self, node_extractor: Callable, penalty=1e+10):
        self.node_extractor = node_extractor
        self.penalty = penalty

    def value_of(self, pk) -> float:
        try:
            output = self.node_extractor(load_node(pk).outputs)
        except (NotExistent, KeyError, AttributeError):
            return self.penalty
        if output is None:
            return self.penalty
        # nodes carry .value, plain Python results do not
        return getattr(output, "value", output)

    def __call__(self, results: list) -> list:
        return [self.value_of(item.get("pk")) for item in results]

    def get_penalty(self):
        return self.penalty


def max_residual(outputs):
    return outputs["max_residual"]


def passed(outputs):
    return outputs["passed"]
