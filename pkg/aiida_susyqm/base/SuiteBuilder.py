import types
from typing import Callable, Optional, Type

from aiida.engine import WorkChain

from ..suites.SuiteBase import VerificationSuite
from .Evaluation import EvalWorkChainCheck
from .Extractors import BasicExtractor, max_residual


def _bind(base: Type[WorkChain], **attributes) -> Type[WorkChain]:
    """Subclass ``base`` with class attributes set, under the base's name and module.

    Keeping the qualified name lets AiiDA resolve the process class of a
    locally run node; the class is still not importable by a daemon.
    """
    bound = types.new_class(base.__name__, (base,), exec_body=lambda namespace: namespace.update(attributes))
    bound.__qualname__ = base.__qualname__
    bound.__module__ = base.__module__
    return bound


class SuiteBuilder:
    """Wire a suite WorkChain to an evaluator and an extractor at runtime.

    Suites built here can only be ``run()``; use the static suites in
    ``aiida_susyqm.workflows`` for ``submit()``.
    """

    def __init__(self, suite_workchain: Type[WorkChain], evaluator_workchain: Type[WorkChain], extractor: Callable):
        self.suite_workchain = suite_workchain
        self.evaluator_workchain = evaluator_workchain
        self.extractor = extractor

    def get_suite(self) -> Type[WorkChain]:
        return _bind(self.suite_workchain, evaluator_workchain=self.evaluator_workchain, extractor=self.extractor)

    @classmethod
    def from_check(
        cls,
        check_workchain: Type[WorkChain],
        extractor: Optional[Callable] = None,
        penalty: float = 1e10,
        suite_workchain: Type[WorkChain] = VerificationSuite,
        evaluator_base: Type[WorkChain] = EvalWorkChainCheck,
    ) -> "SuiteBuilder":
        """Suite running ``check_workchain`` once per target, scored by its ``max_residual``."""
        return cls(
            suite_workchain=suite_workchain,
            evaluator_workchain=_bind(evaluator_base, check_workchain=check_workchain),
            extractor=extractor or BasicExtractor(node_extractor=max_residual, penalty=penalty),
        )
