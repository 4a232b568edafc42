from ...base.Extractors import BasicExtractor, max_residual
from ...suites.SuiteBase import VerificationSuite
from ..Evaluation.check_evaluators import (
    CliffordEvaluator,
    ClosureEvaluator,
    SpectrumEvaluator,
    SS4Evaluator,
    ZeroModeEvaluator,
)


class BaseResidualSuite:
    extractor = BasicExtractor(node_extractor=max_residual)


class CliffordSuite(BaseResidualSuite, VerificationSuite):
    evaluator_workchain = CliffordEvaluator


class SS4Suite(BaseResidualSuite, VerificationSuite):
    evaluator_workchain = SS4Evaluator


class ClosureSuite(BaseResidualSuite, VerificationSuite):
    evaluator_workchain = ClosureEvaluator


class SpectrumSuite(BaseResidualSuite, VerificationSuite):
    evaluator_workchain = SpectrumEvaluator


class ZeroModeSuite(BaseResidualSuite, VerificationSuite):
    evaluator_workchain = ZeroModeEvaluator
