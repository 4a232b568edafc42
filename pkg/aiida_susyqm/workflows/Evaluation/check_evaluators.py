from ...base.Evaluation import EvalWorkChainCheck
from ...problems.checks import CliffordCheck, ClosureCheck, SpectrumCheck, SS4Check, ZeroModeCheck


class CliffordEvaluator(EvalWorkChainCheck):
    check_workchain = CliffordCheck


class SS4Evaluator(EvalWorkChainCheck):
    check_workchain = SS4Check


class ClosureEvaluator(EvalWorkChainCheck):
    check_workchain = ClosureCheck


class SpectrumEvaluator(EvalWorkChainCheck):
    check_workchain = SpectrumCheck


class ZeroModeEvaluator(EvalWorkChainCheck):
    check_workchain = ZeroModeCheck
