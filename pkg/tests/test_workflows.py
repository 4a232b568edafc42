from types import SimpleNamespace

import pytest
from aiida.common.exceptions import NotExistent

from aiida_susyqm.base import BasicExtractor, Extractors, SuiteBuilder
from aiida_susyqm.base.Extractors import max_residual
from aiida_susyqm.problems import ClosureCheck, CliffordCheck, SS4Check
from aiida_susyqm.problems.checks import FAILED_RESIDUAL, _storable
from aiida_susyqm.suites.SuiteBase import VerificationSuite
from aiida_susyqm.workflows.Evaluation.check_evaluators import CliffordEvaluator
from aiida_susyqm.workflows.Verification.suites import CliffordSuite


def test_storable_cleans_keys_and_infinities():
    payload = {"checks": [{"name": "SS4.{Q+1,Q-1}", "residual": float("inf")}], "a.b": {"c.d": 1.0}}
    assert _storable(payload) == {
        "checks": [{"name": "SS4.{Q+1,Q-1}", "residual": "inf"}],
        "a_b": {"c_d": 1.0},
    }


def test_extractor_penalizes_missing_nodes(monkeypatch):
    nodes = {1: SimpleNamespace(outputs={"max_residual": SimpleNamespace(value=2e-14)}), 2: SimpleNamespace(outputs={})}

    def fake_load_node(pk):
        if pk not in nodes:
            raise NotExistent(f"no node {pk}")
        return nodes[pk]

    monkeypatch.setattr(Extractors, "load_node", fake_load_node)
    extractor = BasicExtractor(node_extractor=max_residual, penalty=99.0)
    results = [{"pk": 1, "status": "ok"}, {"pk": 2, "status": "failed"}, {"pk": 3, "status": "failed"}]
    assert extractor(results) == [2e-14, 99.0, 99.0]
    assert extractor.get_penalty() == 99.0


def test_suite_builder_binds_check():
    builder = SuiteBuilder.from_check(CliffordCheck)
    suite = builder.get_suite()
    assert issubclass(suite, VerificationSuite)
    assert suite.__name__ == "VerificationSuite"
    assert suite.evaluator_workchain.check_workchain is CliffordCheck
    assert suite.evaluator_workchain.__name__ == "EvalWorkChainCheck"
    assert suite.extractor.get_penalty() == 1e10


def test_static_suites():
    assert CliffordSuite.evaluator_workchain is CliffordEvaluator
    assert CliffordEvaluator.check_workchain is CliffordCheck
    assert isinstance(CliffordSuite.extractor, BasicExtractor)


def test_clifford_check_workchain(workflow_profile):
    from aiida.engine import run_get_node
    from aiida.orm import Dict

    results, node = run_get_node(CliffordCheck, parameters=Dict({}))
    assert node.is_finished_ok
    assert results["passed"].value is True
    assert results["max_residual"].value == 0.0
    assert results["report"].get_dict()["command"] == "verify clifford"


def test_failed_check_keeps_outputs(workflow_profile):
    from aiida.engine import run_get_node
    from aiida.orm import Dict

    results, node = run_get_node(ClosureCheck, parameters=Dict({"system": "example2", "algebra": "sc4-1"}))
    assert node.exit_status == ClosureCheck.exit_codes.ERROR_CHECK_FAILED.status
    assert results["passed"].value is False
    assert results["max_residual"].value == FAILED_RESIDUAL


def test_invalid_parameters(workflow_profile):
    from aiida.engine import run_get_node
    from aiida.orm import Dict

    _, node = run_get_node(SS4Check, parameters=Dict({"dim": 2}))
    assert node.exit_status == SS4Check.exit_codes.ERROR_INVALID_PARAMETERS.status


def test_suite_reduces_targets(workflow_profile):
    from aiida.engine import run
    from aiida.orm import Dict, List

    targets = List(list=[{"system": "example1", "k": 1.0}, {"system": "example2", "omega": 2.0}])
    outputs = run(CliffordSuite, targets=targets, common=Dict({"format": "json"}))
    assert outputs["passed"].value is True
    assert outputs["residuals"].get_list() == [0.0, 0.0]
    assert "failed_targets" not in outputs


def test_suite_needs_targets(workflow_profile):
    from aiida.engine import run
    from aiida.orm import List

    with pytest.raises(ValueError, match="at least one target"):
        run(CliffordSuite, targets=List(list=[]))
