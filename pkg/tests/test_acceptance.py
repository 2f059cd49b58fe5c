"""Acceptance checks. One test per contract item; `pytest -v` prints one
pass/fail line for each."""

from __future__ import annotations

import json
import time
from collections import Counter

import pytest

from conftest import (
    COLOR_DATASET,
    GRAY_DATASET,
    TABULAR_DATASET,
    conv2d,
    dense,
    activation,
    flatten,
    load_fixture,
    fixture_path,
    pooling,
    random_specs,
    rule_findings,
    rule_skips,
    spec_of,
)
from theia_lint import (
    analyze,
    parse_model_spec,
    parse_report,
    render_machine,
    serialize_model_spec,
)
from theia_lint.cli import EXIT_FINDINGS, EXIT_PASS, EXIT_USAGE, run
from theia_lint.engine import PASS_ONE_RULES, PASS_TWO_RULES


@pytest.fixture(scope="module")
def corpus():
    return random_specs(200)


def test_underspecified_cnn_oracle_trace():
    started = time.perf_counter()
    spec = parse_model_spec(fixture_path("underspecified_cnn.json").read_text(encoding="utf-8"))
    report = analyze(spec)
    elapsed = time.perf_counter() - started

    expected = load_fixture("underspecified_cnn_expected.json")
    rule_ids = {f.rule_id for f in report.findings}
    assert "ICL" in rule_ids
    assert "CNL" in rule_ids
    got = [
        {"rule_id": f.rule_id, "severity": f.severity, "layer_index": f.layer_index}
        for f in report.findings
    ]
    assert got == expected["findings"]
    assert [
        {"rule_id": n.rule_id, "reason": n.reason} for n in report.skip_notes
    ] == expected["skip_notes"]
    assert report.verdict == expected["verdict"]
    assert elapsed < 1.0


def test_rule_fixture_matrix():
    started = time.perf_counter()
    cases = load_fixture("rule_matrix.json")["cases"]
    assert len(cases) == 24
    seen = Counter((case["rule_id"], case["fires"]) for case in cases)
    assert all(count == 1 for count in seen.values())
    assert len({rule_id for rule_id, _ in seen}) == 12

    for case in cases:
        spec = parse_model_spec(json.dumps(case["document"]))
        findings = rule_findings(spec, case["rule_id"])
        assert bool(findings) == case["fires"], case["rule_id"]
        for finding in findings:
            assert finding.rule_id == case["rule_id"]
    assert time.perf_counter() - started < 1.0


def test_boundary_values():
    def fires(rule_id, layers, dataset=None, learner=None):
        return bool(rule_findings(spec_of(layers, dataset, learner), rule_id))

    for value, expect in ((15, True), (16, False), (512, False), (513, True)):
        assert fires("INF", [conv2d(value)], COLOR_DATASET) is expect, value
    for value, expect in ((5, True), (6, False), (256, False), (257, True)):
        assert fires("INF", [conv2d(value)], GRAY_DATASET) is expect, value

    plain = [dense(1)]
    for value, expect in ((0.0001, False), (0.00009, True), (0.01, False), (0.011, True)):
        assert fires("LOB", plain, learner={"learning_rate": value}) is expect, value
    for value, expect in ((31, True), (32, False), (256, False), (257, True)):
        assert fires("IBS", plain, learner={"batch_size": value}) is expect, value

    def conv_stack(count):
        return [conv2d() for _ in range(count)] + [flatten(), dense(10)]

    for count, expect in ((2, True), (3, False)):
        assert fires("ICL", conv_stack(count), COLOR_DATASET) is expect, count
    for count, expect in ((1, True), (2, False)):
        assert fires("ICL", conv_stack(count), GRAY_DATASET) is expect, count

    for count, expect in ((3, False), (4, True)):
        layers = [conv2d(), flatten()] + [dense(16) for _ in range(count)]
        assert fires("IFL", layers, COLOR_DATASET) is expect, count

    for count, expect in ((4, False), (5, True)):
        layers = [conv2d() for _ in range(count)] + [pooling()]
        assert fires("IDS", layers, COLOR_DATASET) is expect, count


def test_engine_decomposition(corpus):
    pass_one = set(PASS_ONE_RULES)
    pass_two = set(PASS_TWO_RULES)
    for spec in corpus:
        report = analyze(spec)
        merged = Counter(report.findings)
        by_rule = Counter()
        for rule_id in sorted(pass_one | pass_two):
            by_rule.update(rule_findings(spec, rule_id))
        assert merged == by_rule

        phases = [f.rule_id in pass_two for f in report.findings]
        assert phases == sorted(phases)  # nothing from pass 2 before pass 1


def test_determinism_and_round_trips(corpus):
    for spec in corpus:
        first = analyze(spec)
        second = analyze(spec)
        assert first == second
        assert render_machine(first) == render_machine(second)
        assert parse_report(render_machine(first)) == first
        assert parse_model_spec(serialize_model_spec(spec)) == spec


def test_llm_mapping_table():
    def llm(problem, act, loss, num_classes=None):
        dataset = dict(TABULAR_DATASET)
        dataset["problem_type"] = problem
        if num_classes is None:
            dataset.pop("num_classes", None)
        else:
            dataset["num_classes"] = num_classes
        layers = [dense(1)] if act is None else [dense(1), activation(act)]
        spec = spec_of(layers, dataset, {"loss": loss})
        return rule_findings(spec, "LLM")

    assert llm("binary_classification", "sigmoid", "binary_crossentropy", 2) == []
    wrong_act = llm("binary_classification", "softmax", "binary_crossentropy", 2)
    assert [f.fix_suggestion for f in wrong_act] == [
        "Change last layer activation function → Use sigmoid"
    ]
    wrong_loss = llm("binary_classification", "sigmoid", "mse", 2)
    assert [f.fix_suggestion for f in wrong_loss] == [
        "Change loss function → Use binary_crossentropy"
    ]

    assert llm("multiclass_classification", "softmax", "categorical_crossentropy", 10) == []
    wrong_act = llm("multiclass_classification", "sigmoid", "categorical_crossentropy", 10)
    assert [f.fix_suggestion for f in wrong_act] == [
        "Change last layer activation function → Use softmax"
    ]
    wrong_loss = llm("multiclass_classification", "softmax", "hinge", 10)
    assert [f.fix_suggestion for f in wrong_loss] == [
        "Change loss function → Use categorical_crossentropy"
    ]

    assert llm("regression", None, "mse") == []
    wrong_act = llm("regression", "softmax", "mse")
    assert [f.fix_suggestion for f in wrong_act] == ["Remove last softmax activation layer"]
    wrong_loss = llm("regression", None, "binary_crossentropy")
    assert [f.fix_suggestion for f in wrong_loss] == ["Change loss function → Use mse or mae"]

    multilabel = dict(TABULAR_DATASET, problem_type="multilabel_classification", num_classes=5)
    spec = spec_of([dense(5), activation("sigmoid")], multilabel, {"loss": "binary_crossentropy"})
    assert rule_findings(spec, "LLM") == []
    assert len(rule_skips(spec, "LLM")) == 1


def test_exit_code_contract(tmp_path, capsys):
    clean = str(fixture_path("clean_model.json"))
    buggy = str(fixture_path("underspecified_cnn.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("not json", encoding="utf-8")

    for fail_on in ("error", "warning"):
        assert run([clean, "--fail-on", fail_on]) == EXIT_PASS
        assert run([buggy, "--fail-on", fail_on]) == EXIT_FINDINGS
        assert run([str(broken), "--fail-on", fail_on]) == EXIT_USAGE
    capsys.readouterr()
