"""Negative goldens: each catalog rule fires on its fixture and only there."""

import pytest

from glocon.lint import CATALOG, validate_document
from rule_fixtures import RULE_FIXTURES


@pytest.mark.parametrize("rule_id", sorted(RULE_FIXTURES))
def test_fixture_triggers_exactly_its_rule(rule_id):
    bad, _ = RULE_FIXTURES[rule_id]
    fired = {d.rule for d in validate_document(bad)}
    assert fired == {rule_id}


@pytest.mark.parametrize("rule_id", sorted(RULE_FIXTURES))
def test_fixed_sibling_is_clean(rule_id):
    _, fixed = RULE_FIXTURES[rule_id]
    assert validate_document(fixed) == []


@pytest.mark.parametrize("rule_id", sorted(RULE_FIXTURES))
def test_diagnostics_carry_default_severity(rule_id):
    bad, _ = RULE_FIXTURES[rule_id]
    for diag in validate_document(bad):
        assert diag.rule in CATALOG
        assert diag.severity == CATALOG[diag.rule].severity


def test_every_lint_rule_has_a_fixture():
    lint_rules = {r for r in CATALOG if r not in ("W140", "W141")}
    assert lint_rules == set(RULE_FIXTURES)
