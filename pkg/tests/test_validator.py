"""Facet enforcement and domain/range conformance."""

from __future__ import annotations

from ontokit.model import Severity, build_ontology
from ontokit.oft import parse_oft
from ontokit.reasoner import compute_closure, realize
from ontokit.validator import validate

BASE = """\
class Fruit
class Stock sub Fruit
objprop linked_to domain Stock range Fruit
dataprop nickname domain Stock type string allowed "sweet", "plain" card single
dataprop grade domain Stock type number card single
dataprop tag type string card multiple
individual item1 type Stock
individual item2 type Fruit
"""


def check(extra: str):
    source = BASE + extra
    result = parse_oft(source, "v.oft")
    assert result.diagnostics == [], result.diagnostics
    onto, diags = build_ontology("v", result.axioms)
    assert onto is not None, diags
    closure, cdiags = compute_closure(onto)
    assert closure is not None, cdiags
    return validate(onto, closure, realize(onto, closure))


def codes(report):
    return [(d.code, d.line, d.severity) for d in report.diagnostics]


class TestValueFacets:
    def test_allowed_value_passes(self):
        report = check('attr item1 nickname "sweet"\n')
        assert report.ok and not report.diagnostics
        assert report.checked_assertions == 1

    def test_type_mismatch(self):
        report = check('attr item1 grade "old"\n')
        assert codes(report) == [("E_TYPE_MISMATCH", 9, Severity.ERROR)]

    def test_value_outside_allowed_set(self):
        report = check('attr item1 nickname "bitter"\n')
        assert codes(report) == [("E_ALLOWED_VALUE", 9, Severity.ERROR)]

    def test_allowed_check_skipped_when_type_wrong(self):
        report = check("attr item1 nickname 5\n")
        assert codes(report) == [("E_TYPE_MISMATCH", 9, Severity.ERROR)]

    def test_numeric_allowed_matching(self):
        report = check("dataprop score domain Stock type number allowed 1, 2.5\nattr item1 score 2.50\n")
        assert report.ok


class TestCardinality:
    def test_second_value_flagged_for_single(self):
        report = check('attr item1 nickname "sweet"\nattr item1 nickname "plain"\n')
        assert codes(report) == [("E_CARD_SINGLE", 10, Severity.ERROR)]

    def test_three_values_flag_two_lines(self):
        report = check(
            'attr item1 nickname "sweet"\nattr item1 nickname "plain"\nattr item1 nickname "sweet"\n'
        )
        assert [d.line for d in report.diagnostics] == [10, 11]
        assert {d.code for d in report.diagnostics} == {"E_CARD_SINGLE"}

    def test_single_per_individual_not_global(self):
        report = check(
            'individual item3 type Stock\nattr item1 nickname "sweet"\nattr item3 nickname "plain"\n'
        )
        assert report.ok

    def test_multiple_missing_value_is_warning(self):
        report = check("dataprop label domain Stock type string card multiple\n")
        assert codes(report) == [("E_CARD_MULTIPLE", 7, Severity.WARNING)]
        assert report.ok  # warnings do not fail validation

    def test_multiple_satisfied(self):
        report = check(
            'dataprop label domain Stock type string card multiple\nattr item1 label "x"\n'
        )
        assert report.ok and not report.diagnostics

    def test_multiple_without_domain_not_checked(self):
        # `tag` is card multiple with no domain: nothing to enumerate.
        report = check("")
        assert not report.diagnostics


class TestDomainRange:
    def test_object_assertion_domain(self):
        report = check("rel item2 linked_to item1\n")
        assert ("E_DOMAIN", 9, Severity.ERROR) in codes(report)

    def test_object_assertion_range(self):
        report = check(
            "class Unrelated\nindividual other type Unrelated\nrel item1 linked_to other\n"
        )
        assert codes(report) == [("E_RANGE", 11, Severity.ERROR)]

    def test_object_assertion_through_subclass_ok(self):
        report = check("rel item1 linked_to item2\n")
        assert report.ok

    def test_data_assertion_outside_domain(self):
        report = check('attr item2 nickname "sweet"\n')
        assert codes(report) == [("E_DOMAIN", 9, Severity.ERROR)]

    def test_domainless_data_property_unchecked(self):
        report = check('attr item2 tag "anything"\n')
        assert report.ok


class TestReportShape:
    def test_passing_validation_means_no_duplicate_singles(self, corpus, corpus_closure, corpus_realization):
        from ontokit.model import Cardinality
        from ontokit.validator import validate as run_validate

        report = run_validate(corpus, corpus_closure, corpus_realization)
        assert report.ok
        counts: dict[tuple[str, str], int] = {}
        for ax in corpus.data_assertions:
            counts[(ax.prop, ax.subject)] = counts.get((ax.prop, ax.subject), 0) + 1
        for (prop, _), n in counts.items():
            if corpus.facets[prop].cardinality is Cardinality.SINGLE:
                assert n == 1

    def test_sorted_and_deterministic(self):
        extra = 'attr item1 grade "a"\nattr item2 nickname "bitter"\nrel item2 linked_to item1\n'
        first = check(extra)
        second = check(extra)
        assert first.diagnostics == second.diagnostics
        keys = [(d.file, d.line, d.code) for d in first.diagnostics]
        assert keys == sorted(keys)

    def test_corpus_mutations_never_add_errors(self, corpus):
        # Dropping any single assertion keeps the corpus error-free.
        assertion_idx = [
            i
            for i, ax in enumerate(corpus.axioms)
            if type(ax).__name__ in ("ObjAssertion", "DataAssertion")
        ]
        for i in assertion_idx:
            axioms = [ax for j, ax in enumerate(corpus.axioms) if j != i]
            onto, diags = build_ontology(corpus.name, axioms)
            assert onto is not None, diags
            closure, _ = compute_closure(onto)
            report = validate(onto, closure, realize(onto, closure))
            assert not [d for d in report.diagnostics if d.severity is Severity.ERROR]
