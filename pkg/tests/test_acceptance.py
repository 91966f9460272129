"""Acceptance gate: every end-to-end criterion must hold.

Each test prints the same one-line verdict the CLI ``acceptance`` command
emits, so `pytest -v -s tests/test_acceptance.py` doubles as the report.
"""

from cavscreen import acceptance


def check(result):
    print(result.line())
    assert result.ok, result.detail


class TestAcceptance:
    def test_worked_example_values(self):
        check(acceptance.criterion_worked_example())

    def test_no_learning_threshold(self):
        check(acceptance.criterion_acceptance_threshold())

    def test_certified_construction(self):
        check(acceptance.criterion_certified_construction())

    def test_envelope_oracle_agreement(self):
        check(acceptance.criterion_envelope_oracles())

    def test_kink_avoidance(self):
        check(acceptance.criterion_kink_avoidance())

    def test_fine_equalization_screens(self):
        check(acceptance.criterion_equalized_fines())

    def test_rejection_measure_search(self):
        check(acceptance.criterion_rejection_search())

    def test_maximin_closed_form(self):
        check(acceptance.criterion_maximin_closed_form())

    def test_figure_ordering(self):
        check(acceptance.criterion_figure_ordering())
