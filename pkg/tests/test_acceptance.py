"""The acceptance gate: one test per headline guarantee of the package.

Each test delegates to the corresponding check in p1torsion.acceptance so
that `pytest tests/test_acceptance.py` and `p1torsion selftest` exercise
exactly the same criteria.
"""

from p1torsion import acceptance


def _run(check):
    ok, detail = check()
    assert ok, detail


def test_height_of_p1_is_exactly_one_half_fast():
    _run(acceptance.check_height)


def test_degree0_torsion_matches_closed_form_exactly():
    _run(acceptance.check_degree0_torsion)


def test_t2_coefficient_matches_closed_form_exactly():
    _run(acceptance.check_t2_coefficient)


def test_structural_cancellations_hold():
    _run(acceptance.check_structural_cancellation)


def test_scurrent_paths_agree():
    _run(acceptance.check_scurrent_paths)


def test_tdchs_displays_agree():
    _run(acceptance.check_tdchs_displays)


def test_asymptotic_error_decays_when_twist_doubles():
    _run(acceptance.check_asymptotics)


def test_defining_property_of_the_current():
    _run(acceptance.check_defining_property)


def test_scaling_relation_numeric_and_symbolic():
    _run(acceptance.check_scaling)


def test_grr_r_term_cancellation_is_exact():
    _run(acceptance.check_grr)


def test_two_parameter_torsion_grid_and_reduction():
    _run(acceptance.check_two_param)


def test_fiber_integration_identities_with_negative_control():
    _run(acceptance.check_fiber_integration)
