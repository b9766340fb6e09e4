from fractions import Fraction

import pytest

import tmt


def test_bubbles_and_moments():
    melon = tmt.quartic_melon(1)
    assert melon.is_valid()
    assert tmt.gaussian_moment([melon]) == {1: Fraction(1), -1: Fraction(1)}
    assert tmt.gaussian_moment_direct([melon], 2) == Fraction(5, 2)
    assert tmt.tree_of_necklaces_omega([2, 2]) == 5
    n = tmt.build_necklace(2, 3)
    assert n.canonical_form() == tmt.bubble_from_json(n.to_json()).canonical_form()
    assert "dashed" not in n.to_dot()


def test_closures_and_maps():
    full = tmt.Model.preset("full")
    melon, neck = tmt.quartic_melon(1), tmt.build_necklace(2, 2)
    graphs = tmt.enumerate_closures([melon, neck], 0, True, [0, 4])
    assert graphs
    for g in graphs:
        assert tmt.degree_exponent(g, full) == -tmt.from_feynman(g).omega()
    maps = tmt.enumerate_maps("restricted", 1, 0)
    # one empty map, then a loop and a bridge for each of the five labels
    assert len(maps) == 1 + 2 * 5
    for m in maps:
        cert = tmt.classify_lo(m, "restricted")
        assert cert["agrees_with_omega"]


def test_disk_equation():
    zero = {"monomials": []}
    series = tmt.solve_series(zero, 0, 5)
    assert [row[0] for row in series] == [1, 1, 2, 5, 14, 42]
    quartic = tmt.potential((-1, {2: 1}))
    formal = tmt.solve_formal(quartic, 2, 2)
    c1 = {tuple(t["powers"]): t["value"] for t in formal["C"][1]["terms"]}
    assert c1[(1,)] == "-4"
    numeric = tmt.solve_numeric(quartic, {"g": -0.01}, 10)
    assert numeric["converged"]
    assert tmt.solve_numeric(quartic, {"g": -0.05}, 10)["converged"] is False
    coeffs = tmt.solve_series(tmt.transition_potential(0.0), 200)[1]
    fit = tmt.gamma_estimate(coeffs)
    assert fit["gamma"] == pytest.approx(-0.5, abs=0.1)
    assert 1 / tmt.critical_point(coeffs)["radius"] == pytest.approx(24, rel=1e-3)


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        tmt.enumerate_maps("bogus", 1)
    with pytest.raises(ValueError):
        tmt.solve_formal({"monomials": [{"coeff": 1, "powers": {"0": 1}}]}, 2)
