import pytest

import vb1


def test_perm_cycles_and_order():
    p = vb1.Perm("(1 2 3 4)")
    assert (p * p).cycles() == [[1, 3], [2, 4]]
    assert p.order() == 4
    assert str(p.inverse()) == "(1 4 3 2)"
    with pytest.raises(ValueError):
        vb1.Perm("(1 2")


def test_smith_normal_form():
    assert vb1.smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert vb1.smith_normal_form([[0, 0], [0, 0]]) == ([0, 0], 0)


def test_abelianized_twists():
    assert vb1.abelianized("Dx") == [[1, 1], [0, 1]]
    assert vb1.abelianized("Dx Dy^4") == [[-3, 1], [-4, 1]]


def test_abelianization_of_a_presentation():
    assert vb1.abelianization("gens: x y t ; rels: t x T X, t y T Y") == (3, [])
    assert vb1.abelianization("gens: x y ; rels: x^2, y^3") == (0, [6])


def test_figure_two_cover():
    c = vb1.figure_two_cover()
    assert c["degree"] == 16
    assert c["genus"] == 5
    assert len(c["punctures"]) == 8


def test_quotient_orders():
    q = vb1.quotient(3, seed=7, min_order=13)
    assert q["orders"] == [6, 6, 3]
    assert q["verified"]


def test_case1_report():
    r = vb1.case1("Dx Dy^4")
    assert r["passed"]
    assert r["base"]["betti"] == 1
    assert r["cover"]["betti"] == 5


def test_multik_and_reduce():
    assert vb1.multik(2, "id")["cover"]["betti"] >= 5
    assert vb1.reduce("Dx Dy^4 B", [2, 3], keep=1, feed=True)["passed"]


def test_bad_input_raises():
    with pytest.raises(ValueError):
        vb1.case1("Dq")
