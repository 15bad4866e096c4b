import itertools
import json
from fractions import Fraction

import pytest

import cgtk


def parse_gens(text):
    """Generator-set file as (p, [matrix rows])."""
    lines = [l.split("#")[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    p, mats, i = None, [], 0
    while i < len(lines):
        head = lines[i].split()
        if head[0] == "GFMAT":
            p, n = int(head[1]), int(head[2])
            mats.append([[int(c) for c in row.split()] for row in lines[i + 1 : i + 1 + n]])
            i += n + 1
        else:
            i += 1
    return p, mats


def test_symmetric_group_orders():
    for n in range(2, 8):
        cycle = [(i + 1) % n for i in range(n)]
        swap = [1, 0] + list(range(2, n))
        assert cgtk.permutation_group_order([swap, cycle]) == len(list(itertools.permutations(range(n))))


def test_bad_permutation_raises():
    with pytest.raises(cgtk.Error):
        cgtk.permutation_group_order([[0, 0, 1]])


def test_gl2_over_f3():
    order = cgtk.matrix_group_order(3, [[[1, 1], [0, 1]], [[0, 1], [2, 0]], [[2, 0], [0, 1]]])
    assert order == 48


def test_coset_enumeration():
    a4 = "gens: a b\nrel: a^2 = b^3 = (a b)^3 = 1\n"
    assert cgtk.coset_enumerate(a4, ["a"])["index"] == 6
    assert cgtk.coset_enumerate(a4, [])["index"] == 12
    capped = cgtk.coset_enumerate("gens: a b\nrel: a^2 = b^3 = 1\n", [], max_cosets=50)
    assert not capped["closed"]
    with pytest.raises(cgtk.ParseError):
        cgtk.coset_enumerate("gens: a\nrel: q^2\n")


def test_meataxe_and_duality(fixture_text):
    p, mats = parse_gens(fixture_text("m24_v1.gens"))
    assert cgtk.meataxe(p, mats)["verdict"] == "irreducible"
    dual = cgtk.dual_generators(p, mats)
    assert cgtk.module_isomorphism(p, mats, dual) is None
    identity = [[int(i == j) for j in range(2)] for i in range(2)]
    r = cgtk.meataxe(2, [identity])
    assert r["verdict"] == "reducible" and len(r["submodule"]) == 1


def test_thompson(fixture_text):
    assert cgtk.thompson_order(Fraction(1, 1), 0, 12, 8) == 12
    rep = cgtk.thompson_identity_check(fixture_text("fi24_thompson.json"))
    data = json.loads(fixture_text("fi24_thompson.json"))
    cu = 1
    for q, e in data["centralizer_u"].items():
        cu *= int(q) ** e
    cz = 1
    for q, e in data["centralizer_z"].items():
        cz *= int(q) ** e
    assert rep["order"] == int(data["r_z"]) * cu + int(data["r_u"]) * cz
    assert rep["printed_conflict"]
    assert [x["matches"] for x in rep["printed"]].count(True) == 1
    with pytest.raises(cgtk.Error):
        cgtk.thompson_order(Fraction(1, 3), 0, 1, 1)


def test_class_data(fixture_text):
    rep = cgtk.check_class_data(fixture_text("cc_E.classes"))
    assert rep["ok"]
    assert rep["size_sum"] == rep["group_order"] == 501397585920


def test_double_cosets():
    problem = "BLOCKS 5 1 1\nsubgroup H\nsubgroup E\n"
    assert cgtk.double_coset_count(problem, "burnside") == 16
    assert cgtk.double_coset_count(problem, "normal-form") == 16


def test_h2():
    assert cgtk.h2_dimension([[1, 0]], 2) == 1
    assert cgtk.h2_dimension([[1, 0, 2, 3], [0, 1, 3, 2]], 2) == 3
    assert cgtk.h2_dimension([[1, 2, 0]], 2) == 0
