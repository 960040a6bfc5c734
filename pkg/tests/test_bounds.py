import pytest

from lcdcodes.bounds import (
    BoundsContradiction,
    build_table,
    formula_dlcd,
    griesmer_upper,
    load_reference,
    propagate,
)
from lcdcodes.classify import d_lcd_exact


@pytest.fixture(scope="module")
def exact_small():
    return {(n, k): d_lcd_exact(n, k) for n in range(1, 13) for k in range(1, n + 1)}


@pytest.mark.parametrize(
    "n, k, d",
    [(10, 2, 6), (13, 3, 6), (15, 4, 6), (16, 12, 2), (12, 1, 11), (11, 1, 11), (7, 7, 1), (7, 6, 2), (8, 7, 1)],
)
def test_formula_examples(n, k, d):
    assert formula_dlcd(n, k) == d


def test_formula_absent_outside_listed_residues():
    assert formula_dlcd(40, 5) is None  # 40 = 9 (mod 31)
    assert formula_dlcd(30, 10) is None


@pytest.mark.parametrize("n, k, d", [(8, 4, 4), (7, 4, 3), (9, 1, 9), (15, 11, 4)])
def test_griesmer(n, k, d):
    assert griesmer_upper(n, k) == d


def test_formulas_agree_with_search(exact_small):
    for (n, k), v in exact_small.items():
        f = formula_dlcd(n, k)
        assert f is None or f == v, (n, k)


def test_worked_derivation_length_two():
    T = build_table(25, seeds=[(23, 7, 9)], ceilings=[(25, 7, 10)])
    cell = T[25, 7]
    assert (cell.lower, cell.upper) == (10, 10)
    assert cell.last("lower").rule == "double-column"
    assert cell.last("lower").antecedents == ((23, 7),)


def test_worked_derivation_parity():
    T = build_table(25, seeds=[(24, 14, 5)], ceilings=[(25, 14, 6)])
    cell = T[25, 14]
    assert (cell.lower, cell.upper) == (6, 6)
    assert cell.last("lower").rule == "parity-extend"


def test_distance_two_chain():
    T = build_table(20, seeds=[(9, 5, 2)])
    for i in range(0, 12):
        assert T[9 + i, 5 + i].upper == 2 and T[9 + i, 5 + i].lower == 2


def test_contains_search_values(exact_small):
    seeded = build_table(14, seeds=[(n, k, v) for (n, k), v in exact_small.items() if n <= 10])
    bare = build_table(14)
    for (n, k), v in exact_small.items():
        for T in (seeded, bare):
            assert T[n, k].lower <= v <= T[n, k].upper, (n, k, v)


def test_contradiction_carries_chain():
    with pytest.raises(BoundsContradiction) as info:
        build_table(12, seeds=[(10, 2, 3)])
    assert info.value.cell == (10, 2)
    assert any("seed" in line for line in info.value.chain)


def test_propagate_is_a_fixpoint():
    T = build_table(20)
    again = propagate(T)
    assert again.intervals() == T.intervals()


def test_n_max_guard():
    with pytest.raises(ValueError):
        build_table(65)


def test_reference_data():
    ref = load_reference()
    cells = {(e.n, e.k) for e in ref}
    assert len(ref) == len(cells)
    assert all(16 <= e.n <= 40 and e.lower <= e.upper for e in ref)
    by_cell = {(e.n, e.k): e for e in ref}
    assert (by_cell[26, 15].lower, by_cell[26, 15].upper) == (5, 6)
    assert (by_cell[29, 11].lower, by_cell[29, 11].upper) == (8, 9)


def test_reference_formula_cells():
    # where a formula applies, the published value must agree with it
    for e in load_reference():
        f = formula_dlcd(e.n, e.k)
        if f is not None:
            assert e.lower <= f <= e.upper, (e.n, e.k)
