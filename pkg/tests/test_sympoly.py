from itertools import combinations_with_replacement

import pytest

from weylkit.errors import DegenerateInputError, NonReductiveError
from weylkit.repthy import decompose_character, weight_multiplicities, weyl_dim
from weylkit.rootsys import parse_group, standard_subalgebra
from weylkit.sympoly import (
    homog_coordinate_mf_crosscheck,
    invariant_multiplicity,
    is_mf_coordinate_ring,
    check_reductive,
    sym_power_decompose,
    summands_dim,
)


def brute_force_sym_power(group, summands, d):
    """Oracle: enumerate all degree-d monomials in a weight basis, collect
    their torus weights, and strip dominant leading terms."""
    weights = []
    for lab, mult in summands:
        for w, m in weight_multiplicities(group, lab).items():
            weights.extend([w] * (m * mult))
    char = {}
    for combo in combinations_with_replacement(range(len(weights)), d):
        tot = tuple(sum(weights[i][k] for i in combo) for k in range(group.weight_len))
        char[tot] = char.get(tot, 0) + 1
    return decompose_character(group, char)


# ---- symmetric powers --------------------------------------------------------


def test_degree_zero_is_constants():
    g = parse_group("A1")
    assert sym_power_decompose(g, [((1,), 1)], 0) == {(0,): 1}


def test_sl2_symmetric_powers_are_irreducible():
    g = parse_group("A1")
    for d in range(9):
        assert sym_power_decompose(g, [((1,), 1)], d) == {(d,): 1}


def test_doubled_defining_square():
    g = parse_group("A1")
    out = sym_power_decompose(g, [((1,), 2)], 2)
    assert out == {(2,): 3, (0,): 1}


ORACLE_INSTANCES = [
    ("A1", [((1,), 1)], 5),
    ("A1", [((1,), 2)], 2),
    ("A1", [((2,), 1)], 3),
    ("A1", [((1,), 1), ((2,), 1)], 2),
    ("A2", [((1, 0), 1)], 3),
    ("A2", [((1, 0), 1), ((0, 1), 1)], 2),
    ("A2", [((1, 1), 1)], 2),
    ("B2", [((1, 0), 1)], 2),
    ("B2", [((0, 1), 1)], 2),
    ("G2", [((1, 0), 1)], 2),
    ("A1xA1", [((1, 1), 1)], 2),
    ("A1+T1", [((1, 1), 1), ((1, -1), 1)], 2),
    ("T1", [((1,), 1), ((3,), 1)], 4),
]


@pytest.mark.parametrize("name,summands,d", ORACLE_INSTANCES)
def test_sym_power_matches_brute_force(name, summands, d):
    g = parse_group(name)
    assert sym_power_decompose(g, summands, d) == brute_force_sym_power(g, summands, d)


@pytest.mark.parametrize("name,summands,d", ORACLE_INSTANCES)
def test_sym_power_conserves_dimension(name, summands, d):
    # the implementation asserts this internally; recompute independently
    from math import comb

    g = parse_group(name)
    out = sym_power_decompose(g, summands, d)
    n = summands_dim(g, list(summands))
    assert sum(m * weyl_dim(g, lab) for lab, m in out.items()) == comb(n + d - 1, d)


def test_sym_power_rejects_negative_degree_and_bad_mult():
    g = parse_group("A1")
    with pytest.raises(DegenerateInputError):
        sym_power_decompose(g, [((1,), 1)], -1)
    with pytest.raises(DegenerateInputError):
        sym_power_decompose(g, [((1,), 0)], 2)


# ---- multiplicity-freeness of C[V] -------------------------------------------


def test_sl2_defining_coordinate_ring_is_mf():
    g = parse_group("A1")
    for bound in (1, 5, 12, 20):
        v = is_mf_coordinate_ring(g, [((1,), 1)], bound)
        assert v.verdict == "multiplicity_free_up_to_D"
        assert v.witness is None


def test_doubled_defining_fails_with_frozen_witness():
    g = parse_group("A1")
    v = is_mf_coordinate_ring(g, [((1,), 2)], 2)
    assert v.verdict == "fails"
    assert v.witness == {"degree": 2, "label": (2,), "multiplicity": 3}
    # the witness multiplicity is recomputable from the table
    total = sum(dec.get((2,), 0) for dec in v.table.values())
    assert total == v.witness["multiplicity"]


def test_torus_weight_one_is_mf():
    g = parse_group("T1")
    v = is_mf_coordinate_ring(g, [((1,), 1)], 10)
    assert v.verdict == "multiplicity_free_up_to_D"


def test_cross_degree_repeat_counts():
    # C[V] for V = V_2 (the adjoint of sl2): S^d contains the trivial label
    # at d = 0 and d = 2, so the ring is not multiplicity-free even though
    # every single degree is.
    g = parse_group("A1")
    v = is_mf_coordinate_ring(g, [((2,), 1)], 2)
    assert v.verdict == "fails"
    assert v.witness["label"] == (0,)
    assert v.witness["multiplicity"] == 2


def test_a2_defining_is_mf():
    g = parse_group("A2")
    v = is_mf_coordinate_ring(g, [((1, 0), 1)], 6)
    assert v.verdict == "multiplicity_free_up_to_D"


def test_degree_bound_must_be_positive():
    g = parse_group("A1")
    with pytest.raises(DegenerateInputError):
        is_mf_coordinate_ring(g, [((1,), 1)], 0)


# ---- reductivity gate ---------------------------------------------------------


def test_reductive_examples():
    g = parse_group("A2")
    check_reductive(g, standard_subalgebra(g, "cartan"))
    check_reductive(g, standard_subalgebra(g, "full"))
    check_reductive(g, standard_subalgebra(g, "principal"))
    check_reductive(g, standard_subalgebra(g, "zero"))


def test_nilradical_is_not_reductive():
    g = parse_group("A2")
    with pytest.raises(NonReductiveError):
        check_reductive(g, standard_subalgebra(g, "nilradical"))
    with pytest.raises(NonReductiveError):
        check_reductive(g, standard_subalgebra(g, "borel"))


# ---- invariant multiplicities and the crosscheck ------------------------------


def test_invariant_multiplicity_sl2_cartan():
    g = parse_group("A1")
    h = standard_subalgebra(g, "cartan")
    assert invariant_multiplicity(g, h, (0,)) == 1
    assert invariant_multiplicity(g, h, (1,)) == 0
    assert invariant_multiplicity(g, h, (2,)) == 1
    assert invariant_multiplicity(g, h, (4,)) == 1


def test_invariant_multiplicity_full_algebra():
    g = parse_group("A1")
    h = standard_subalgebra(g, "full")
    assert invariant_multiplicity(g, h, (0,)) == 1
    assert invariant_multiplicity(g, h, (2,)) == 0


def test_invariant_multiplicity_diagonal():
    g = parse_group("A1xA1")
    h = standard_subalgebra(g, "diagonal")
    for n in range(3):
        assert invariant_multiplicity(g, h, (n, n)) == 1
    assert invariant_multiplicity(g, h, (1, 0)) == 0
    assert invariant_multiplicity(g, h, (2, 1)) == 0


def test_crosscheck_sl2_cartan_mf():
    g = parse_group("A1")
    h = standard_subalgebra(g, "cartan")
    v = homog_coordinate_mf_crosscheck(g, h, 6)
    assert v.verdict == "multiplicity_free_up_to_D"
    # even labels carry exactly one invariant each
    assert v.table[2] == {(2,): 1}
    assert v.table[1] == {}


def test_crosscheck_sl2_full():
    g = parse_group("A1")
    h = standard_subalgebra(g, "full")
    v = homog_coordinate_mf_crosscheck(g, h, 4)
    assert v.verdict == "multiplicity_free_up_to_D"
    assert v.table[0] == {(0,): 1}
    assert all(row == {} for d, row in v.table.items() if d > 0)


def test_crosscheck_diagonal_pair():
    g = parse_group("A1xA1")
    h = standard_subalgebra(g, "diagonal")
    v = homog_coordinate_mf_crosscheck(g, h, 3, ambient=[((1, 1), 1)])
    assert v.verdict == "multiplicity_free_up_to_D"
    assert v.table[1] == {(1, 1): 1}


def test_crosscheck_a2_cartan_detects_failure():
    # the pair is not spherical; the adjoint label carries two invariants
    g = parse_group("A2")
    h = standard_subalgebra(g, "cartan")
    v = homog_coordinate_mf_crosscheck(
        g, h, 2, ambient=[((1, 0), 1), ((0, 1), 1)]
    )
    assert v.verdict == "fails"
    assert v.witness["label"] == (1, 1)
    assert v.witness["multiplicity"] == 2


def test_crosscheck_b2_cartan_detects_failure():
    g = parse_group("B2")
    h = standard_subalgebra(g, "cartan")
    v = homog_coordinate_mf_crosscheck(g, h, 2, ambient=[((1, 0), 1)])
    assert v.verdict == "fails"
    assert v.witness["multiplicity"] == 2


def test_crosscheck_rejects_non_reductive():
    g = parse_group("A1")
    with pytest.raises(NonReductiveError):
        homog_coordinate_mf_crosscheck(g, standard_subalgebra(g, "nilradical"), 2)
