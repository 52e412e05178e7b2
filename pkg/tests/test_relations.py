import random
from itertools import product

import pytest

from conftest import brute_force_subpower, random_idempotent_algebra
from cubeterm import (
    BudgetExceededError,
    ChippedCubeSpec,
    InputError,
    Relation,
    chipped_cube,
    code_tuple,
    constant3_elusive_relation,
    fixture,
    is_compatible,
    is_elusive_witness,
    mask_of,
    mix,
    mix_family,
    tuple_code,
    verify_blocker,
)

PAPER_BINARY = [(0, 0), (0, 1), (1, 1)]  # compatible elusive relation of lattice2


def naive_family(a, b, prefix=()):
    """Reference: walk all nonzero coordinate masks, dedup by first appearance."""
    k = len(a)
    seen, out = set(), []
    for m in range(1, 1 << k):
        t = tuple(prefix) + mix(a, b, [i for i in range(k) if m >> i & 1])
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def test_code_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 6)
        k = rng.randint(1, 6)
        t = tuple(rng.randrange(n) for _ in range(k))
        assert code_tuple(tuple_code(t, n), k, n) == t


def test_mix_basic():
    a, b = (1, 0), (0, 1)
    assert mix(a, b, [0]) == (0, 0)
    assert mix(a, b, []) == (1, 0)
    assert mix(a, b, [0, 1]) == (0, 1)


def test_mix_complement_symmetry():
    rng = random.Random(9)
    for _ in range(50):
        k = rng.randint(1, 7)
        a = tuple(rng.randrange(4) for _ in range(k))
        b = tuple(rng.randrange(4) for _ in range(k))
        coords = [i for i in range(k) if rng.random() < 0.5]
        rest = [i for i in range(k) if i not in coords]
        assert mix(a, b, coords) == mix(b, a, rest)


def test_mix_family_two_coordinates():
    assert list(mix_family((1, 1), (0, 0))) == [(0, 1), (1, 0), (0, 0)]


def test_mix_family_equal_tuples_collapse():
    assert list(mix_family((1, 0), (1, 0))) == [(1, 0)]


def test_mix_family_with_prefix():
    got = list(mix_family((1, 1), (0, 0), prefix=(0, 1)))
    assert got == [(0, 1, 0, 1), (0, 1, 1, 0), (0, 1, 0, 0)]


def test_mix_family_matches_naive_enumeration():
    rng = random.Random(21)
    for _ in range(60):
        k = rng.randint(1, 8)
        a = tuple(rng.randrange(3) for _ in range(k))
        b = tuple(rng.randrange(3) for _ in range(k))
        prefix = tuple(rng.randrange(3) for _ in range(rng.randint(0, 2)))
        assert list(mix_family(a, b, prefix)) == naive_family(a, b, prefix)


def test_is_compatible_lattice_elusive_relation():
    rel = Relation.from_tuples(2, 2, PAPER_BINARY)
    assert is_compatible(fixture("lattice2"), rel)


def test_is_compatible_meet_counterexample():
    rel = Relation.from_tuples(2, 2, [(0, 1), (1, 0)])
    assert not is_compatible(fixture("semilattice2"), rel)


def test_is_compatible_full_power():
    rel = Relation.from_tuples(2, 3, list(product((0, 1), repeat=3)))
    assert is_compatible(fixture("lattice2"), rel)
    assert is_compatible(fixture("nand2"), rel)


def test_is_compatible_budget():
    rel = Relation.from_tuples(2, 2, list(product((0, 1), repeat=2)))
    with pytest.raises(BudgetExceededError):
        is_compatible(fixture("lattice2"), rel, max_checks=3)


def test_is_compatible_matches_closure(tmp_path):
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(2, 3)
        alg = random_idempotent_algebra(rng, n, [2])
        k = rng.randint(1, 3)
        tuples = {tuple(rng.randrange(n) for _ in range(k))
                  for _ in range(rng.randint(1, 5))}
        rel = Relation.from_tuples(n, k, tuples)
        closed = brute_force_subpower(alg, sorted(tuples))
        assert is_compatible(alg, rel) == (closed == set(rel))


def test_elusive_witness_lattice():
    rel = Relation.from_tuples(2, 2, PAPER_BINARY)
    assert is_elusive_witness(rel, (1, 0), (0, 1))


def test_elusive_witness_fails_when_member():
    rel = Relation.from_tuples(2, 2, PAPER_BINARY)
    assert not is_elusive_witness(rel, (0, 0), (1, 1))


def test_elusive_witness_constant3_relation():
    rel = constant3_elusive_relation(3)
    a, b = (1, 0, 0), (0, 1, 1)
    # independent check: a missing, every proper overwrite present
    assert a not in rel
    for t in naive_family(a, b):
        assert t in rel
    assert is_elusive_witness(rel, a, b)


def test_elusive_witness_survives_shrinking_to_generated_relation():
    # the witness stays elusive for the closure of its own overwrite family
    from cubeterm import generate

    alg = fixture("lattice2")
    a, b = (1, 0), (0, 1)
    closure, _ = generate(alg, mix_family(a, b))
    assert a not in closure
    assert is_elusive_witness(closure, a, b)


def test_chipped_cube_single_point():
    spec = ChippedCubeSpec(((mask_of([0]), mask_of([0, 1]), 1),))
    assert list(chipped_cube(spec, 2)) == [(0,)]


def test_chipped_cube_display_example():
    # {0,1}^2 x {2,3} minus the corner (1,1,3)
    spec = ChippedCubeSpec((
        (mask_of([0]), mask_of([0, 1]), 2),
        (mask_of([2]), mask_of([2, 3]), 1),
    ))
    rel = chipped_cube(spec, 4)
    expected = {t for t in product((0, 1), (0, 1), (2, 3)) if t != (1, 1, 3)}
    assert set(rel) == expected


def test_chipped_cube_square_minus_corner():
    spec = ChippedCubeSpec(((mask_of([0]), mask_of([0, 1]), 2),))
    rel = chipped_cube(spec, 2)
    assert set(rel) == {(0, 0), (0, 1), (1, 0)}


def test_chipped_cube_budget():
    spec = ChippedCubeSpec(((mask_of([0]), mask_of([0, 1]), 10),))
    with pytest.raises(BudgetExceededError):
        chipped_cube(spec, 2, max_tuples=100)


def test_blocker_powers_are_compatible():
    semi = fixture("semilattice2")
    c, d = mask_of([0]), mask_of([0, 1])
    assert verify_blocker(semi, c, d)
    for k in (1, 2, 3):
        rel = chipped_cube(ChippedCubeSpec(((c, d, k),)), 2)
        assert is_compatible(semi, rel)


def test_chipped_cube_spec_validation():
    with pytest.raises(ValueError):
        ChippedCubeSpec(((0, 3, 1),))  # empty C
    with pytest.raises(ValueError):
        ChippedCubeSpec(((3, 3, 1),))  # C = D
    with pytest.raises(ValueError):
        ChippedCubeSpec(((1, 3, 0),))  # mult < 1


def test_spec_json_round_trip():
    spec = ChippedCubeSpec(((1, 3, 2), (4, 6, 1)))
    assert ChippedCubeSpec.from_json(spec.to_json()) == spec


def test_relation_json_round_trip():
    rel = constant3_elusive_relation(2)
    again = Relation.from_json(rel.to_json(), 3)
    assert again == rel


def test_relation_json_rejects_malformed():
    with pytest.raises(InputError):
        Relation.from_json({"arity": 2, "tuples": [[0, 5]]}, 3)
    with pytest.raises(InputError):
        Relation.from_json({"arity": 2, "tuples": [[0]]}, 3)
    with pytest.raises(InputError):
        Relation.from_json({"tuples": []}, 3)


def test_relation_projection():
    rel = Relation.from_tuples(2, 3, [(0, 1, 1), (1, 0, 1)])
    assert set(rel.project([0, 2])) == {(0, 1), (1, 1)}


def test_relation_dense_and_sparse_agree():
    tuples = [(0, 1, 2), (2, 1, 0), (1, 1, 1)]
    dense = Relation.from_tuples(3, 3, tuples)
    sparse = Relation.from_tuples(3, 3, tuples, dense_limit=1)
    assert dense == sparse and len(sparse) == 3
    assert (0, 1, 2) in sparse and (0, 0, 0) not in sparse
