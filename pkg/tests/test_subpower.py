import random

import pytest

from conftest import brute_force_subpower, random_idempotent_algebra
from cubeterm import (
    Budget,
    FiniteAlgebra,
    OperationTable,
    default_budget,
    fixture,
    generate,
    membership,
    mix_family,
)


def test_lattice_closure_of_antichain():
    closure, ans = generate(fixture("lattice2"), [(0, 1), (1, 0)])
    assert set(closure) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert ans.closure_size == 4 and not ans.truncated


def test_target_among_generators_found_at_depth_zero():
    ans = membership(fixture("lattice2"), [(0, 1), (1, 0)], (0, 1))
    assert ans.found and ans.witness_depth == 0


def test_meet_closure_cannot_reach_top():
    closure, ans = generate(fixture("semilattice2"), [(0, 1), (1, 0)],
                            target=(1, 1))
    assert not ans.found and not ans.truncated
    assert set(closure) == {(0, 0), (0, 1), (1, 0)}


def test_membership_of_overwrite_family_target():
    # join of (0,1) and (1,0) reaches (1,1), so the family closure holds it
    ans = membership(fixture("lattice2"), mix_family((1, 1), (0, 0)), (1, 1))
    assert ans.found and ans.witness_depth == 1


def test_membership_meet_only_fails():
    ans = membership(fixture("semilattice2"), [(0, 1), (1, 0), (0, 0)], (1, 1))
    assert not ans.found and ans.closure_size == 3


def test_closure_is_a_fixed_point():
    closure, _ = generate(fixture("lattice2"), [(0, 1), (1, 0)])
    again, _ = generate(fixture("lattice2"), list(closure))
    assert set(again) == set(closure)


def test_monotone_in_generators():
    alg = fixture("semilattice2")
    small, _ = generate(alg, [(0, 1)])
    big, _ = generate(alg, [(0, 1), (1, 0)])
    assert set(small) <= set(big)


def test_projection_of_closure_inside_closure_of_projections():
    rng = random.Random(4)
    for _ in range(15):
        n = rng.randint(2, 3)
        alg = random_idempotent_algebra(rng, n, [2])
        gens = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(3)]
        coords = [0, 2]
        closure, _ = generate(alg, gens)
        projected, _ = generate(alg, [tuple(g[c] for c in coords) for g in gens])
        assert {tuple(t[c] for c in coords) for t in closure} <= set(projected)


def test_matches_brute_force_closure():
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(2, 3)
        alg = random_idempotent_algebra(rng, n, [rng.randint(1, 3)])
        k = rng.randint(1, 3)
        gens = [tuple(rng.randrange(n) for _ in range(k))
                for _ in range(rng.randint(1, 4))]
        closure, _ = generate(alg, gens)
        assert set(closure) == brute_force_subpower(alg, gens)


def test_deterministic_output():
    alg = fixture("lattice2")
    gens = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    first, _ = generate(alg, gens)
    second, _ = generate(alg, gens)
    assert list(first.codes()) == list(second.codes())


def test_explicit_truncation():
    budget = Budget(max_members=2)
    _, ans = generate(fixture("lattice2"), [(0, 1), (1, 0)], budget=budget)
    assert ans.truncated and not ans.found


def test_found_before_truncation_wins():
    budget = Budget(max_members=3)
    ans = membership(fixture("lattice2"), [(0, 1), (1, 0)], (0, 1),
                     budget=budget)
    assert ans.found and not ans.truncated


def test_backends_agree():
    alg = fixture("lattice2")
    gens = [(0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 0, 0)]
    dense, _ = generate(alg, gens)
    sparse, _ = generate(alg, gens, budget=Budget(dense_limit=1))
    assert set(dense) == set(sparse)

    # digit backend (n = 3) against its sparse variant
    alg3 = FiniteAlgebra(3, (OperationTable(
        "addcap", 2, tuple(min(x + y, 2) for x in range(3) for y in range(3))),))
    g3 = [(0, 1, 2), (2, 0, 1)]
    d3, _ = generate(alg3, g3)
    s3, _ = generate(alg3, g3, budget=Budget(dense_limit=1))
    assert set(d3) == set(s3)


def test_bytes_backend_for_huge_code_spaces():
    # arity 45 over 3 elements: 3**45 codes, far past int64
    alg = fixture("constant3")
    gens = [tuple((i + j) % 2 for j in range(45)) for i in range(2)]
    closure, ans = generate(alg, gens)
    assert set(closure) == set(gens) | {(2,) * 45}
    assert ans.closure_size == 3
    found = membership(alg, gens, (2,) * 45)
    assert found.found and found.witness_depth == 1


def test_empty_generator_family():
    rel, ans = generate(fixture("lattice2"), [], arity=2)
    assert len(rel) == 0 and not ans.found
    with pytest.raises(ValueError):
        generate(fixture("lattice2"), [])


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        membership(fixture("lattice2"), [(0, 1)], (0, 1, 1))
    with pytest.raises(ValueError):
        generate(fixture("lattice2"), [(0, 2)])


def test_one_element_universe():
    alg = FiniteAlgebra(1, (OperationTable("f", 2, (0,)),))
    rel, ans = generate(alg, [(0, 0, 0)], target=(0, 0, 0))
    assert ans.found and len(rel) == 1


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("CUBETERM_BUDGET_BYTES", "1024")
    assert default_budget().dense_limit == 1024 * 8
    monkeypatch.setenv("CUBETERM_BUDGET_BYTES", "junk")
    assert default_budget().dense_limit == Budget().dense_limit


def test_constant_operation_tables():
    # empty/full minterm lists in the bitwise compiler must still vectorize
    for const in (0, 1):
        alg = FiniteAlgebra(2, (OperationTable("k", 2, (const,) * 4),))
        closure, _ = generate(alg, [(0, 1, 0), (1, 1, 0)])
        assert (const,) * 3 in closure
        assert len(closure) == 3


def test_nonidempotent_closure_with_prefix():
    # constant-0 algebra: prefixed family never reaches the prefixed target
    c0 = FiniteAlgebra(2, (OperationTable("c0", 1, (0, 0)),))
    prefix = (0, 1)
    gens = mix_family((1,) * 4, (0,) * 4, prefix=prefix)
    ans = membership(c0, gens, prefix + (1,) * 4)
    assert not ans.found
    closure, _ = generate(c0, mix_family((1,) * 4, (0,) * 4, prefix=prefix))
    assert (0,) * 6 in closure  # the constant image
