"""Term-existence decisions: cube, edge and near-unanimity terms.

Fixed-dimension checks reduce to one subpower membership query.  A d-cube
term is a (2**d - 1)-ary term t with t(mix(a, b, I) : I nonempty) = a for
all a, b in A**d.  That system of identities splits coordinatewise: it
constrains t only through triples (i, alpha, beta) where i is a coordinate
and (alpha, beta) the value pair at it.  Stacking one row per triple turns
"some term satisfies every instance" into "the target column lies in the
subpower generated by the stacked generator columns", decided by the
closure engine.  Diagonal pairs (alpha, alpha) contribute the idempotence
rows; they are constant across all columns, so one row per value suffices.

Edge and near-unanimity terms use the same stack with their own column
sets.  For idempotent algebras the cube check instead runs per value-pair
pattern (the prefix trick is unnecessary there), which keeps each query
inside A**d; instances with a repeated coordinate pattern are equivalent
up to coordinate permutation and checked once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Optional

from .algebra import FiniteAlgebra, full_mask, is_idempotent
from .blockers import Blocker, find_blocker
from .errors import BudgetExceededError
from .relations import mix_family
from .subpower import Budget, default_budget, membership

HAS_CUBE = "has_cube_term"
NO_CUBE = "no_cube_term"
UNDECIDED = "undecided"


@dataclass
class CubeDecision:
    """Three-valued verdict with certificate or dimension information.

    For has_cube_term, dimension_bound is a proven upper bound on the
    minimal cube dimension and witness_dimension the level at which the
    affirmative check passed.  For no_cube_term the certificate is either
    a blocker (idempotent path; blocks every dimension, bound 0) or a
    failing value pair at dimension_bound = the full general bound.
    Undecided carries the cap that was reached.
    """

    verdict: str
    dimension_bound: int
    witness_dimension: Optional[int] = None
    blocker: Optional[Blocker] = None
    failing_pair: Optional[tuple[int, int]] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        obj: dict = {"verdict": self.verdict, "dimension_bound": self.dimension_bound}
        if self.witness_dimension is not None:
            obj["witness_dimension"] = self.witness_dimension
        if self.blocker is not None:
            obj["blocker"] = self.blocker.to_json()
        if self.failing_pair is not None:
            obj["failing_pair"] = list(self.failing_pair)
        return obj


@dataclass
class NuDecision:
    """Outcome of the near-unanimity decision."""

    verdict: str  # "has_nu" | "no_nu" | "undecided"
    arity: Optional[int] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        obj: dict = {"verdict": self.verdict}
        if self.arity is not None:
            obj["arity"] = self.arity
        return obj


# ---------------------------------------------------------------------------
# dimension bounds
# ---------------------------------------------------------------------------

def bound_idempotent_N(algebra: FiniteAlgebra) -> int:
    """1 + sum of (m_i - 1) over the r largest arities, r = min(l, C(n,2)).

    For idempotent algebras (with N > 2 or more than two elements) this
    bounds the minimal cube dimension when a cube term exists at all.
    """
    arities = sorted(algebra.arities, reverse=True)
    r = min(len(arities), math.comb(algebra.size, 2))
    return 1 + sum(m - 1 for m in arities[:r])


def bound_quadratic_linear(algebra: FiniteAlgebra) -> int:
    """1 + (m - 1) * C(n, 2) for m the maximum basic arity (0 without operations)."""
    if algebra.max_arity == 0:
        return 0
    return 1 + (algebra.max_arity - 1) * math.comb(algebra.size, 2)


def bound_general(algebra: FiniteAlgebra) -> int:
    """n**3 * m; sound for arbitrary (not necessarily idempotent) algebras."""
    if algebra.size == 1:
        return 1
    if algebra.max_arity == 0:
        return 0
    return algebra.size ** 3 * algebra.max_arity


def idempotent_bound_applies(algebra: FiniteAlgebra) -> bool:
    """The N bound needs N > 2 or more than two elements."""
    return bound_idempotent_N(algebra) > 2 or algebra.size > 2


# ---------------------------------------------------------------------------
# stacked instances
# ---------------------------------------------------------------------------

class _Stack:
    """Row layout shared by the cube/edge/NU checks.

    Rows: one per (coordinate i, value pair (a, b)) with a != b, in
    lexicographic order, then one constant row per universe value (the
    merged diagonal pairs).
    """

    def __init__(self, n: int, width: int):
        self.n = n
        self.width = width
        self.vary = [
            (i, a, b)
            for i in range(width)
            for a in range(n) for b in range(n) if a != b
        ]
        self.consts = tuple(range(n))

    def column(self, coords) -> tuple[int, ...]:
        inside = set(coords)
        return tuple(
            b if i in inside else a for (i, a, b) in self.vary
        ) + self.consts

    def target(self) -> tuple[int, ...]:
        return tuple(a for (_, a, _) in self.vary) + self.consts


def _cube_columns(stack: _Stack, d: int) -> Iterator[tuple[int, ...]]:
    for m in range(1, 1 << d):
        yield stack.column(i for i in range(d) if m >> i & 1)


def _edge_columns(stack: _Stack, d: int) -> Iterator[tuple[int, ...]]:
    yield stack.column((0, 1))
    for i in range(d):
        yield stack.column((i,))


def _nu_columns(stack: _Stack, k: int) -> Iterator[tuple[int, ...]]:
    for i in range(k):
        yield stack.column((i,))


def _stacked_query(algebra: FiniteAlgebra, columns, stack: _Stack,
                   budget: Budget, what: str) -> bool:
    ans = membership(algebra, columns, stack.target(), budget=budget)
    if ans.truncated and not ans.found:
        raise BudgetExceededError(f"{what}: closure budget exhausted before a decision")
    return ans.found


# ---------------------------------------------------------------------------
# fixed-dimension checks
# ---------------------------------------------------------------------------

def _check_cube_pointwise(algebra: FiniteAlgebra, d: int, budget: Budget) -> bool:
    # Every instance with a repeated coordinate value pair (a_i == b_i)
    # passes trivially (some proper overwrite equals the target), so only
    # patterns of genuinely differing pairs remain, one per multiset.
    n = algebra.size
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for pattern in combinations_with_replacement(pairs, d):
        a = tuple(p[0] for p in pattern)
        b = tuple(p[1] for p in pattern)
        ans = membership(algebra, mix_family(a, b), a, budget=budget)
        if ans.truncated and not ans.found:
            raise BudgetExceededError(
                f"cube dimension {d}: closure budget exhausted on pattern {pattern}"
            )
        if not ans.found:
            return False
    return True


def check_cube_dim(algebra: FiniteAlgebra, d: int, *,
                   budget: Optional[Budget] = None, method: str = "auto") -> bool:
    """Does the algebra have a cube term of dimension d?

    method: "stacked" runs the single stacked membership query, "pointwise"
    (idempotent algebras only) one small query per value-pair pattern,
    "auto" picks pointwise for idempotent input.  Exceeding the budget
    raises rather than guessing.
    """
    if d < 1:
        raise ValueError("cube dimension must be at least 1")
    if algebra.size == 1:
        return True
    budget = budget or default_budget()
    if method == "auto":
        method = "pointwise" if is_idempotent(algebra) else "stacked"
    if method == "pointwise":
        if not is_idempotent(algebra):
            raise ValueError("the pointwise check needs an idempotent algebra")
        return _check_cube_pointwise(algebra, d, budget)
    if method != "stacked":
        raise ValueError(f"unknown method {method!r}")
    stack = _Stack(algebra.size, d)
    return _stacked_query(algebra, _cube_columns(stack, d), stack, budget,
                          f"cube dimension {d}")


def check_edge_dim(algebra: FiniteAlgebra, d: int, *,
                   budget: Optional[Budget] = None) -> bool:
    """Does the algebra have a (d+1)-ary edge term of dimension d?"""
    if d < 2:
        raise ValueError("edge dimension must be at least 2")
    if algebra.size == 1:
        return True
    budget = budget or default_budget()
    stack = _Stack(algebra.size, d)
    return _stacked_query(algebra, _edge_columns(stack, d), stack, budget,
                          f"edge dimension {d}")


def check_nu(algebra: FiniteAlgebra, k: int, *,
             budget: Optional[Budget] = None) -> bool:
    """Does the algebra have a k-ary near-unanimity term?"""
    if k < 3:
        raise ValueError("near-unanimity arity starts at 3")
    if algebra.size == 1:
        return True
    budget = budget or default_budget()
    stack = _Stack(algebra.size, k)
    return _stacked_query(algebra, _nu_columns(stack, k), stack, budget,
                          f"near-unanimity arity {k}")


# ---------------------------------------------------------------------------
# full decisions
# ---------------------------------------------------------------------------

def _trivial_decisions(algebra: FiniteAlgebra) -> Optional[CubeDecision]:
    if algebra.size == 1:
        return CubeDecision(HAS_CUBE, dimension_bound=1, witness_dimension=1)
    if not algebra.operations:
        return CubeDecision(
            NO_CUBE, dimension_bound=0,
            blocker=Blocker(1, full_mask(algebra.size)),
            note="no basic operations: the clone is projections only",
        )
    return None


def decide_cube_idempotent(algebra: FiniteAlgebra) -> CubeDecision:
    """Polynomial-time decision for idempotent algebras.

    A blocker found is the certificate that no cube term of any dimension
    exists; no blocker means a cube term exists, with the minimal dimension
    bounded by N (or by the general bound in the two-element N = 2 corner
    where the N bound is not valid).
    """
    if not is_idempotent(algebra):
        raise ValueError("decide_cube_idempotent needs an idempotent algebra")
    trivial = _trivial_decisions(algebra)
    if trivial is not None:
        return trivial
    blocker = find_blocker(algebra)
    if blocker is not None:
        return CubeDecision(NO_CUBE, dimension_bound=0, blocker=blocker)
    if idempotent_bound_applies(algebra):
        bound = min(bound_idempotent_N(algebra), bound_quadratic_linear(algebra))
    else:
        bound = bound_general(algebra)
    return CubeDecision(HAS_CUBE, dimension_bound=bound)


def _deepening_schedule(cap: int) -> list[int]:
    ds = []
    d = 1
    while d < cap:
        ds.append(d)
        d *= 2
    ds.append(cap)
    return ds


def decide_cube_general(algebra: FiniteAlgebra, cap: Optional[int] = None, *,
                        budget: Optional[Budget] = None,
                        use_idempotent_path: bool = True) -> CubeDecision:
    """Decision for arbitrary algebras, exponential in the worst case.

    Iterative deepening over d: for each value pair (a, b) test whether the
    tuple (0..n-1) + a**d lies in the subpower generated by the prefixed
    proper overwrites of (a**d, b**d).  If every pair passes at some d, a
    cube term exists (a blocker in the idempotent reduct would make one
    pair fail at every d).  A failing pair at the full bound n**3 * m
    certifies no cube term; a failing pair at a smaller cap only refutes
    dimensions up to the cap, reported as undecided.
    """
    trivial = _trivial_decisions(algebra)
    if trivial is not None:
        return trivial
    if use_idempotent_path and is_idempotent(algebra):
        return decide_cube_idempotent(algebra)
    budget = budget or default_budget()
    bound = bound_general(algebra)
    cap = bound if cap is None else max(1, min(cap, bound))
    n = algebra.size
    prefix = tuple(range(n))
    failing: Optional[tuple[int, int]] = None
    for d in _deepening_schedule(cap):
        failing = None
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue  # the target is itself a generator
                gens = mix_family((a,) * d, (b,) * d, prefix=prefix)
                ans = membership(algebra, gens, prefix + (a,) * d, budget=budget)
                if ans.truncated and not ans.found:
                    return CubeDecision(
                        UNDECIDED, dimension_bound=d, failing_pair=(a, b),
                        note=f"closure budget exhausted at dimension {d}",
                    )
                if not ans.found:
                    failing = (a, b)
                    break
            if failing:
                break
        if failing is None:
            return CubeDecision(HAS_CUBE, dimension_bound=bound, witness_dimension=d)
    if cap == bound:
        return CubeDecision(NO_CUBE, dimension_bound=bound, failing_pair=failing)
    return CubeDecision(
        UNDECIDED, dimension_bound=cap, failing_pair=failing,
        note=f"no cube term of dimension <= {cap}; full bound {bound} not reached",
    )


def decide_cube(algebra: FiniteAlgebra, cap: Optional[int] = None, *,
                budget: Optional[Budget] = None,
                force_general: bool = False) -> CubeDecision:
    """Route to the polynomial idempotent path or the general decision."""
    if force_general:
        return decide_cube_general(algebra, cap, budget=budget,
                                   use_idempotent_path=False)
    return decide_cube_general(algebra, cap, budget=budget)


def minimal_cube_dimension(algebra: FiniteAlgebra, cap: int, *,
                           budget: Optional[Budget] = None) -> Optional[int]:
    """Smallest d in [2, cap] admitting a d-dimensional cube term.

    Cube term existence is monotone in the dimension (pad with dummy
    variables), so the scan stops at the first success.
    """
    if cap < 2:
        raise ValueError("cap must be at least 2")
    for d in range(2, cap + 1):
        if check_cube_dim(algebra, d, budget=budget):
            return d
    return None


def decide_nu(algebra: FiniteAlgebra, cap: Optional[int] = None, *,
              budget: Optional[Budget] = None) -> NuDecision:
    """Does the algebra have a near-unanimity term of any arity?

    A k-ary near-unanimity term exists iff the algebra generates a
    congruence distributive variety and has a k-dimensional cube term, so
    when any NU term exists its minimal arity equals max(3, minimal cube
    dimension).  Strategy: decide cube existence, find the minimal cube
    dimension d0, then run the direct NU check at max(3, d0).
    """
    if algebra.size == 1:
        return NuDecision("has_nu", arity=3)
    cube = decide_cube(algebra, cap, budget=budget)
    if cube.verdict == NO_CUBE:
        return NuDecision("no_nu", note="no cube term")
    if cube.verdict == UNDECIDED:
        return NuDecision("undecided", note=cube.note)
    scan_cap = cap if cap is not None else max(2, cube.dimension_bound)
    d0 = minimal_cube_dimension(algebra, scan_cap, budget=budget)
    if d0 is None:
        return NuDecision(
            "undecided",
            note=f"minimal cube dimension not located up to cap {scan_cap}",
        )
    k = max(3, d0)
    if check_nu(algebra, k, budget=budget):
        return NuDecision("has_nu", arity=k)
    return NuDecision("no_nu", note=f"minimal cube dimension {d0}, "
                                    f"no near-unanimity term of arity {k}")
