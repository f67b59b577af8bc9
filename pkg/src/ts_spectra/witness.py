"""Certified witnesses: a partition of n together with a replayable derivation.

Strategy for ``witness(n, e)``, in order:

1. negative targets are reduced to ``-e`` and conjugated;
2. ``e`` in {2, 3} beyond the constructive range: the small-value partitions;
3. ``e`` in {0, 1}, or ``n < 15``: bounded search;
4. ``e <= C((n - 15) // 3, 2)``: one constructive recipe;
5. ``e <= C(n // 3, 2)`` and ``n >= 76``: one lift over a constructive witness;
6. otherwise: generalized lifting, then bounded search.

Every certificate is re-verified from scratch before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Union

from .constructors import (
    CATALOG,
    ConstructionResult,
    RecipeId,
    ceil_div,
    even_b,
    get_recipe,
    odd_b,
)
from .errors import (
    ConstructionError,
    FirstRowTooSmall,
    NoPlanFound,
    NotFound,
    OutOfRange,
    Unreachable,
)
from .partitions import Partition, conjugate, validate
from .spectrum import eigenvalue

DEFAULT_BUDGET = 1_000_000
MAX_LIFT_DEPTH = 4
CANONICAL_LIFT_MIN_N = 76
GENERALIZED_LIFT_MIN_N = 30


# ---------------------------------------------------------------- derivation steps

@dataclass(frozen=True)
class RecipeStep:
    recipe: RecipeId
    n: int
    a: int
    c: int

    def to_json(self) -> dict:
        return {"step": "recipe", "id": str(self.recipe), "n": self.n, "a": self.a, "c": self.c}


@dataclass(frozen=True)
class SearchStep:
    n: int
    target: int
    cap: int
    budget: int
    scanned: int
    method: str = "dfs"

    def to_json(self) -> dict:
        return {"step": "search", "n": self.n, "target": self.target, "cap": self.cap,
                "budget": self.budget, "scanned": self.scanned, "method": self.method}


@dataclass(frozen=True)
class LiftStep:
    first_row: int

    def to_json(self) -> dict:
        return {"step": "lift", "first_row": self.first_row}


@dataclass(frozen=True)
class ConjugateStep:
    def to_json(self) -> dict:
        return {"step": "conjugate"}


Step = Union[RecipeStep, SearchStep, LiftStep, ConjugateStep]


@dataclass(frozen=True)
class WitnessCertificate:
    n: int
    target: int
    partition: Partition
    derivation: tuple[Step, ...]
    achieved: int
    verified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "target": self.target,
            "partition": list(self.partition.parts),
            "derivation": [s.to_json() for s in self.derivation],
            "achieved": self.achieved,
            "verified": self.verified,
        }

    def step_kinds(self) -> list[str]:
        return [s.to_json()["step"] for s in self.derivation]

    def uses_search(self) -> bool:
        return any(isinstance(s, SearchStep) for s in self.derivation)

    def summary(self) -> str:
        parts = []
        for s in self.derivation:
            if isinstance(s, RecipeStep):
                parts.append(f"recipe:{s.recipe}")
            elif isinstance(s, LiftStep):
                parts.append(f"lift:{s.first_row}")
            elif isinstance(s, SearchStep):
                parts.append(f"search:{s.method}")
            else:
                parts.append("conjugate")
        return " > ".join(parts)


def certify(n: int, target: int, partition: Partition, derivation: Iterable[Step]) -> WitnessCertificate:
    """Recompute the eigenvalue and wrap everything in a certificate."""
    derivation = tuple(derivation)
    try:
        p = validate(partition.parts)
        ok_shape = p.n == n
    except ValueError:
        p, ok_shape = partition, False
    achieved = eigenvalue(p)
    return WitnessCertificate(n, target, p, derivation, achieved, ok_shape and achieved == target)


def replay(derivation: Iterable[Step]) -> Partition:
    """Rebuild the partition from the recorded steps alone."""
    current: Partition | None = None
    for step in derivation:
        if isinstance(step, RecipeStep):
            current = get_recipe(step.recipe).build(step.n, step.a, step.c, check_bounds=False).partition
        elif isinstance(step, SearchStep):
            found, _ = _dfs(step.n, step.target, step.cap, step.budget, step.method)
            if found is None:
                raise NotFound(step.n, step.target, "replayed search came up empty")
            current = found
        elif isinstance(step, ConjugateStep):
            current = conjugate(current)
        elif isinstance(step, LiftStep):
            current = lift(current if current is not None else Partition(()), step.first_row)
        else:  # pragma: no cover
            raise TypeError(step)
    if current is None:
        raise ValueError("empty derivation")
    return current


# ---------------------------------------------------------------- lift and negate

def lift(base: Partition, first_row: int) -> Partition:
    """Prepend a first row; the eigenvalue moves by C(first_row, 2) - |base|."""
    if base.parts and first_row < base.parts[0]:
        raise FirstRowTooSmall(
            f"first row {first_row} is shorter than the base's first part {base.parts[0]}"
        )
    if first_row < 1:
        raise FirstRowTooSmall("first row must be >= 1")
    return Partition((first_row,) + base.parts)


def negate(cert: WitnessCertificate) -> WitnessCertificate:
    if not cert.verified:
        raise ValueError("only verified certificates can be negated")
    if cert.target == 0:
        return cert
    return certify(cert.n, -cert.target, conjugate(cert.partition),
                   cert.derivation + (ConjugateStep(),))


# ---------------------------------------------------------------- constructive dispatch

def target_params(e: int) -> tuple[int, int]:
    """``(a, c)`` with ``e = C(a, 2) - c``, ``a`` minimal; 0 maps to ``(2, 1)``."""
    if e < 0:
        raise ValueError("target must be nonnegative")
    if e == 0:
        return 2, 1
    a = 2
    while comb(a, 2) < e:
        a += 1
    return a, comb(a, 2) - e


def proof_choice(n: int, a: int, c: int) -> RecipeId | None:
    """The recipe the interval case analysis points at, or None for the gap cell."""
    if (n - a) % 2 == 1:
        if c == 0:
            return RecipeId.OddTop
        if c == 1:
            return RecipeId.OddMinus1
        if a <= (n + 3) // 5:
            return RecipeId.OddSmallA
        b = odd_b(n, a)
        if c <= b + 1:
            rows = ("OddT1Row1", "OddT1Row2", "OddT1Row3", "OddT1Row4",
                    "OddT1Row5", "OddT1Row6", "OddT1Row7")
        else:
            rows = ("OddT2Row1", "OddT2Row2")
    else:
        if c == 0:
            return RecipeId.EvenTop
        if c == 1:
            return RecipeId.EvenMinus1
        if a <= (n + 4) // 5:
            if c == 2:
                # a == 4 here is the misprinted cell; no recipe, search covers it
                return RecipeId.EvenMinus2 if a >= 5 else None
            if c == 3:
                return RecipeId.EvenMinus3
            return RecipeId.EvenSmallA
        b = even_b(n, a)
        if c <= b + 1:
            rows = ("EvenT3Row1", "EvenT3Row2", "EvenT3Row3", "EvenT3Row4", "EvenT3Row5")
        else:
            rows = ("EvenT4Row1", "EvenT4Row2")
    for rid in rows:
        if get_recipe(rid).selects(n, a, c):
            return RecipeId(rid)
    return None


def candidate_recipes(n: int, a: int, c: int) -> list[RecipeId]:
    out: list[RecipeId] = []
    first = proof_choice(n, a, c)
    if first is not None and get_recipe(first).applicable(n, a, c):
        out.append(first)
    for recipe in CATALOG:
        if recipe.id not in out and recipe.applicable(n, a, c):
            out.append(recipe.id)
    return out


def _recipe_result(n: int, e: int) -> ConstructionResult:
    a, c = target_params(e)
    for rid in candidate_recipes(n, a, c):
        try:
            return get_recipe(rid).build(n, a, c)
        except ConstructionError:
            continue
    raise Unreachable(f"no recipe yields {e} at n={n} (a={a}, c={c})")


def constructive_range_top(n: int) -> int:
    return comb(max((n - 15) // 3, 0), 2)


def constructive_witness(n: int, e: int, strict: bool = True) -> WitnessCertificate:
    """A single-recipe certificate for ``e`` at ``n``.

    With ``strict`` the call is limited to the interval the constructions are
    proved for; without it any target some recipe happens to reach is fine.
    """
    if strict and (n < 15 or not 2 <= e <= constructive_range_top(n)):
        raise OutOfRange(f"constructive range at n={n} is 2..{constructive_range_top(n)}, got {e}")
    res = _recipe_result(n, e)
    cert = certify(n, e, res.partition, (RecipeStep(res.recipe, n, res.a, res.c),))
    assert cert.verified, cert
    return cert


# ---------------------------------------------------------------- bounded search

def _max_tail(m: int, cap: int, row: int) -> int:
    """Largest content sum of ``m`` boxes in rows ``row, row+1, ...`` with parts <= cap."""
    if m == 0:
        return 0
    q, r = divmod(m, cap)
    # q full rows of length cap at rows row..row+q-1
    total = q * cap * (cap + 1) // 2 - cap * (q * (2 * row + q - 1) // 2)
    if r:
        total += r * (r + 1) // 2 - r * (row + q)
    return total


def _min_tail(m: int, row: int) -> int:
    """Smallest content sum: one box per row."""
    return m - m * (2 * row + m - 1) // 2


class _Budget(Exception):
    pass


def _dfs(n: int, e: int, cap: int, budget: int, method: str = "dfs") -> tuple[Partition | None, int]:
    """First partition of ``n`` (parts <= cap, descending lex order) with eigenvalue ``e``.

    Returns ``(partition or None, nodes visited)``; ``None`` with fewer than
    ``budget`` nodes visited means no such partition exists.
    """
    if method == "self-conjugate":
        return _self_conjugate(n, cap), 1
    cap = min(cap, n)
    parts: list[int] = []
    visited = 0

    def rec(m: int, p: int, row: int, acc: int) -> bool:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise _Budget
        if m == 0:
            return acc == e
        for L in range(min(p, m), 0, -1):
            gain = L * (L + 1) // 2 - L * row
            rest = m - L
            s = acc + gain
            if s + _max_tail(rest, L, row + 1) < e:
                # smaller L only lowers the maximum
                return False
            if s + _min_tail(rest, row + 1) > e:
                continue
            parts.append(L)
            if rec(rest, L, row + 1, s):
                return True
            parts.pop()
        return False

    try:
        found = rec(n, cap, 1, 0)
    except _Budget:
        return None, budget
    return (Partition(tuple(parts)) if found else None), visited


def _self_conjugate(n: int, cap: int) -> Partition | None:
    if n % 2:
        k = (n + 1) // 2
        p = Partition((k,) + (1,) * (k - 1))
    elif n >= 4:
        k = n // 2
        p = Partition((k, 2) + (1,) * (k - 2))
    else:
        return None
    return p if p.parts[0] <= cap else None


def fallback_search(n: int, e: int, budget: int = DEFAULT_BUDGET, cap: int | None = None) -> WitnessCertificate:
    """Scan partitions of ``n`` in descending lex order, pruning hopeless branches.

    ``budget`` bounds the number of search nodes (complete or partial
    partitions) examined. Raises :class:`NotFound` when the scan completes
    without a hit, or when the budget runs out.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if abs(e) > comb(n, 2):
        raise NotFound(n, e, "outside [-C(n,2), C(n,2)]")
    cap = n if cap is None else min(cap, n)
    if e == 0:
        p = _self_conjugate(n, cap)
        if p is not None:
            return certify(n, e, p, (SearchStep(n, e, cap, budget, 1, "self-conjugate"),))
    found, scanned = _dfs(n, e, cap, budget)
    if found is None:
        reason = "budget exhausted" if scanned >= budget else "exhaustive scan"
        raise NotFound(n, e, reason)
    cert = certify(n, e, found, (SearchStep(n, e, cap, budget, scanned),))
    assert cert.verified
    return cert


# ---------------------------------------------------------------- lifting

def canonical_first_row(n: int) -> int:
    return n // 3


def _sub_witness(n: int, e: int, cap: int) -> WitnessCertificate | None:
    """Recipe-only witness for ``e`` at ``n`` whose first part is <= cap."""
    if n < 1 or abs(e) > comb(n, 2):
        return None
    try:
        if e >= 0:
            cert = constructive_witness(n, e, strict=False)
        else:
            cert = negate(constructive_witness(n, -e, strict=False))
    except (Unreachable, OutOfRange):
        return None
    if cert.partition.first > cap:
        return None
    return cert


def _lift_cert(n: int, e: int, first_row: int, sub: WitnessCertificate | None) -> WitnessCertificate:
    base = sub.partition if sub is not None else Partition(())
    steps = (sub.derivation if sub is not None else ()) + (LiftStep(first_row),)
    return certify(n, e, lift(base, first_row), steps)


def lift_plan(n: int, e: int, generalized: bool = True, allow_search: bool = False,
              budget: int = DEFAULT_BUDGET) -> WitnessCertificate:
    """Lift a smaller witness by a first row (canonical row length n // 3 first).

    The remainder ``n' = n - l1`` must carry ``e' = e - C(l1, 2) + n'``. When
    the canonical choice has no recipe-only sub-witness, other first rows in
    ``[ceil((n-2)/3), n-1]`` are tried, recursing at most
    ``MAX_LIFT_DEPTH`` times. ``allow_search`` lets the deepest level fall
    back to a capped search.
    """
    if e == comb(n, 2):
        return _lift_cert(n, e, n, None)
    l1 = canonical_first_row(n)
    n2 = n - l1
    e2 = e - comb(l1, 2) + n2
    if n >= CANONICAL_LIFT_MIN_N or not generalized:
        sub = _sub_witness(n2, e2, l1)
        if sub is not None:
            cert = _lift_cert(n, e, l1, sub)
            if cert.verified:
                return cert
        if not generalized:
            raise NoPlanFound(n, e, f"canonical first row {l1} does not work")
    found = _generalized(n, e, n, MAX_LIFT_DEPTH, allow_search, budget, {})
    if found is None:
        raise NoPlanFound(n, e, "generalized lift exhausted")
    return found


def _max_value(n: int, cap: int) -> int:
    return _max_tail(n, min(cap, n), 1) if n else 0


def _generalized(n: int, e: int, cap: int, depth: int, allow_search: bool, budget: int,
                 memo: dict) -> WitnessCertificate | None:
    key = (n, e, cap, depth)
    if key in memo:
        return memo[key]
    memo[key] = None
    if n == 0:
        return None
    if e > _max_value(n, cap) or e < _min_tail(n, 1):
        return None
    direct = _sub_witness(n, e, cap)
    if direct is not None:
        memo[key] = direct
        return direct
    if e == _max_value(n, cap) and cap >= n:
        memo[key] = result = _lift_cert(n, e, n, None)
        return result
    if depth > 0:
        lo = max(ceil_div(n - 2, 3), 1)
        for l1 in range(min(cap, n), lo - 1, -1):
            n2 = n - l1
            e2 = e - comb(l1, 2) + n2
            if n2 == 0:
                if e2 == 0:
                    memo[key] = result = _lift_cert(n, e, l1, None)
                    return result
                continue
            if e2 > _max_value(n2, l1) or e2 < _min_tail(n2, 1):
                continue
            sub = _generalized(n2, e2, l1, depth - 1, allow_search, budget, memo)
            if sub is not None:
                cert = _lift_cert(n, e, l1, sub)
                if cert.verified:
                    memo[key] = cert
                    return cert
    if allow_search:
        try:
            found = fallback_search(n, e, budget=budget, cap=cap)
        except NotFound:
            found = None
        memo[key] = found
        return found
    return None


# ---------------------------------------------------------------- orchestration

_SMALL = {(2, True): RecipeId.Small2Odd, (2, False): RecipeId.Small2Even,
          (3, True): RecipeId.Small3Odd, (3, False): RecipeId.Small3Even}


def _small_value_witness(n: int, e: int) -> WitnessCertificate | None:
    """Closed forms for 2 and 3 first, then any other recipe reaching them."""
    a, c = target_params(e)
    order = [_SMALL[(e, n % 2 == 1)]]
    order += [rid for rid in candidate_recipes(n, a, c) if rid not in order]
    for rid in order:
        recipe = get_recipe(rid)
        if not recipe.applicable(n, a, c):
            continue
        try:
            res = recipe.build(n, a, c)
        except ConstructionError:
            continue
        return certify(n, e, res.partition, (RecipeStep(res.recipe, n, a, c),))
    return None


def witness(n: int, e: int, budget: int = DEFAULT_BUDGET) -> WitnessCertificate:
    """A verified certificate that ``e`` is an eigenvalue of Cay(S_n, T_n), or NotFound."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if abs(e) > comb(n, 2):
        raise NotFound(n, e, "outside [-C(n,2), C(n,2)]")
    if e < 0:
        return negate(witness(n, -e, budget))
    if e == comb(n, 2):
        return lift_plan(n, e)
    if e in (2, 3) and e > constructive_range_top(n):
        small = _small_value_witness(n, e)
        if small is not None:
            return small
    if e in (0, 1) or n < 15:
        return fallback_search(n, e, budget)
    if e <= constructive_range_top(n):
        try:
            return constructive_witness(n, e)
        except Unreachable:
            return fallback_search(n, e, budget)
    if n >= CANONICAL_LIFT_MIN_N and e <= comb(n // 3, 2):
        try:
            return lift_plan(n, e)
        except NoPlanFound:
            pass
    if n >= GENERALIZED_LIFT_MIN_N:
        try:
            return lift_plan(n, e, allow_search=False, budget=budget)
        except NoPlanFound:
            pass
    return fallback_search(n, e, budget)


# ---------------------------------------------------------------- coverage

@dataclass
class CoverageReport:
    n: int
    lo: int
    hi: int
    covered: int
    missing: list[int]
    derivations: dict[int, str] = field(default_factory=dict)
    searched: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "interval": [self.lo, self.hi],
            "covered": self.covered,
            "missing": sorted(self.missing),
            "searched": sorted(self.searched),
            "derivations": {str(k): v for k, v in sorted(self.derivations.items())},
        }


def coverage(n: int, lo: int, hi: int, budget: int = DEFAULT_BUDGET,
             keep_derivations: bool = True) -> CoverageReport:
    if lo > hi:
        raise ValueError("lo must be <= hi")
    top = comb(n, 2)
    if abs(lo) > top or abs(hi) > top:
        raise ValueError(f"interval must lie inside [-{top}, {top}]")
    missing: list[int] = []
    searched: list[int] = []
    derivations: dict[int, str] = {}
    for e in range(lo, hi + 1):
        try:
            cert = witness(n, e, budget)
        except NotFound:
            missing.append(e)
            continue
        if not cert.verified:  # pragma: no cover - witness only returns verified
            missing.append(e)
            continue
        if cert.uses_search():
            searched.append(e)
        if keep_derivations:
            derivations[e] = cert.summary()
    return CoverageReport(n, lo, hi, hi - lo + 1 - len(missing), missing, derivations, searched)


def theorem_c_inequalities(n: int) -> bool:
    """The two closing inequalities of the lifting argument, with l1 = n // 3."""
    if n < CANONICAL_LIFT_MIN_N:
        raise ValueError("the lifting argument is stated for n >= 76")
    l1 = n // 3
    n2 = n - l1
    inner = comb(max((n2 - 15) // 3, 0), 2)
    shift = comb(l1, 2) - n2
    return -inner + shift <= comb((n - 15) // 3, 2) and inner + shift >= comb(n // 3, 2)
