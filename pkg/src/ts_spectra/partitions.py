"""Integer partitions: validation, enumeration, conjugation, multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidSpec, NonPositivePart, NotMonotone


def _first_violation(seq: Sequence[int]) -> int | None:
    for i in range(len(seq) - 1):
        if seq[i] < seq[i + 1]:
            return i
    return None


@dataclass(frozen=True, slots=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Build through :func:`validate` (or :meth:`of`) so the invariants hold; the
    constructor itself does not re-check them on hot paths.
    """

    parts: tuple[int, ...]

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return validate(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def first(self) -> int:
        return self.parts[0] if self.parts else 0

    def tail(self) -> "Partition":
        """The partition with the first row removed."""
        return Partition(self.parts[1:])

    def multiplicities(self) -> "MultiplicitySpec":
        return to_multiplicity_spec(self)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts!r}"


@dataclass(frozen=True, slots=True)
class Composition:
    """Positive parts in any order; what a construction row looks like before validation."""

    parts: tuple[int, ...]

    def __post_init__(self):
        for i, v in enumerate(self.parts):
            if v < 1:
                raise NonPositivePart(i, v)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def is_monotone(self) -> bool:
        return _first_violation(self.parts) is None

    def sorted(self) -> Partition:
        return Partition(tuple(sorted(self.parts, reverse=True)))

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True, slots=True)
class MultiplicitySpec:
    """Run-length form ``[(part, count), ...]`` with strictly decreasing parts."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for part, count in self.entries:
            if part < 1 or count < 1:
                raise InvalidSpec(f"entry ({part}, {count}) must have part >= 1 and count >= 1")
            if prev is not None and part >= prev:
                raise InvalidSpec(f"parts must be strictly decreasing, got {prev} then {part}")
            prev = part

    def to_json(self) -> list[list[int]]:
        return [[p, c] for p, c in self.entries]


def validate(seq: Iterable[int]) -> Partition:
    """Check ``seq`` and wrap it as a :class:`Partition`.

    >>> validate([4, 3, 1]).n
    8
    """
    parts = tuple(int(v) for v in seq)
    for i, v in enumerate(parts):
        if v < 1:
            raise NonPositivePart(i, v)
    bad = _first_violation(parts)
    if bad is not None:
        raise NotMonotone(bad, parts)
    return Partition(parts)


def from_multiplicity_spec(spec: MultiplicitySpec | Sequence[tuple[int, int]]) -> Partition:
    if not isinstance(spec, MultiplicitySpec):
        spec = MultiplicitySpec(tuple((int(p), int(c)) for p, c in spec))
    parts: list[int] = []
    for part, count in spec.entries:
        parts.extend([part] * count)
    return Partition(tuple(parts))


def to_multiplicity_spec(p: Partition) -> MultiplicitySpec:
    entries: list[tuple[int, int]] = []
    for v in p.parts:
        if entries and entries[-1][0] == v:
            entries[-1] = (v, entries[-1][1] + 1)
        else:
            entries.append((v, 1))
    return MultiplicitySpec(tuple(entries))


def conjugate(p: Partition) -> Partition:
    """Column lengths of the Young diagram of ``p``."""
    parts = p.parts
    if not parts:
        return p
    cols = []
    k = len(parts)
    for j in range(1, parts[0] + 1):
        # parts is decreasing, so shrink k until row k-1 reaches column j
        while parts[k - 1] < j:
            k -= 1
        cols.append(k)
    return Partition(tuple(cols))


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``n``, in descending lexicographic order."""
    for parts in iter_parts(n):
        yield Partition(parts)


def iter_parts(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Raw tuples of the partitions of ``n`` with parts <= ``max_part``, descending lex.

    Each step decrements the last part larger than one and refills the tail
    greedily, which is the classic successor rule for reverse lex order.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    m = n if max_part is None else min(max_part, n)
    if m < 1:
        return
    q, r = divmod(n, m)
    a = [m] * q + ([r] if r else [])
    while True:
        yield tuple(a)
        # strip trailing ones
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        v = a[-1] - 1
        a[-1] = v
        rest = ones + 1
        q, r = divmod(rest, v)
        a.extend([v] * q)
        if r:
            a.append(r)


@lru_cache(maxsize=None)
def _pentagonal_table(n: int) -> tuple[int, ...]:
    p = [0] * (n + 1)
    p[0] = 1
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _pentagonal_table(n)[n]
