"""Eigenvalues of the transposition graph Cay(S_n, T_n), indexed by partitions.

The eigenvalue attached to a partition is the sum of the contents ``j - i``
over the boxes of its Young diagram. Three code paths compute it without
sharing code (row formula, box iteration, arm/leg split), and two further
oracles check whole spectra: hook-length multiplicities and, for tiny ``n``,
the adjacency matrix itself.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial

from .errors import ResourceLimit, RoundingFailure
from .partitions import Partition, conjugate, iter_parts, validate

DEFAULT_LIMIT = 85
LIMIT_ENV = "TS_SPECTRA_LIMIT"
HOOK_LIMIT = 20
MULTIPLICITY_LIMIT = 12
ADJACENCY_LIMIT = 6
ROUNDING_TOL = 1e-6


def eigenvalue(p: Partition) -> int:
    """Row formula: sum of lambda_i * (lambda_i - 2i + 1) / 2 over rows."""
    total = 0
    for i, part in enumerate(p.parts, start=1):
        total += part * (part - 2 * i + 1)
    return total // 2


def content_sum(p: Partition) -> int:
    """Sum of ``j - i`` over every box, visiting the boxes one at a time."""
    total = 0
    for i, row_len in enumerate(p.parts, start=1):
        # contents of row i run 1-i, 2-i, ..., row_len-i
        total += sum(range(1 - i, row_len + 1 - i))
    return total


@dataclass(frozen=True)
class TableauView:
    """Read-only view of the tableau whose box ``(i, j)`` holds ``j - i`` (1-based)."""

    shape: Partition

    def __contains__(self, box: tuple[int, int]) -> bool:
        i, j = box
        return 1 <= i <= len(self.shape.parts) and 1 <= j <= self.shape.parts[i - 1]

    def entry(self, i: int, j: int) -> int:
        if (i, j) not in self:
            raise IndexError(f"box ({i}, {j}) is outside shape {self.shape.parts}")
        return j - i

    def boxes(self):
        for i, row_len in enumerate(self.shape.parts, start=1):
            for j in range(1, row_len + 1):
                yield i, j

    def rows(self) -> list[list[int]]:
        return [[j - i for j in range(1, r + 1)] for i, r in enumerate(self.shape.parts, start=1)]

    def transpose(self) -> "TableauView":
        return TableauView(conjugate(self.shape))


def arm_leg_decomposition(p: Partition) -> list[tuple[int, int]]:
    """``(arm_sum, leg_sum)`` for each diagonal box ``(d, d)``.

    Every box is either on the diagonal (content 0), strictly right of one in
    its row (an arm), or strictly below one in its column (a leg), so the
    totals add up to the eigenvalue.
    """
    parts = p.parts
    cols = conjugate(p).parts if parts else ()
    out = []
    d = 1
    while d <= len(parts) and parts[d - 1] >= d:
        arm = sum(range(1, parts[d - 1] - d + 1))
        leg = -sum(range(1, cols[d - 1] - d + 1))
        out.append((arm, leg))
        d += 1
    return out


def lift_identity_check(p: Partition) -> bool:
    """Removing the first row shifts the eigenvalue by C(l1, 2) - (n - l1)."""
    if not p.parts:
        raise ValueError("lift identity needs at least one part")
    n = p.n
    l1 = p.parts[0]
    return eigenvalue(p) == eigenvalue(p.tail()) + comb(l1, 2) - (n - l1)


def hook_dimension(p: Partition) -> int:
    """Number of standard Young tableaux of shape ``p`` (hook-length formula)."""
    n = p.n
    if n > HOOK_LIMIT:
        raise ResourceLimit(f"hook_dimension supports n <= {HOOK_LIMIT}, got {n}")
    cols = conjugate(p).parts if p.parts else ()
    hooks = 1
    for i, row_len in enumerate(p.parts):
        for j in range(row_len):
            hooks *= (row_len - j - 1) + (cols[j] - i - 1) + 1
    return factorial(n) // hooks


@dataclass
class SpectrumReport:
    n: int
    values: list[int]
    multiplicities: dict[int, int] | None = None
    witnesses: dict[int, Partition] | None = None
    scanned: int | None = field(default=None, compare=False)

    def __contains__(self, value: int) -> bool:
        return value in self._value_set

    @property
    def _value_set(self) -> set[int]:
        return set(self.values)

    def contains_interval(self, lo: int, hi: int) -> list[int]:
        """Integers in ``[lo, hi]`` that are *not* eigenvalues."""
        have = self._value_set
        return [v for v in range(lo, hi + 1) if v not in have]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "values": list(self.values),
            "multiplicities": (
                None
                if self.multiplicities is None
                else {str(k): v for k, v in sorted(self.multiplicities.items())}
            ),
            "witnesses": (
                None
                if self.witnesses is None
                else {str(k): list(v.parts) for k, v in sorted(self.witnesses.items())}
            ),
        }

    def csv_rows(self) -> list[list]:
        header = ["value"]
        if self.multiplicities is not None:
            header.append("multiplicity")
        if self.witnesses is not None:
            header.append("witness")
        rows: list[list] = [header]
        for v in self.values:
            row: list = [v]
            if self.multiplicities is not None:
                row.append(self.multiplicities.get(v, 0))
            if self.witnesses is not None:
                row.append(" ".join(map(str, self.witnesses[v].parts)))
            rows.append(row)
        return rows


def spectrum_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if raw is None or raw == "":
        return DEFAULT_LIMIT
    return int(raw)


def _ones_block(start: int, t: int) -> int:
    # rows start .. start+t-1, each of length one
    return t - t * (2 * start + t - 1) // 2


def _scan_tails(m: int, cap: int, row0: int, base: int, seen: bytearray, offset: int,
                first: dict[int, tuple[int, ...]] | None, prefix: tuple[int, ...]) -> int:
    """Visit every partition of ``m`` with parts <= ``cap`` stacked from row ``row0``.

    The eigenvalue is updated incrementally as the successor rule rewrites the
    tail, so no tuple is built per partition. ``seen[value + offset]`` is set
    for every value reached; ``first`` (if given) records the first partition
    reaching each value. Returns the number of partitions visited.
    """
    if m == 0:
        seen[base + offset] = 1
        if first is not None:
            first.setdefault(base, prefix)
        return 1
    v = min(cap, m)
    a: list[int] = []
    ones = 0
    if v == 1:
        ones = m
    else:
        q, r = divmod(m, v)
        a = [v] * q
        if r > 1:
            a.append(r)
        elif r == 1:
            ones = 1
    rho = base
    for i, L in enumerate(a):
        rho += L * (L + 1) // 2 - L * (row0 + i)
    rho += _ones_block(row0 + len(a), ones)
    count = 0
    while True:
        if first is not None and not seen[rho + offset]:
            first[rho] = prefix + tuple(a) + (1,) * ones
        seen[rho + offset] = 1
        count += 1
        if not a:
            return count
        h = row0 + len(a) - 1
        L = a[-1]
        rho -= _ones_block(h + 1, ones)
        rest = ones + 1
        v = L - 1
        if v == 1:
            a.pop()
            rho -= L * (L + 1) // 2 - L * h
            ones = rest + 1
            start = h
        else:
            rho += h - L
            a[-1] = v
            q, r = divmod(rest, v)
            if q:
                rho += q * v * (v + 1) // 2 - v * (q * (2 * h + q + 1) // 2)
                a.extend([v] * q)
            ones = 0
            if r > 1:
                a.append(r)
                rho += r * (r + 1) // 2 - r * (h + q + 1)
            elif r == 1:
                ones = 1
            start = row0 + len(a)
        rho += _ones_block(start, ones)


def _scan_first_part(args):
    n, k, with_witnesses = args
    offset = comb(n, 2)
    seen = bytearray(2 * offset + 1)
    first: dict[int, tuple[int, ...]] | None = {} if with_witnesses else None
    count = _scan_tails(n - k, k, 2, comb(k, 2), seen, offset, first, (k,))
    return k, count, bytes(seen), first


def brute_spectrum(n: int, with_witnesses: bool = False, *, override: bool = False,
                   limit: int | None = None, threads: int | None = 1) -> SpectrumReport:
    """Distinct eigenvalues over all partitions of ``n``.

    Work is split by first part; ``threads`` > 1 fans the chunks out to worker
    processes (``None`` means one per CPU). Merging is order-independent for
    the value set, and witnesses are merged in enumeration order so the result
    does not depend on scheduling.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ceiling = spectrum_limit() if limit is None else limit
    if n > ceiling and not override:
        raise ResourceLimit(
            f"brute_spectrum({n}) exceeds the ceiling n <= {ceiling}",
            hint=f"pass --limit-override or set {LIMIT_ENV}",
        )
    offset = comb(n, 2)
    jobs = [(n, k, with_witnesses) for k in range(n, 0, -1)]
    if threads is None:
        threads = os.cpu_count() or 1
    if threads > 1 and n >= 40:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            # largest chunks first
            order = sorted(jobs, key=lambda j: abs(j[1] - j[0] // 3))
            results = list(pool.map(_scan_first_part, order))
    else:
        results = [_scan_first_part(j) for j in jobs]
    results.sort(key=lambda r: -r[0])

    seen = bytearray(2 * offset + 1)
    witnesses: dict[int, Partition] | None = {} if with_witnesses else None
    total = 0
    for _, count, chunk_seen, first in results:
        total += count
        for i, flag in enumerate(chunk_seen):
            if flag:
                seen[i] = 1
        if witnesses is not None:
            for value, parts in first.items():
                if value not in witnesses:
                    witnesses[value] = Partition(parts)
    values = [i - offset for i, flag in enumerate(seen) if flag]
    if witnesses is not None:
        witnesses = {v: witnesses[v] for v in values}
    return SpectrumReport(n=n, values=values, witnesses=witnesses, scanned=total)


def spectrum_with_multiplicity(n: int) -> SpectrumReport:
    """Eigenvalues with multiplicity: value v occurs sum_{rho(l)=v} (f^l)^2 times."""
    if not 1 <= n <= MULTIPLICITY_LIMIT:
        raise ResourceLimit(f"spectrum_with_multiplicity supports 1 <= n <= {MULTIPLICITY_LIMIT}, got {n}")
    mult: dict[int, int] = {}
    for parts in iter_parts(n):
        p = Partition(parts)
        v = eigenvalue(p)
        mult[v] = mult.get(v, 0) + hook_dimension(p) ** 2
    values = sorted(mult)
    return SpectrumReport(n=n, values=values, multiplicities={v: mult[v] for v in values})


def transposition_adjacency(n: int):
    """Dense adjacency matrix of Cay(S_n, T_n); permutations as index tuples."""
    import numpy as np

    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    adj = np.zeros((size, size), dtype=np.float64)
    for i, f in enumerate(perms):
        for x, y in itertools.combinations(range(n), 2):
            # g = t * f differs from f by swapping the values x and y
            g = tuple(y if v == x else x if v == y else v for v in f)
            adj[i, index[g]] = 1.0
    return adj


def cayley_adjacency_spectrum(n: int) -> SpectrumReport:
    """Spectrum of the n! x n! adjacency matrix, rounded to integers.

    Multiplicities are reported for n <= 5 only.
    """
    import numpy as np

    if n < 2:
        raise ValueError("the adjacency oracle needs n >= 2")
    if n > ADJACENCY_LIMIT:
        raise ResourceLimit(f"adjacency oracle supports n <= {ADJACENCY_LIMIT}, got {n}")
    eig = np.linalg.eigvalsh(transposition_adjacency(n))
    rounded = np.rint(eig)
    worst = float(np.max(np.abs(eig - rounded)))
    if worst > ROUNDING_TOL:
        raise RoundingFailure(f"eigenvalue off an integer by {worst:.3g} (tolerance {ROUNDING_TOL})")
    ints = [int(v) for v in rounded]
    mult: dict[int, int] = {}
    for v in ints:
        mult[v] = mult.get(v, 0) + 1
    values = sorted(mult)
    return SpectrumReport(
        n=n, values=values, multiplicities={v: mult[v] for v in values} if n <= 5 else None
    )


def naive_spectrum(n: int) -> list[int]:
    """Distinct eigenvalues by materialising every partition; slow reference path."""
    return sorted({eigenvalue(Partition(p)) for p in iter_parts(n)})


__all__ = [
    "TableauView",
    "SpectrumReport",
    "eigenvalue",
    "content_sum",
    "arm_leg_decomposition",
    "lift_identity_check",
    "hook_dimension",
    "brute_spectrum",
    "spectrum_with_multiplicity",
    "cayley_adjacency_spectrum",
    "transposition_adjacency",
    "naive_spectrum",
    "validate",
]
