"""Acceptance gate: the ten release criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also printed in the terminal summary.
"""

from __future__ import annotations

import time
from math import comb, factorial

import pytest

from ts_spectra.constructors import sweep
from ts_spectra.errors import NotFound
from ts_spectra.partitions import Partition, conjugate, enumerate_partitions, iter_parts, partition_count
from ts_spectra.spectrum import (
    arm_leg_decomposition,
    brute_spectrum,
    cayley_adjacency_spectrum,
    content_sum,
    eigenvalue,
    hook_dimension,
    lift_identity_check,
    spectrum_with_multiplicity,
)
from ts_spectra.witness import coverage, theorem_c_inequalities, witness

RESULTS: list[str] = []


def _gate(number: int, title: str, budget_s: float, body) -> None:
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        detail = body() or ""
        ok = True
    except AssertionError as exc:
        detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed >= budget_s:
            ok = False
            detail = f"over time budget {budget_s:g}s"
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s) {detail}".rstrip()
        RESULTS.append(line)
        print(line)
    assert elapsed < budget_s, f"criterion {number} took {elapsed:.1f}s, budget {budget_s}s"


def test_criterion_01_formula_agreement():
    def body():
        checked = 0
        for n in range(1, 31):
            for p in enumerate_partitions(n):
                e = eigenvalue(p)
                assert e == content_sum(p), p
                assert e == sum(a + l for a, l in arm_leg_decomposition(p)), p
                checked += 1
        assert checked == sum(partition_count(n) for n in range(1, 31))
        return f"{checked} partitions"

    _gate(1, "row formula = content sum = arm/leg total, n <= 30", 1.0, body)


def test_criterion_02_worked_example():
    def body():
        p = Partition.of(4, 3, 1)
        assert eigenvalue(p) == 4
        assert arm_leg_decomposition(p) == [(6, -3), (1, 0)]
        assert content_sum(p) == 4

    _gate(2, "eigenvalue(4,3,1) = 4 with arms/legs (6,-3), (1,0)", 1.0, body)


def test_criterion_03_small_nonexistence():
    def body():
        absent = {(9, 2), (10, 2), (8, 3), (11, 3)}
        present = {(11, 2), (12, 2), (10, 3), (13, 3)}
        for n, e in absent:
            assert e not in brute_spectrum(n), (n, e)
        for n, e in present:
            assert e in brute_spectrum(n), (n, e)

    _gate(3, "2 and 3 absent/present at the stated small n", 1.0, body)


def test_criterion_04_adjacency_oracle():
    def body():
        for n in range(2, 7):
            adj = cayley_adjacency_spectrum(n)
            assert adj.values == brute_spectrum(n).values, n
            if n <= 5:
                hooks = spectrum_with_multiplicity(n).multiplicities
                assert adj.multiplicities == hooks, n
                direct = {}
                for p in enumerate_partitions(n):
                    direct[eigenvalue(p)] = direct.get(eigenvalue(p), 0) + hook_dimension(p) ** 2
                assert direct == hooks
                assert sum(hooks.values()) == factorial(n)
        return "n = 2..6"

    _gate(4, "adjacency-matrix spectrum matches partitions", 30.0, body)


def test_criterion_05_constructor_sweep():
    def body():
        summary = sweep(200)
        assert summary.checked == summary.passed + len(summary.errata)
        documented = absent = 0
        for rec in summary.errata:
            if rec.documented:
                documented += 1
                continue
            # boundary-degenerate rows: the engine must still certify the target,
            # unless the target is not an eigenvalue at all (only below n = 15)
            try:
                cert = witness(rec.n, rec.target)
            except NotFound:
                assert rec.n < 15 and rec.target not in brute_spectrum(rec.n), rec
                absent += 1
                continue
            assert cert.verified and eigenvalue(cert.partition) == rec.target, rec
            for step in cert.derivation:
                assert not (getattr(step, "recipe", None) == rec.recipe
                            and (step.n, step.a, step.c) == (rec.n, rec.a, rec.c)), rec
        return (f"{summary.checked} points, {summary.passed} clean, "
                f"{documented} documented, {len(summary.errata) - documented - absent} routed, "
                f"{absent} absent from the spectrum")

    _gate(5, "every recipe over its range, n <= 200", 120.0, body)


def test_criterion_06_desk_scale_interval():
    def body():
        searched = 0
        for n in range(15, 151):
            t = comb((n - 15) // 3, 2)
            rep = coverage(n, -t, t, keep_derivations=False)
            assert rep.missing == [], (n, rep.missing)
            searched += len(rep.searched)
        return f"n = 15..150, {searched} cells via search"

    _gate(6, "complete coverage of [-C((n-15)/3,2), C((n-15)/3,2)]", 300.0, body)


def test_criterion_07_constructive_range():
    def body():
        for n in range(76, 121):
            hi = comb(n // 3, 2)
            floor = comb((n - 15) // 3, 2)
            rep = coverage(n, 0, hi, keep_derivations=False)
            assert rep.missing == [], (n, rep.missing)
            above = [e for e in rep.searched if e > floor]
            assert above == [], (n, above)
        for n in range(76, 501):
            assert theorem_c_inequalities(n), n
        return "n = 76..120 covered, inequalities hold to 500"

    _gate(7, "[0, C(n/3,2)] without search above C((n-15)/3,2)", 300.0, body)


def test_criterion_08_flagship_conjecture():
    def body():
        rep = brute_spectrum(76)
        assert rep.scanned == 9289091 == partition_count(76)
        assert comb((2 * 76 + 1) // 3, 2) == 1275
        assert rep.contains_interval(-1275, 1275) == []
        return f"{rep.scanned} partitions, {len(rep.values)} distinct values"

    # the stated 60 s target is for a compiled build; this interpreter gets the same budget
    _gate(8, "spectrum(76) contains [-1275, 1275]", 60.0, body)


def test_criterion_09_engine_matches_brute_force():
    def body():
        cells = 0
        for n in range(8, 25):
            spec = set(brute_spectrum(n).values)
            top = comb(n, 2)
            for e in range(-top, top + 1):
                cells += 1
                if e in spec:
                    cert = witness(n, e)
                    assert cert.verified and cert.partition.n == n and eigenvalue(cert.partition) == e
                else:
                    with pytest.raises(NotFound):
                        witness(n, e)
        return f"{cells} cells"

    _gate(9, "witness succeeds iff e is in the spectrum, n = 8..24", 120.0, body)


def test_criterion_10_property_suite():
    def body():
        for n in range(1, 21):
            values = set()
            for p in enumerate_partitions(n):
                q = conjugate(p)
                assert conjugate(q) == p
                assert eigenvalue(q) == -eigenvalue(p)
                assert lift_identity_check(p)
                values.add(eigenvalue(p))
            assert values == {-v for v in values}
        for n in range(0, 31):
            assert sum(1 for _ in iter_parts(n)) == partition_count(n)

    _gate(10, "involution, negation, symmetry, lift identity, counts", 30.0, body)


@pytest.fixture(scope="session", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and RESULTS:
        reporter.write_sep("=", "acceptance criteria")
        for line in sorted(RESULTS):
            reporter.write_line(line)
