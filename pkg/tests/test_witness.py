from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ts_spectra.constructors import RecipeId
from ts_spectra.errors import FirstRowTooSmall, NotFound, OutOfRange
from ts_spectra.partitions import Partition
from ts_spectra.spectrum import brute_spectrum, eigenvalue
from ts_spectra.witness import (
    ConjugateStep,
    LiftStep,
    RecipeStep,
    certify,
    constructive_witness,
    coverage,
    fallback_search,
    lift,
    lift_plan,
    negate,
    proof_choice,
    replay,
    theorem_c_inequalities,
    witness,
)


def test_lift_examples():
    p = lift(Partition.of(3, 1), 4)
    assert p.parts == (4, 3, 1) and eigenvalue(p) == eigenvalue(Partition.of(3, 1)) + 6 - 4 == 4
    assert lift(Partition(()), 6).parts == (6,)
    assert eigenvalue(lift(Partition(()), 6)) == 15
    with pytest.raises(FirstRowTooSmall):
        lift(Partition.of(25, 1), 17)


def test_negate_examples():
    cert = certify(10, 3, Partition.of(4, 4, 1, 1), [RecipeStep(RecipeId.Small3Even, 10, 3, 0)])
    neg = negate(cert)
    assert neg.target == -3 and neg.partition.parts == (4, 2, 2, 2) and neg.verified
    assert isinstance(neg.derivation[-1], ConjugateStep)
    zero = witness(15, 0)
    assert negate(zero) == zero
    top = certify(6, 15, Partition.of(6), [LiftStep(6)])
    assert negate(top).partition.parts == (1,) * 6 and negate(top).achieved == -15


def test_constructive_examples():
    c = constructive_witness(45, 41)
    assert c.derivation[0].recipe is RecipeId.OddT1Row3
    assert (c.derivation[0].a, c.derivation[0].c) == (10, 4)
    assert c.partition.parts == (10, 10, 8, 6, 4, 3, 2, 1, 1)
    c = constructive_witness(51, 51)
    assert c.derivation[0].recipe is RecipeId.EvenSmallA
    assert c.partition.parts == (17, 12, 5, 3, 2) + (1,) * 12 and c.achieved == 51


def test_constructive_example_above_proven_range():
    # 8 is above C(4,2) = 6, the proven range at n = 27, so only the loose mode serves it
    with pytest.raises(OutOfRange):
        constructive_witness(27, 8)
    c = constructive_witness(27, 8, strict=False)
    assert c.derivation[0].recipe is RecipeId.EvenMinus2
    assert c.partition.parts == (6, 6, 6, 5, 3, 1)


def test_misprint_cell_has_no_recipe():
    # even case, a = 4, c = 2 at small a: the printed partition is wrong and not implemented
    assert proof_choice(50, 4, 2) is None
    cert = witness(50, 4)
    assert cert.verified and eigenvalue(cert.partition) == 4


def test_lift_plan_examples():
    cert = lift_plan(76, 300)
    assert cert.partition.parts == (25, 17, 12, 5, 3, 2) + (1,) * 12
    assert cert.step_kinds() == ["recipe", "lift"] and cert.derivation[-1].first_row == 25
    cert = lift_plan(76, 190)
    assert cert.verified and cert.partition.first == 25
    assert cert.step_kinds() == ["recipe", "conjugate", "lift"]
    # sub-target is 190 - 300 + 51 = -59
    assert eigenvalue(cert.partition.tail()) == -59
    top = lift_plan(30, comb(30, 2))
    assert top.partition.parts == (30,)


def test_fallback_examples():
    with pytest.raises(NotFound):
        fallback_search(9, 2)
    cert = fallback_search(15, 0)
    assert cert.partition.parts == (8,) + (1,) * 7
    cert = fallback_search(16, 4, budget=200)
    assert cert.verified and cert.derivation[0].scanned <= 200


def test_witness_examples():
    assert witness(10, -3).partition.parts == (4, 2, 2, 2)
    assert witness(11, 2).partition.parts == (4, 4, 2, 1)
    assert witness(76, 300).partition.parts == (25, 17, 12, 5, 3, 2) + (1,) * 12
    with pytest.raises(NotFound) as info:
        witness(9, 2)
    assert str(info.value) .startswith("no partition of 9 attains 2")


def test_certificate_json_shape():
    js = witness(76, 300).to_json()
    assert list(js) == ["n", "target", "partition", "derivation", "achieved", "verified"]
    assert {s["step"] for s in js["derivation"]} <= {"recipe", "lift", "conjugate", "search"}


def test_replay_reproduces_partition():
    for n, e in [(76, 300), (76, -190), (45, 41), (16, 4), (100, 700), (10, -3)]:
        cert = witness(n, e)
        assert replay(cert.derivation) == cert.partition


def test_coverage_examples():
    rep = coverage(27, 0, comb(4, 2))
    assert rep.covered == 7 and rep.missing == []
    rep = coverage(9, 2, 2)
    assert rep.covered == 0 and rep.missing == [2]
    js = rep.to_json()
    assert js["missing"] == [2]


def test_coverage_flagship_window():
    rep = coverage(76, -1275, 1275, keep_derivations=False)
    assert all(abs(e) > 300 for e in rep.missing)


def test_inequalities():
    for n in (76, 100, 500):
        assert theorem_c_inequalities(n)
    with pytest.raises(ValueError):
        theorem_c_inequalities(75)


@settings(max_examples=60)
@given(st.integers(8, 22), st.data())
def test_witness_matches_brute_force(n, data):
    e = data.draw(st.integers(-comb(n, 2), comb(n, 2)))
    if e in brute_spectrum(n):
        cert = witness(n, e)
        assert cert.verified and eigenvalue(cert.partition) == e and cert.partition.n == n
    else:
        with pytest.raises(NotFound):
            witness(n, e)
