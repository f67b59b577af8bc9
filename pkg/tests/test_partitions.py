import pytest
from hypothesis import given
from hypothesis import strategies as st

from ts_spectra.errors import InvalidSpec, NonPositivePart, NotMonotone, PartitionError
from ts_spectra.partitions import (
    Composition,
    MultiplicitySpec,
    Partition,
    conjugate,
    enumerate_partitions,
    from_multiplicity_spec,
    iter_parts,
    partition_count,
    to_multiplicity_spec,
    validate,
)

from strategies import partitions

# p(n) for n = 0..20, hand-checked table
P_SMALL = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def test_validate_figure_shape():
    p = validate([4, 3, 1])
    assert p.n == 8 and p.parts == (4, 3, 1)


def test_validate_single_box():
    assert validate([1]).n == 1


def test_validate_rejects_increase():
    with pytest.raises(NotMonotone) as info:
        validate([3, 4, 1])
    assert info.value.index == 0


def test_validate_rejects_zero_and_negative():
    with pytest.raises(NonPositivePart):
        validate([3, 0])
    with pytest.raises(PartitionError):
        validate([2, -1])


def test_partition_accessors():
    p = Partition.of(5, 4, 1, 1)
    assert len(p) == 4 and p.first == 5 and p[1] == 4
    assert p.tail() == Partition((4, 1, 1))
    assert p.to_json() == [5, 4, 1, 1]
    assert Partition(()).first == 0


def test_multiplicity_expand():
    assert from_multiplicity_spec([(5, 1), (4, 1), (1, 2)]).parts == (5, 4, 1, 1)
    assert from_multiplicity_spec([(7, 3)]).parts == (7, 7, 7)


def test_multiplicity_rejects_increasing_parts():
    with pytest.raises(InvalidSpec):
        from_multiplicity_spec([(2, 1), (3, 1)])
    with pytest.raises(InvalidSpec):
        MultiplicitySpec(((3, 0),))


def test_multiplicity_roundtrip_example():
    spec = to_multiplicity_spec(Partition.of(5, 4, 1, 1))
    assert spec.entries == ((5, 1), (4, 1), (1, 2))
    assert spec.to_json() == [[5, 1], [4, 1], [1, 2]]


def test_composition():
    c = Composition((3, 4, 1))
    assert c.n == 8 and not c.is_monotone()
    assert c.sorted().parts == (4, 3, 1)
    with pytest.raises(NonPositivePart):
        Composition((2, 0))


def test_conjugate_examples():
    assert conjugate(Partition.of(4, 4, 1, 1)).parts == (4, 2, 2, 2)
    assert conjugate(Partition.of(6)).parts == (1,) * 6
    assert conjugate(Partition.of(3, 2, 1)).parts == (3, 2, 1)
    assert conjugate(Partition(())) == Partition(())


def test_enumerate_small():
    assert [p.parts for p in enumerate_partitions(1)] == [(1,)]
    five = [p.parts for p in enumerate_partitions(5)]
    assert len(five) == 7
    assert five[0] == (5,) and five[-1] == (1, 1, 1, 1, 1)
    assert five == sorted(five, reverse=True)
    assert sum(1 for _ in enumerate_partitions(10)) == 42
    assert list(iter_parts(0)) == [()]


def test_iter_parts_max_part():
    got = list(iter_parts(6, max_part=2))
    assert got == [(2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1,) * 6]


def test_partition_count_table():
    assert [partition_count(n) for n in range(21)] == P_SMALL
    assert partition_count(76) == 9289091
    with pytest.raises(ValueError):
        partition_count(-1)


@pytest.mark.parametrize("n", range(0, 31))
def test_enumeration_matches_count(n):
    seen = list(iter_parts(n))
    assert len(seen) == partition_count(n)
    assert len(set(seen)) == len(seen)
    assert all(sum(p) == n for p in seen)


@given(partitions())
def test_conjugate_is_involution(p):
    q = conjugate(p)
    assert q.n == p.n
    assert conjugate(q) == p
    assert q.first == len(p)


@given(partitions())
def test_multiplicity_roundtrip(p):
    assert from_multiplicity_spec(to_multiplicity_spec(p)) == p


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_validate_accepts_exactly_sorted(seq):
    if seq == sorted(seq, reverse=True):
        assert validate(seq).parts == tuple(seq)
    else:
        with pytest.raises(NotMonotone):
            validate(seq)
