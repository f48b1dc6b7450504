import pytest

from errors import GuardExceeded, ParseError, SizeMismatch
from perm import (BlockSubgroupContext, Permutation, all_permutations, avoids, bruhat_leq,
                  bruhat_leq_subword, compose, contains_pattern, is_min_length_in_class, is_smooth,
                  longest_element, min_length_class_reps, ordered_set_partitions, standardize)
from symfunc import Partition

P = Permutation.parse


def test_parse_forms():
    assert P('2143') == Permutation((2, 1, 4, 3))
    assert P('2,1,4,3') == P('[2, 1, 4, 3]') == P('2143')
    assert str(P('2143')) == '2143'
    with pytest.raises(ParseError):
        P('113')
    with pytest.raises(ParseError):
        P('abc')


def test_compose_is_function_composition():
    assert compose(P('213'), P('132')) == P('231')
    assert compose(P('132'), P('213')) == P('312')
    with pytest.raises(SizeMismatch):
        compose(P('21'), P('123'))


def test_simple_multiplication():
    w = P('231')
    assert w.times_simple(1) == compose(w, Permutation.simple(1, 3)) == P('321')
    assert w.simple_times(1) == compose(Permutation.simple(1, 3), w) == P('132')
    assert Permutation.simple(2, 3) == P('132')


def test_length_and_inverse():
    assert P('2143').length == 2
    assert P('4321').length == 6
    assert P('231').inverse == P('312')
    assert P('1234').is_identity()
    assert P('231').right_descents() == [2]


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_reduced_word_rebuilds_the_permutation(n):
    for w in all_permutations(n):
        x = Permutation.identity(n)
        for i in w.reduced_word:
            x = x.times_simple(i)
        assert x == w
        assert len(w.reduced_word) == w.length


def test_cycle_type():
    assert P('231').cycle_type == Partition((3,))
    assert P('2143').cycle_type == Partition((2, 2))
    assert P('123').cycle_type == Partition((1, 1, 1))


def test_bruhat_examples():
    e, w0 = P('123'), P('321')
    for w in all_permutations(3):
        assert bruhat_leq(e, w)
        assert bruhat_leq(w, w0)
    assert not bruhat_leq(w0, e)
    assert not bruhat_leq(P('213'), P('132'))
    assert not bruhat_leq(P('132'), P('213'))
    assert bruhat_leq(P('213'), P('231'))
    assert bruhat_leq(P('1324'), P('3412'))


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_rank_matrix_agrees_with_subword_criterion(n):
    perms = all_permutations(n)
    for u in perms:
        for w in perms:
            assert bruhat_leq(u, w) == bruhat_leq_subword(u, w)


def test_patterns():
    assert standardize((5, 2, 9)) == (2, 1, 3)
    assert contains_pattern(P('3142'), P('312'))
    assert not contains_pattern(P('231'), P('312'))
    assert not contains_pattern(P('12'), P('312'))
    assert avoids(P('2143'), '3412', '4231')
    assert not is_smooth(P('3412'))
    assert not is_smooth(P('4231'))
    assert is_smooth(P('2143'))
    assert sum(1 for w in all_permutations(4) if is_smooth(w)) == 22


def test_min_length_class_reps():
    reps = min_length_class_reps(3)
    assert [(str(lam), str(w)) for lam, w in reps] == [('3', '231'), ('2,1', '132'), ('1,1,1', '123')]


@pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
def test_min_length_reps_are_minimal(n):
    reps = min_length_class_reps(n)
    assert len(reps) == len({lam for lam, _ in reps})
    for lam, w in reps:
        assert w.cycle_type == lam
        assert is_min_length_in_class(w)
        assert w.length == lam.n - len(lam)


def test_guard(monkeypatch):
    with pytest.raises(GuardExceeded):
        min_length_class_reps(9)
    monkeypatch.setenv('KERNEL_MAX_N', '2')
    with pytest.raises(GuardExceeded):
        min_length_class_reps(3)
    monkeypatch.setenv('KERNEL_MAX_N', 'lots')
    with pytest.raises(GuardExceeded, match='must be an integer'):
        min_length_class_reps(3)


def test_block_subgroups():
    assert longest_element(BlockSubgroupContext(((1, 3), (2,)))) == P('321')
    assert longest_element(BlockSubgroupContext(((1, 2), (3,)))) == P('213')
    ctx = BlockSubgroupContext(((2, 4), (1, 3)))
    assert ctx.n == 4 and ctx.sizes == (2, 2)
    with pytest.raises(ParseError):
        BlockSubgroupContext(((1,), (3,)))


def test_ordered_set_partitions():
    assert len(list(ordered_set_partitions((2, 1)))) == 3
    assert len(list(ordered_set_partitions((1, 1, 1)))) == 6
    assert len(list(ordered_set_partitions((2, 2)))) == 6
    first = next(ordered_set_partitions((2, 1)))
    assert first.blocks == ((1, 2), (3,))
