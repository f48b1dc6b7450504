import pytest

from chromatic import (IndifferenceGraph, chromatic_qsym, graph_from_permutation, llt_poly,
                       verify_plethystic_relation)
from errors import GuardExceeded, IndifferenceViolation, InputError, PatternError
from hecke import c_tilde
from perm import Permutation, all_permutations, contains_pattern
from ring import RatFunc, Q
from symfunc import Partition, SymFunc
from traces import trace_family, y_q

P = Permutation.parse
q = RatFunc(Q)


def m(n, coeffs):
    return SymFunc(n, 'm', {Partition.parse(k): c for k, c in coeffs.items()})


def avoiding_312(n):
    return [w for w in all_permutations(n) if not contains_pattern(w, P('312'))]


def test_hessenberg_graphs():
    assert graph_from_permutation(P('231')).edges == {(1, 2), (2, 3)}
    assert graph_from_permutation(P('321')).edges == {(1, 2), (1, 3), (2, 3)}
    assert graph_from_permutation(P('213')).edges == {(1, 2)}
    assert graph_from_permutation(P('123')).edges == frozenset()
    assert graph_from_permutation(P('231')).bound_function() == [2, 3, 3]


def test_forbidden_pattern():
    with pytest.raises(PatternError):
        graph_from_permutation(P('312'))
    with pytest.raises(PatternError):
        graph_from_permutation(P('3142'))


def test_inversion_rule_is_not_an_indifference_graph():
    with pytest.raises(IndifferenceViolation):
        graph_from_permutation(P('231'), rule='inversion')
    with pytest.raises(IndifferenceViolation):
        IndifferenceGraph(3, frozenset({(1, 3)}))
    with pytest.raises(InputError):
        graph_from_permutation(P('21'), rule='unknown')


def test_chromatic_examples():
    assert chromatic_qsym(graph_from_permutation(P('231'))) == m(3, {'2,1': q, '1,1,1': 1 + 4 * q + q * q})
    assert chromatic_qsym(graph_from_permutation(P('12'))) == m(2, {'2': 1, '1,1': 2})
    assert chromatic_qsym(graph_from_permutation(P('21'))) == m(2, {'1,1': 1 + q})


def test_llt_examples():
    assert llt_poly(graph_from_permutation(P('21'))) == m(2, {'2': 1, '1,1': 1 + q})
    assert str(llt_poly(graph_from_permutation(P('21')))) == 'm[2] + (1+q)·m[1,1]'


def test_all_pairs_ascents_differ():
    G = graph_from_permutation(P('12'))
    assert chromatic_qsym(G, ascents='all_pairs') == m(2, {'2': 1, '1,1': 1 + q})
    assert chromatic_qsym(G, ascents='all_pairs') != y_q(c_tilde(P('12')))
    with pytest.raises(InputError):
        chromatic_qsym(G, ascents='some')


@pytest.mark.parametrize('n', [1, 2, 3])
def test_chromatic_is_y_of_ctilde(n):
    for w in avoiding_312(n):
        assert chromatic_qsym(graph_from_permutation(w)) == y_q(c_tilde(w))


@pytest.mark.parametrize('n', [1, 2, 3])
def test_llt_is_read_from_llt_traces(n):
    eps_llt = trace_family('eps_llt', n)
    for w in avoiding_312(n):
        D = c_tilde(w)
        expected = SymFunc(n, 'm', {shape: table(D) for shape, table in eps_llt.items()})
        assert llt_poly(graph_from_permutation(w)) == expected


@pytest.mark.parametrize('n', [2, 3])
def test_plethystic_relation(n):
    for w in avoiding_312(n):
        assert verify_plethystic_relation(w)


def test_variable_count_does_not_matter():
    G = graph_from_permutation(P('231'))
    assert chromatic_qsym(G, 4) == chromatic_qsym(G)
    assert llt_poly(G, 4) == llt_poly(G)
    with pytest.raises(InputError):
        chromatic_qsym(G, 2)


def test_guard():
    G = graph_from_permutation(Permutation.identity(8))
    with pytest.raises(GuardExceeded):
        llt_poly(G)


def test_graph_json():
    assert graph_from_permutation(P('231')).to_json() == {'n': 3, 'edges': [[1, 2], [2, 3]]}
