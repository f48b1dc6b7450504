import math
from fractions import Fraction

import pytest

from errors import ParseError, SizeMismatch
from ring import RatFunc, Q
from symfunc import (BASES, Partition, SymFunc, change_basis, kostka, omega, partition_stats,
                     partitions, plethysm_scale, standard_tableaux)

q = RatFunc(Q)


def lam(text):
    return Partition.parse(text)


def m(n, coeffs):
    return SymFunc(n, 'm', {lam(k): c for k, c in coeffs.items()})


def test_partitions_are_listed_descending():
    assert [str(p) for p in partitions(4)] == ['4', '3,1', '2,2', '2,1,1', '1,1,1,1']
    assert len(partitions(5)) == 7
    assert len(partitions(6)) == 11


def test_partition_parsing():
    assert lam('2,1') == Partition((2, 1))
    assert lam('[2,1]') == Partition((2, 1))
    assert lam('21') == Partition((2, 1))
    assert lam('12') == Partition((2, 1))
    assert lam('2,1').key() == '[2,1]'
    with pytest.raises(ParseError):
        Partition((1, 2))
    with pytest.raises(ParseError):
        lam('x')


def test_partition_stats():
    stats = partition_stats(lam('2,1'))
    assert stats.sign == -1
    assert stats.z == 2
    assert stats.b == 1
    assert stats.hooks == (3, 1, 1)
    assert stats.conjugate == lam('2,1')
    assert lam('3').sign == 1
    assert lam('1,1,1').z == 6
    assert lam('2,2').z == 8
    assert lam('1,1,1').b == 3
    assert lam('2,2').hooks() == (3, 2, 2, 1)
    assert lam('3,1').hooks() == (4, 2, 1, 1)
    assert lam('3,1').conjugate == lam('2,1,1')


@pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
def test_hook_length_formula_counts_standard_tableaux(n):
    for shape in partitions(n):
        count = sum(1 for _ in standard_tableaux(shape))
        assert count == math.factorial(n) // math.prod(shape.hooks())


def test_class_sizes_sum_to_factorial():
    for n in range(1, 7):
        assert sum(Fraction(math.factorial(n), p.z) for p in partitions(n)) == math.factorial(n)


def test_kostka_numbers():
    assert kostka(lam('2,1'), lam('1,1,1')) == 2
    assert kostka(lam('3'), lam('2,1')) == 1
    assert kostka(lam('1,1,1'), lam('2,1')) == 0
    assert kostka(lam('2,2'), lam('1,1,1,1')) == 2
    assert kostka(lam('3,1'), lam('2,1,1')) == 2


def test_schur_to_monomial():
    s21 = SymFunc.basis_element('s', lam('2,1'))
    assert s21.to('m') == m(3, {'2,1': 1, '1,1,1': 2})


def test_change_basis_degree_two():
    assert SymFunc.basis_element('p', lam('1,1')) == m(2, {'2': 1, '1,1': 2})
    assert SymFunc.basis_element('e', lam('2')) == m(2, {'1,1': 1})
    assert SymFunc.basis_element('h', lam('2')) == m(2, {'2': 1, '1,1': 1})
    assert SymFunc.basis_element('p', lam('2')) == m(2, {'2': 1})
    e2 = SymFunc.basis_element('e', lam('2')).to('p')
    assert e2[lam('1,1')] == Fraction(1, 2)
    assert e2[lam('2')] == Fraction(-1, 2)


def test_forgotten_basis_is_omega_of_monomial():
    for shape in partitions(4):
        assert omega(SymFunc.basis_element('m', shape)) == SymFunc.basis_element('f', shape)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_omega(n):
    for shape in partitions(n):
        assert omega(SymFunc.basis_element('e', shape)) == SymFunc.basis_element('h', shape)
        assert omega(SymFunc.basis_element('s', shape)) == SymFunc.basis_element('s', shape.conjugate)
        p = SymFunc.basis_element('p', shape)
        assert omega(p) == p.scale(shape.sign)


def test_basis_round_trips():
    F = m(4, {'4': q, '2,2': 1, '2,1,1': q * q - 1, '1,1,1,1': RatFunc(1) / (q + 1)})
    for basis in BASES:
        G = change_basis(F, basis)
        assert G.basis == basis
        assert G.to('m').coeffs == F.coeffs


def test_plethysm():
    p2 = SymFunc.basis_element('p', lam('2'))
    assert plethysm_scale(p2, q) == p2.scale(q * q)
    p11 = SymFunc.basis_element('p', lam('1,1'))
    assert plethysm_scale(p11, q + 1) == p11.scale((q + 1) * (q + 1))
    F = m(3, {'2,1': q, '1,1,1': 2})
    assert plethysm_scale(F, 1) == F
    assert plethysm_scale(F, RatFunc(1) / (q - 1)).basis == 'm'


def test_plethysm_of_monomial():
    # m_2[sX] = p_2[sX] = s(q^2) m_2
    s = RatFunc(1) / (q - 1)
    assert plethysm_scale(m(2, {'2': 1}), s) == m(2, {'2': RatFunc(1) / (q * q - 1)})


def test_arithmetic_and_sizes():
    F = m(2, {'2': 1})
    G = SymFunc.basis_element('p', lam('1,1'))
    assert (G - F) == m(2, {'1,1': 2})
    assert (F + F) == F.scale(2) == 2 * F
    with pytest.raises(SizeMismatch):
        F + m(3, {'3': 1})
    with pytest.raises(ParseError):
        F.to('x')


def test_str_and_json():
    F = m(2, {'2': 1, '1,1': q + 1})
    assert str(F) == 'm[2] + (1+q)·m[1,1]'
    assert str(m(2, {'2': -1})) == '-m[2]'
    assert str(SymFunc.zero(3)) == '0'
    data = F.to_json()
    assert data == {'basis': 'm', 'n': 2, 'terms': {'[2]': '1', '[1,1]': '1+q'}}
    assert SymFunc.from_json(data) == F
