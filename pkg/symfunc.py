"""Partitions and homogeneous symmetric functions of degree n.

A SymFunc is a basis tag plus {Partition: RatFunc}. Transition matrices to
the monomial basis are computed once per n from explicit polynomials in
exactly n variables, using the row convention b_lam = sum_mu A[lam][mu] m_mu.
"""
import json
import math
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement
from typing import NamedTuple

from sympy import Matrix, Rational

from errors import SizeMismatch, ParseError
from ring import RatFunc, compose_power, render_grouped, parse

logger = logging.getLogger(__name__)

BASES = ('m', 'e', 'h', 'p', 's', 'f')


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ParseError(f"not a partition: {self.parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def parse(cls, text):
        """Accept "2,1", "[2,1]" or "21"."""
        text = text.strip().strip('[]()')
        try:
            if ',' in text:
                parts = [int(p) for p in text.split(',') if p]
            else:
                parts = [int(ch) for ch in text]
        except ValueError:
            raise ParseError(f"not a partition: {text!r}")
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def key(self):
        return '[' + ','.join(map(str, self.parts)) + ']'

    def __str__(self):
        return ','.join(map(str, self.parts))

    @cached_property
    def conjugate(self):
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def multiplicities(self):
        counts = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    @property
    def z(self):
        return math.prod(i ** m * math.factorial(m) for i, m in self.multiplicities().items())

    @property
    def sign(self):
        return -1 if (self.n - len(self.parts)) % 2 else 1

    @property
    def b(self):
        return sum(i * p for i, p in enumerate(self.parts))

    def hooks(self):
        conj = self.conjugate.parts
        hooks = [(row - j - 1) + (conj[j] - i - 1) + 1
                 for i, row in enumerate(self.parts)
                 for j in range(row)]
        return tuple(sorted(hooks, reverse=True))


class PartitionStats(NamedTuple):
    z: int
    sign: int
    b: int
    hooks: tuple
    conjugate: Partition


def partition_stats(lam):
    return PartitionStats(lam.z, lam.sign, lam.b, lam.hooks(), lam.conjugate)


@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n, lexicographically descending.

    >>> [str(p) for p in partitions(3)]
    ['3', '2,1', '1,1,1']
    """
    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest
    return tuple(Partition(p) for p in gen(n, n))


def _horizontal_strips(shape, size, bound):
    """Shapes nu inside bound with nu/shape a horizontal strip of the given size."""
    rows = len(bound)
    shape = tuple(shape) + (0,) * (rows - len(shape))

    def grow(i, left, prefix):
        if i == rows:
            if left == 0:
                yield tuple(p for p in prefix if p)
            return
        upper = bound[i] if i == 0 else min(bound[i], shape[i - 1])
        for add in range(min(left, upper - shape[i]), -1, -1):
            yield from grow(i + 1, left - add, prefix + (shape[i] + add,))

    yield from grow(0, size, ())


@lru_cache(maxsize=None)
def kostka(lam, mu):
    """Number of semistandard tableaux of shape lam and content mu."""
    if lam.n != mu.n:
        return 0
    states = {(): 1}
    for part in mu.parts:
        nxt = {}
        for shape, count in states.items():
            for nu in _horizontal_strips(shape, part, lam.parts):
                nxt[nu] = nxt.get(nu, 0) + count
        states = nxt
    return states.get(lam.parts, 0)


def standard_tableaux(lam):
    """Enumerate standard Young tableaux of shape lam as tuples of rows.

    Builds tableaux by placing n, n-1, ... in removable corners.
    """
    if lam.n == 0:
        yield ()
        return
    n = lam.n
    parts = list(lam.parts)
    for i, row in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if row > below:
            smaller = parts[:i] + [row - 1] + parts[i + 1:]
            for tab in standard_tableaux(Partition(tuple(p for p in smaller if p))):
                rows = [list(r) for r in tab] + [[] for _ in range(len(parts) - len(tab))]
                rows[i].append(n)
                yield tuple(tuple(r) for r in rows)


# Explicit polynomials in n variables: {exponent tuple: int}

def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def _unit(n, positions):
    exp = [0] * n
    for i in positions:
        exp[i] += 1
    return tuple(exp)


def _generator(basis, k, n):
    if basis == 'p':
        return {_unit(n, [i] * k): 1 for i in range(n)}
    if basis == 'e':
        return {_unit(n, c): 1 for c in combinations(range(n), k)}
    if basis == 'h':
        return {_unit(n, c): 1 for c in combinations_with_replacement(range(n), k)}
    raise ValueError(basis)


def _multiplicative_matrix(basis, n):
    lams = partitions(n)
    gens = {k: _generator(basis, k, n) for k in range(1, n + 1)}
    rows = []
    for lam in lams:
        poly = {(0,) * n: 1}
        for part in lam.parts:
            poly = _poly_mul(poly, gens[part])
        rows.append([Fraction(poly.get(tuple(mu.parts) + (0,) * (n - len(mu)), 0)) for mu in lams])
    return rows


def _to_sympy(rows):
    return Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in rows])


def _from_sympy(mat):
    return [[Fraction(int(x.p), int(x.q)) for x in mat.row(i)] for i in range(mat.rows)]


class Transitions:
    """Transition matrices between every basis and m, for one n."""

    def __init__(self, n):
        lams = partitions(n)
        size = len(lams)
        to_m = {'m': [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]}
        for basis in ('p', 'e', 'h'):
            to_m[basis] = _multiplicative_matrix(basis, n)
        to_m['s'] = [[Fraction(kostka(lam, mu)) for mu in lams] for lam in lams]
        a_p = _to_sympy(to_m['p'])
        signs = Matrix.diag(*[lam.sign for lam in lams])
        to_m['f'] = _from_sympy(a_p.inv() * signs * a_p)
        self.n = n
        self.partitions = lams
        self.index = {lam: i for i, lam in enumerate(lams)}
        self.to_m = to_m
        self.from_m = {b: _from_sympy(_to_sympy(rows).inv()) for b, rows in to_m.items()}


_transitions = {}
_transitions_lock = threading.Lock()


def transitions(n):
    with _transitions_lock:
        if n not in _transitions:
            logger.debug(f"Building symmetric function transitions for n={n}")
            _transitions[n] = Transitions(n)
        return _transitions[n]


def _apply(coeffs, matrix, trans):
    out = {}
    for lam, c in coeffs.items():
        row = matrix[trans.index[lam]]
        for j, a in enumerate(row):
            if a:
                mu = trans.partitions[j]
                out[mu] = out[mu] + c * a if mu in out else c * a
    return out


class SymFunc:
    __slots__ = ('n', 'basis', 'coeffs')

    def __init__(self, n, basis, coeffs=None):
        if basis not in BASES:
            raise ParseError(f"unknown basis {basis!r}")
        clean = {}
        for lam, c in (coeffs or {}).items():
            if not isinstance(lam, Partition):
                lam = Partition(tuple(lam))
            if lam.n != n:
                raise SizeMismatch(f"partition {lam} is not of size {n}")
            c = RatFunc.coerce(c)
            if c:
                clean[lam] = c
        self.n = n
        self.basis = basis
        self.coeffs = clean

    @classmethod
    def basis_element(cls, basis, lam):
        return cls(lam.n, basis, {lam: 1})

    @classmethod
    def zero(cls, n, basis='m'):
        return cls(n, basis)

    def __getitem__(self, lam):
        return self.coeffs.get(lam, RatFunc(0))

    def is_zero(self):
        return not self.coeffs

    def to(self, basis):
        return change_basis(self, basis)

    def _aligned(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"degrees {self.n} and {other.n} differ")
        return other.to(self.basis)

    def __add__(self, other):
        other = self._aligned(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return SymFunc(self.n, self.basis, out)

    def __neg__(self):
        return SymFunc(self.n, self.basis, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return SymFunc(self.n, self.basis, {lam: c * scalar for lam, c in self.coeffs.items()})

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.n != other.n:
            return False
        return self.to('m').coeffs == other.to('m').coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.to('m').coeffs.items())))

    def terms(self):
        """(Partition, coefficient) pairs in lexicographically descending order."""
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        if not self.coeffs:
            return '0'
        out = []
        for lam, c in self.terms():
            name = f"{self.basis}{lam.key()}"
            if c == 1:
                out.append(name)
            elif c == -1:
                out.append(f"-{name}")
            else:
                out.append(f"{render_grouped(c)}·{name}")
        return ' + '.join(out)

    __repr__ = __str__

    def to_json(self):
        return {
            'basis': self.basis,
            'n': self.n,
            'terms': {lam.key(): str(c) for lam, c in self.terms()},
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {Partition.parse(k): parse(v) for k, v in data.get('terms', {}).items()}
        return cls(int(data['n']), data['basis'], terms)


def change_basis(F, target):
    """Re-express F in the target basis."""
    if target not in BASES:
        raise ParseError(f"unknown basis {target!r}")
    if F.basis == target:
        return F
    trans = transitions(F.n)
    coeffs = F.coeffs
    if F.basis != 'm':
        coeffs = _apply(coeffs, trans.to_m[F.basis], trans)
    if target != 'm':
        coeffs = _apply(coeffs, trans.from_m[target], trans)
    return SymFunc(F.n, target, coeffs)


def omega(F):
    """The involution p_lam -> sgn(lam) p_lam."""
    P = F.to('p')
    return SymFunc(F.n, 'p', {lam: c * lam.sign for lam, c in P.coeffs.items()}).to(F.basis)


def plethysm_scale(F, s):
    """F[s·X]: p_k -> s(q^k)·p_k, returned in F's basis."""
    s = RatFunc.coerce(s)
    powers = {}
    out = {}
    for lam, c in F.to('p').coeffs.items():
        factor = RatFunc(1)
        for part in lam.parts:
            if part not in powers:
                powers[part] = compose_power(s, part)
            factor = factor * powers[part]
        out[lam] = c * factor
    return SymFunc(F.n, 'p', out).to(F.basis)
