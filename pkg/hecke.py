"""The Hecke algebra H_n(q) in the natural basis {T_w}.

Also R-polynomials, Kazhdan-Lusztig polynomials and C~_w = sum_{u<=w} P_{u,w} T_u.
"""
import logging
import threading
from functools import lru_cache

from errors import InputError, SizeMismatch
from perm import Permutation, all_permutations, bruhat_leq
from ring import HalfLaurent, ZERO, ONE, Q, render_grouped

logger = logging.getLogger(__name__)

Q_MINUS_ONE = Q - 1
Q_INV = HalfLaurent.q_power(-1)


def _accumulate(out, key, value):
    total = out[key] + value if key in out else value
    if total:
        out[key] = total
    else:
        out.pop(key, None)


class HeckeElement:
    __slots__ = ('n', 'coeffs')

    def __init__(self, n, coeffs=None):
        clean = {}
        for w, c in (coeffs or {}).items():
            if w.n != n:
                raise SizeMismatch(f"T_{w} does not live in H_{n}")
            c = HalfLaurent.coerce(c)
            if c:
                clean[w] = c
        self.n = n
        self.coeffs = clean

    @classmethod
    def basis(cls, w):
        return cls(w.n, {w: ONE})

    @classmethod
    def identity(cls, n):
        return cls.basis(Permutation.identity(n))

    @classmethod
    def generator(cls, i, n):
        return cls.basis(Permutation.simple(i, n))

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, w):
        return self.coeffs.get(w, ZERO)

    def __add__(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"H_{self.n} and H_{other.n}")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            _accumulate(out, w, c)
        return HeckeElement(self.n, out)

    def __neg__(self):
        return HeckeElement(self.n, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return HeckeElement(self.n, {w: c * scalar for w, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def specialize_q1(self):
        """The group algebra element obtained at v = 1, as {Permutation: Fraction}."""
        out = {}
        for w, c in self.coeffs.items():
            value = c.at_one()
            if value:
                out[w] = value
        return out

    def __str__(self):
        if not self.coeffs:
            return '0'
        parts = []
        for w in sorted(self.coeffs):
            c = self.coeffs[w]
            name = f"T[{w}]"
            parts.append(name if c == 1 else f"{render_grouped(c)}·{name}")
        return ' + '.join(parts)

    __repr__ = __str__


def right_mul_simple(coeffs, i):
    """(sum c_w T_w)·T_{s_i} on a coefficient map."""
    out = {}
    for w, c in coeffs.items():
        ws = w.times_simple(i)
        if w.word[i - 1] < w.word[i]:
            _accumulate(out, ws, c)
        else:
            _accumulate(out, w, c * Q_MINUS_ONE)
            _accumulate(out, ws, c * Q)
    return out


def left_mul_simple(coeffs, i):
    """T_{s_i}·(sum c_w T_w) on a coefficient map."""
    out = {}
    for w, c in coeffs.items():
        sw = w.simple_times(i)
        if w.inverse.word[i - 1] < w.inverse.word[i]:
            _accumulate(out, sw, c)
        else:
            _accumulate(out, w, c * Q_MINUS_ONE)
            _accumulate(out, sw, c * Q)
    return out


@lru_cache(maxsize=65536)
def _basis_product(x, y):
    coeffs = {x: ONE}
    for i in y.reduced_word:
        coeffs = right_mul_simple(coeffs, i)
    return tuple(coeffs.items())


def hecke_mul(a, b):
    """Product in H_n(q), factoring each T_y of b along its reduced word."""
    if a.n != b.n:
        raise SizeMismatch(f"H_{a.n} and H_{b.n}")
    out = {}
    for y, cb in b.coeffs.items():
        for x, ca in a.coeffs.items():
            scalar = ca * cb
            for w, c in _basis_product(x, y):
                _accumulate(out, w, c * scalar)
    return HeckeElement(a.n, out)


def simple_inverse(i, n):
    """T_{s_i}^{-1} = q^{-1} T_{s_i} - (1 - q^{-1})."""
    return HeckeElement(n, {
        Permutation.simple(i, n): Q_INV,
        Permutation.identity(n): Q_INV - 1,
    })


def natural_inverse(w):
    """(T_w)^{-1} as a product of generator inverses in reverse order."""
    result = HeckeElement.identity(w.n)
    for i in reversed(w.reduced_word):
        result = hecke_mul(result, simple_inverse(i, w.n))
    return result


def r_polynomial_oracle(u, w):
    """R_{u,w} read from (T_{w^-1})^{-1} = q^{-l(w)} sum (-1)^{l(w)-l(u)} R_{u,w} T_u."""
    inv = natural_inverse(w.inverse)
    sign = -1 if (w.length - u.length) % 2 else 1
    return inv[u].shift(2 * w.length) * sign


class KLTable:
    """Lazily filled R- and P-tables for one n, safe to share between threads."""

    def __init__(self, n):
        self.n = n
        self._r = {}
        self._p = {}
        self._below = {}
        self._lock = threading.RLock()

    def below(self, w):
        with self._lock:
            if w not in self._below:
                self._below[w] = frozenset(u for u in all_permutations(self.n) if bruhat_leq(u, w))
            return self._below[w]

    def r(self, u, w):
        if u == w:
            return ONE
        if u not in self.below(w):
            return ZERO
        with self._lock:
            if (u, w) in self._r:
                return self._r[(u, w)]
            s = w.right_descents()[-1]
            ws, us = w.times_simple(s), u.times_simple(s)
            if u.word[s - 1] > u.word[s]:
                value = self.r(us, ws)
            else:
                value = self.r(u, ws) * Q_MINUS_ONE + self.r(us, ws) * Q
            self._r[(u, w)] = value
            return value

    def p(self, u, w):
        if u == w:
            return ONE
        if u not in self.below(w):
            return ZERO
        with self._lock:
            if (u, w) in self._p:
                return self._p[(u, w)]
            d = w.length - u.length
            total = ZERO
            for x in self.below(w):
                if x != u and u in self.below(x):
                    total = total + self.r(u, x) * self.p(x, w)
            # q^d·bar(P) - P = total, and the two sides have disjoint v-supports
            value = -total.truncate_above(d - 1)
            self._p[(u, w)] = value
            return value

    def to_json(self):
        """Full R and P tables over all Bruhat pairs u <= w."""
        perms = all_permutations(self.n)
        r_table, p_table = {}, {}
        for w in perms:
            for u in sorted(self.below(w)):
                key = f"{u},{w}"
                r_table[key] = str(self.r(u, w))
                p_table[key] = str(self.p(u, w))
        return {'n': self.n, 'R': r_table, 'P': p_table}


_tables = {}
_tables_lock = threading.Lock()


def kl_table(n):
    with _tables_lock:
        if n not in _tables:
            logger.debug(f"Creating KL table for n={n}")
            _tables[n] = KLTable(n)
        return _tables[n]


def _check(u, w):
    if u.n != w.n:
        raise SizeMismatch(f"permutations of sizes {u.n} and {w.n}")


def r_polynomial(u, w):
    _check(u, w)
    return kl_table(w.n).r(u, w)


def kl_polynomial(u, w):
    _check(u, w)
    return kl_table(w.n).p(u, w)


def c_tilde(w):
    """C~_w = sum over u <= w of P_{u,w}(q) T_u."""
    table = kl_table(w.n)
    return HeckeElement(w.n, {u: table.p(u, w) for u in table.below(w)})


def parse_element(text, n=None):
    """"T:2143" or "ctilde:3412" (a bare word means T)."""
    kind, _, word = str(text).rpartition(':')
    w = Permutation.parse(word)
    if n is not None and w.n != n:
        raise SizeMismatch(f"{w} is not in S_{n}")
    kind = kind.lower() or 't'
    if kind == 't':
        return HeckeElement.basis(w)
    if kind in ('ctilde', 'c'):
        return c_tilde(w)
    raise InputError(f"unknown element kind {kind!r}; use T or ctilde")
