"""Exact arithmetic in Q[v, 1/v] (v = q^(1/2)) and its field of fractions.

HalfLaurent stores {v-exponent: Fraction}. RatFunc keeps a canonical
num/den pair: the denominator is a monic polynomial in v with nonzero
constant term, coprime to the numerator, so equality is structural.
"""
import re
import logging
from fractions import Fraction
from functools import reduce

from sympy import Poly, QQ, Rational, Symbol

from errors import DivisionByZero, PoleError, ParseError, SingularSystem

logger = logging.getLogger(__name__)

_V = Symbol('v')


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


class HalfLaurent:
    __slots__ = ('coeffs', '_hash')

    def __init__(self, coeffs=None):
        clean = {}
        for exp, c in (coeffs or {}).items():
            c = _frac(c)
            if c:
                clean[int(exp)] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def v_power(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def q_power(cls, k, c=1):
        return cls({2 * k: c})

    @classmethod
    def coerce(cls, other):
        if isinstance(other, HalfLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.constant(other)
        return NotImplemented

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_term(self):
        return self.coeffs.get(0, Fraction(0))

    def leading_coeff(self):
        return self.coeffs[self.max_exp()] if self.coeffs else Fraction(0)

    def __add__(self, other):
        other = HalfLaurent.coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = HalfLaurent.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = HalfLaurent.coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers need RatFunc")
        result = HalfLaurent.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = HalfLaurent.coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def shift(self, k):
        """Multiply by v^k."""
        return HalfLaurent({e + k: c for e, c in self.coeffs.items()})

    def bar(self):
        """The involution v -> 1/v."""
        return HalfLaurent({-e: c for e, c in self.coeffs.items()})

    def stretch(self, k):
        return HalfLaurent({e * k: c for e, c in self.coeffs.items()})

    def truncate_above(self, bound):
        """Keep only terms with v-exponent <= bound."""
        return HalfLaurent({e: c for e, c in self.coeffs.items() if e <= bound})

    def at_one(self):
        return sum(self.coeffs.values(), Fraction(0))

    def is_polynomial_in_q(self):
        return all(e >= 0 and e % 2 == 0 for e in self.coeffs)

    def has_nonnegative_integer_coeffs(self):
        return all(c >= 0 and c.denominator == 1 for c in self.coeffs.values())

    def __repr__(self):
        return f"HalfLaurent({render_laurent(self)!r})"

    def __str__(self):
        return render_laurent(self)

    @classmethod
    def parse(cls, text):
        return parse_laurent(text)


ZERO = HalfLaurent()
ONE = HalfLaurent.constant(1)
V = HalfLaurent.v_power(1)
Q = HalfLaurent.q_power(1)


def _to_poly(h):
    return Poly.from_dict({(e,): Rational(c.numerator, c.denominator) for e, c in h.coeffs.items()},
                          _V, domain=QQ)


def _from_poly(p):
    return HalfLaurent({e[0]: _frac(c) for e, c in p.as_dict(native=False).items()})


class RatFunc:
    __slots__ = ('num', 'den', '_hash')

    def __init__(self, num, den=None, _canonical=False):
        num = HalfLaurent.coerce(num)
        den = ONE if den is None else HalfLaurent.coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs HalfLaurent, int or Fraction parts")
        if den.is_zero():
            raise DivisionByZero()
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, HalfLaurent)):
            return cls(other)
        return NotImplemented

    @classmethod
    def q_power(cls, k):
        return cls(HalfLaurent.q_power(k), _canonical=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den == ONE

    def __add__(self, other):
        return ring_arith(self, other, 'add')

    __radd__ = __add__

    def __sub__(self, other):
        return ring_arith(self, other, 'sub')

    def __rsub__(self, other):
        return ring_arith(other, self, 'sub')

    def __mul__(self, other):
        return ring_arith(self, other, 'mul')

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ring_arith(self, other, 'div')

    def __rtruediv__(self, other):
        return ring_arith(other, self, 'div')

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __pow__(self, k):
        base = self if k >= 0 else ring_arith(1, self, 'div')
        result = RatFunc(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({render(self)!r})"

    def __str__(self):
        return render(self)

    @classmethod
    def parse(cls, text):
        return parse(text)


def _canonicalize(num, den):
    if num.is_zero():
        return ZERO, ONE
    # v-powers of the denominator move to the numerator
    num = num.shift(-den.min_exp())
    den = den.shift(-den.min_exp())
    if den.is_constant():
        c = den.constant_term()
        return HalfLaurent({e: x / c for e, x in num.coeffs.items()}), ONE
    low = num.min_exp()
    n_poly, d_poly = _to_poly(num.shift(-low)), _to_poly(den)
    g = n_poly.gcd(d_poly)
    if g.degree() > 0:
        n_poly, d_poly = n_poly.exquo(g), d_poly.exquo(g)
    num, den = _from_poly(n_poly).shift(low), _from_poly(d_poly)
    lead = den.leading_coeff()
    if lead != 1:
        num = HalfLaurent({e: x / lead for e, x in num.coeffs.items()})
        den = HalfLaurent({e: x / lead for e, x in den.coeffs.items()})
    return num, den


def ring_arith(a, b, op):
    """Exact add/sub/mul/div on RatFunc values (ints and HalfLaurents are promoted)."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if a is NotImplemented or b is NotImplemented:
        return NotImplemented
    if op == 'div':
        if b.is_zero():
            raise DivisionByZero()
        return RatFunc(a.num * b.den, a.den * b.num)
    if op == 'mul':
        if a.is_laurent() and b.is_laurent():
            return RatFunc(a.num * b.num, _canonical=True)
        return RatFunc(a.num * b.num, a.den * b.den)
    if op in ('add', 'sub'):
        bn = b.num if op == 'add' else -b.num
        if a.den == b.den:
            if a.is_laurent():
                return RatFunc(a.num + bn, _canonical=True)
            return RatFunc(a.num + bn, a.den)
        return RatFunc(a.num * b.den + bn * a.den, a.den * b.den)
    raise ValueError(f"Unknown ring operation: {op}")


def compose_power(f, k):
    """Substitute q -> q^k (every v-exponent times k)."""
    if k < 1:
        raise ValueError("compose_power needs k >= 1")
    f = RatFunc.coerce(f)
    if k == 1:
        return f
    return RatFunc(f.num.stretch(k), f.den.stretch(k))


def specialize_q1(f):
    """Value of f at v = 1 as a Fraction."""
    f = RatFunc.coerce(f)
    d = f.den.at_one()
    if d == 0:
        raise PoleError(f"{render(f)} has a pole at q=1")
    return f.num.at_one() / d


def solve_linear(matrix, rhs):
    """Solve matrix · x = rhs over RatFunc by Gaussian elimination.

    Args:
        matrix: square list of lists of RatFunc
        rhs: list of RatFunc

    Returns:
        list of RatFunc, the unique solution

    Raises:
        SingularSystem when some column has no nonzero pivot
    """
    size = len(matrix)
    rows = [list(map(RatFunc.coerce, row)) + [RatFunc.coerce(r)] for row, r in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = RatFunc(1) / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(size):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [row[size] for row in rows]


# Rendering and parsing of the "q^{a/2}" text form

def _render_exp(e):
    if e == 0:
        return ''
    if e == 2:
        return 'q'
    if e % 2 == 0:
        return f"q^{{{e // 2}}}"
    return f"q^{{{e}/2}}"


def _render_coeff(c, has_var):
    if c.denominator != 1:
        return f"({abs(c)})"
    if abs(c) == 1 and has_var:
        return ''
    return str(abs(c))


def render_laurent(h):
    if h.is_zero():
        return '0'
    out = []
    for e in sorted(h.coeffs):
        c = h.coeffs[e]
        sign = '-' if c < 0 else ('+' if out else '')
        out.append(f"{sign}{_render_coeff(c, e != 0)}{_render_exp(e)}")
    return ''.join(out)


def render(f):
    if isinstance(f, HalfLaurent):
        return render_laurent(f)
    f = RatFunc.coerce(f)
    if f.is_laurent():
        return render_laurent(f.num)
    return f"({render_laurent(f.num)})/({render_laurent(f.den)})"


def render_grouped(f):
    """Render with parentheses when the value has several terms."""
    f = RatFunc.coerce(f)
    text = render(f)
    if f.is_laurent() and len(f.num.coeffs) <= 1:
        return text
    return f"({text})"


_TERM = re.compile(
    r'([+-]?)'
    r'(?:\((\d+)/(\d+)\)|(\d+))?'
    r'(?:\*|·)?'
    r'(?:q(?:\^\{?(-?\d+)(?:/(2))?\}?)?)?'
)


def parse_laurent(text):
    text = text.replace(' ', '')
    if not text:
        raise ParseError("empty expression")
    coeffs = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(0) in '+-'):
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        sign, fn, fd, whole, exp, half = m.groups()
        has_q = 'q' in m.group(0)
        if fn is not None:
            c = Fraction(int(fn), int(fd))
        elif whole is not None:
            c = Fraction(int(whole))
        elif has_q:
            c = Fraction(1)
        else:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if sign == '-':
            c = -c
        if not has_q:
            e = 0
        elif exp is None:
            e = 2
        else:
            e = int(exp) if half else 2 * int(exp)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return HalfLaurent(coeffs)


def parse(text):
    """Parse "1+q", "-q^{-1/2}", "(1/2)q" or "(num)/(den)" into a RatFunc."""
    text = text.strip()
    m = re.fullmatch(r'\((.+)\)/\((.+)\)', text)
    if m and m.group(1).count('(') == m.group(1).count(')'):
        return RatFunc(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    return RatFunc(parse_laurent(text))


def product(values):
    return reduce(lambda a, b: a * b, values, RatFunc(1))
