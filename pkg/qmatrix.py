"""The quantum matrix bialgebra A_n(q) and immanants of trace functionals.

A monomial is a tuple of (row, col) letters. Normal form means the letters
are sorted lexicographically. Coefficients stay in Q[v, 1/v]; callers with
rational-function data clear denominators first.
"""
import heapq
import random
import logging
from functools import lru_cache
from itertools import product

from errors import InputError, SizeMismatch, SupportError, ParseError
from perm import Permutation, all_permutations
from ring import HalfLaurent, RatFunc, ONE, V, render_grouped

logger = logging.getLogger(__name__)

V_MINUS_VINV = V - V.bar()


def parse_word(text):
    """"2,2;1,1" -> ((2, 2), (1, 1))."""
    try:
        letters = tuple(tuple(int(x) for x in chunk.split(',')) for chunk in text.split(';') if chunk.strip())
    except ValueError as e:
        raise ParseError(f"bad monomial {text!r}") from e
    if any(len(letter) != 2 for letter in letters):
        raise ParseError(f"bad monomial {text!r}")
    return letters


def render_word(word):
    return '·'.join(f"t[{a},{b}]" for a, b in word)


def is_normal(word):
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


def _measure(word):
    rows = cols = 0
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i][0] > word[j][0]:
                rows += 1
            elif word[i][0] == word[j][0] and word[i][1] > word[j][1]:
                cols += 1
    return rows, cols


def _out_of_order(word):
    """Positions k with (word[k], word[k+1]) rewritable: row inversions first, then column ones."""
    rows = [k for k in range(len(word) - 1) if word[k][0] > word[k + 1][0]]
    cols = [k for k in range(len(word) - 1)
            if word[k][0] == word[k + 1][0] and word[k][1] > word[k + 1][1]]
    return rows, cols


def rewrite_at(word, k):
    """Apply the defining relation to letters k, k+1; returns [(coefficient, word)]."""
    (a, b), (c, d) = word[k], word[k + 1]
    head, tail = word[:k], word[k + 2:]
    if a == c:
        return [(V, head + ((c, d), (a, b)) + tail)]
    if b < d:
        return [(ONE, head + ((c, d), (a, b)) + tail)]
    if b == d:
        return [(V, head + ((c, d), (a, b)) + tail)]
    return [
        (ONE, head + ((c, d), (a, b)) + tail),
        (V_MINUS_VINV, head + ((c, b), (a, d)) + tail),
    ]


def _straighten(start, choose):
    """Worklist straightening, largest measure first so duplicates merge before rewriting."""
    pending = dict(start)
    heap = [(tuple(-x for x in _measure(w)), w) for w in pending]
    heapq.heapify(heap)
    result = {}
    steps = 0
    while heap:
        _, word = heapq.heappop(heap)
        coeff = pending.pop(word, None)
        if not coeff:
            continue
        rows, cols = _out_of_order(word)
        if not rows and not cols:
            total = result.get(word, HalfLaurent()) + coeff
            if total:
                result[word] = total
            else:
                result.pop(word, None)
            continue
        steps += 1
        for c, new in rewrite_at(word, choose(rows, cols)):
            if new in pending:
                pending[new] = pending[new] + coeff * c
            else:
                pending[new] = coeff * c
                heapq.heappush(heap, (tuple(-x for x in _measure(new)), new))
    logger.debug(f"Straightened {len(start)} words in {steps} rewrites into {len(result)} monomials")
    return result


def _leftmost(rows, cols):
    return rows[0] if rows else cols[0]


@lru_cache(maxsize=200000)
def _normalize_cached(word):
    return tuple(_straighten({word: ONE}, _leftmost).items())


def normalize(word, n=None, strategy='deterministic', seed=None):
    """Expand a monomial in the normal basis.

    Args:
        word: tuple of (row, col) letters
        n: matrix size (defaults to the largest index used)
        strategy: 'deterministic' rewrites the leftmost row inversion first;
            'random' picks any out-of-order adjacent pair
        seed: seed for the random strategy

    Returns:
        QElement
    """
    word = tuple(tuple(letter) for letter in word)
    if n is None:
        n = max((max(letter) for letter in word), default=0)
    if any(not (1 <= x <= n) for letter in word for x in letter):
        raise SizeMismatch(f"letter index outside 1..{n}")
    if strategy == 'deterministic':
        return QElement(n, dict(_normalize_cached(word)), _normal=True)
    if strategy == 'random':
        rng = random.Random(seed)
        return QElement(n, _straighten({word: ONE}, lambda rows, cols: rng.choice(rows + cols)), _normal=True)
    raise InputError(f"unknown strategy {strategy!r}")


class QElement:
    """Linear combination of normal-form monomials."""
    __slots__ = ('n', 'coeffs')

    def __init__(self, n, coeffs=None, _normal=False):
        self.n = n
        if _normal:
            self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}
            return
        total = {}
        for word, c in (coeffs or {}).items():
            c = HalfLaurent.coerce(c)
            if not c:
                continue
            for w, d in normalize(word, n).coeffs.items():
                total[w] = total.get(w, HalfLaurent()) + c * d
        self.coeffs = {w: c for w, c in total.items() if c}

    @classmethod
    def monomial(cls, word, n=None):
        return normalize(word, n)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"A_{self.n} and A_{other.n}")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, HalfLaurent()) + c
        return QElement(self.n, out, _normal=True)

    def scale(self, scalar):
        return QElement(self.n, {w: c * scalar for w, c in self.coeffs.items()}, _normal=True)

    def __mul__(self, other):
        if not isinstance(other, QElement):
            return self.scale(other)
        if self.n != other.n:
            raise SizeMismatch(f"A_{self.n} and A_{other.n}")
        out = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                for w, d in _normalize_cached(w1 + w2):
                    out[w] = out.get(w, HalfLaurent()) + c1 * c2 * d
        return QElement(self.n, out, _normal=True)

    def __eq__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def specialize_q1(self):
        """Commutative image at v = 1: {sorted word: Fraction}."""
        out = {}
        for w, c in self.coeffs.items():
            key = tuple(sorted(w))
            out[key] = out.get(key, 0) + c.at_one()
        return {k: x for k, x in out.items() if x}

    def terms(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return '0'
        parts = []
        for w, c in self.terms():
            name = render_word(w)
            parts.append(name if c == 1 else f"{render_grouped(c)}·{name}")
        return ' + '.join(parts)

    __repr__ = __str__


def t_uv_monomial(u, v):
    """t^{u,v} = t_{u_1,v_1} ... t_{u_n,v_n}."""
    if u.n != v.n:
        raise SizeMismatch(f"permutations of sizes {u.n} and {v.n}")
    return tuple(zip(u.word, v.word))


def immanant(values, n):
    """sum_w v^{-l(w)} theta(T_w) t^{e,w}; every value must be a Laurent polynomial."""
    coeffs = {}
    e = Permutation.identity(n)
    for w in all_permutations(n):
        value = RatFunc.coerce(values.get(w, 0))
        if not value:
            continue
        if not value.is_laurent():
            raise InputError(f"theta(T_{w}) = {value} has a denominator; clear it first")
        coeffs[t_uv_monomial(e, w)] = value.num.shift(-w.length)
    return QElement(n, coeffs, _normal=True)


def trace_values_from_immanant(E, denominator=1):
    """theta(T_w) = v^{l(w)} [t^{e,w}]E, divided by the cleared denominator."""
    n = E.n
    rows = tuple(range(1, n + 1))
    found = {}
    for word, c in E.coeffs.items():
        if len(word) != n or tuple(a for a, _ in word) != rows:
            raise SupportError(f"{render_word(word)} is not of the form t^{{e,w}}")
        try:
            w = Permutation(tuple(b for _, b in word))
        except ParseError:
            raise SupportError(f"{render_word(word)} is not of the form t^{{e,w}}")
        found[w] = c.shift(w.length)
    denominator = RatFunc.coerce(denominator)
    return {w: RatFunc(found.get(w, HalfLaurent())) / denominator for w in all_permutations(n)}


def relabel(E, block, n):
    """Move an element of A_k onto the index block (rows and columns), inside A_n."""
    block = tuple(block)
    if len(block) != E.n:
        raise SizeMismatch(f"block {block} has size {len(block)}, element has {E.n}")
    out = {tuple((block[a - 1], block[b - 1]) for a, b in w): c for w, c in E.coeffs.items()}
    return QElement(n, out, _normal=True)


def block_product(immanants, n=None):
    """Concatenate block immanants in block order and normalize.

    Args:
        immanants: list of (block, QElement over 1..|block|)
        n: ambient size (defaults to the total block size)
    """
    blocks = [tuple(block) for block, _ in immanants]
    used = [x for block in blocks for x in block]
    if len(set(used)) != len(used):
        raise InputError(f"blocks {blocks} overlap", code='EInput:Overlapping blocks')
    n = n or len(used)
    parts = [relabel(E, block, n) for block, E in immanants]
    out = {}
    for combo in product(*(p.coeffs.items() for p in parts)):
        word = sum((w for w, _ in combo), ())
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        for w, d in _normalize_cached(word):
            out[w] = out.get(w, HalfLaurent()) + coeff * d
    return QElement(n, out, _normal=True)
