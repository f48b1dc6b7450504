"""Permutations of [n] in one-line notation.

Composition is fixed as compose(u, v)(i) = u(v(i)); right multiplication by
s_i therefore swaps positions i and i+1.
"""
import json
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations

import config
from errors import SizeMismatch, ParseError
from symfunc import Partition, partitions

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ParseError(f"not a permutation: {self.word}")
        object.__setattr__(self, 'word', word)

    @classmethod
    def parse(cls, text):
        """Digit string "2143" (n <= 9), comma list or JSON array."""
        text = str(text).strip()
        try:
            if text.startswith('['):
                return cls(tuple(json.loads(text)))
            if ',' in text:
                return cls(tuple(int(x) for x in text.split(',')))
            return cls(tuple(int(ch) for ch in text))
        except (ValueError, TypeError) as e:
            raise ParseError(f"not a permutation: {text!r}") from e

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i, n):
        """The adjacent transposition s_i = (i, i+1)."""
        word = list(range(1, n + 1))
        word[i - 1], word[i] = word[i], word[i - 1]
        return cls(tuple(word))

    @property
    def n(self):
        return len(self.word)

    def __call__(self, i):
        return self.word[i - 1]

    def __len__(self):
        return len(self.word)

    def __str__(self):
        if self.n <= 9:
            return ''.join(map(str, self.word))
        return json.dumps(list(self.word))

    def to_json(self):
        return list(self.word)

    @cached_property
    def length(self):
        w = self.word
        return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])

    @cached_property
    def inverse(self):
        inv = [0] * self.n
        for i, x in enumerate(self.word):
            inv[x - 1] = i + 1
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(x == i + 1 for i, x in enumerate(self.word))

    def right_descents(self):
        w = self.word
        return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]

    def times_simple(self, i):
        """w·s_i (swap positions i and i+1)."""
        word = list(self.word)
        word[i - 1], word[i] = word[i], word[i - 1]
        return Permutation(tuple(word))

    def simple_times(self, i):
        """s_i·w (swap values i and i+1)."""
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(x, x) for x in self.word))

    @cached_property
    def reduced_word(self):
        """Indices (i_1..i_k) with w = s_{i_1}...s_{i_k}, peeling the largest right descent."""
        word = []
        w = self
        while True:
            descents = w.right_descents()
            if not descents:
                break
            i = descents[-1]
            word.append(i)
            w = w.times_simple(i)
        return tuple(reversed(word))

    @cached_property
    def rank_matrix(self):
        """r[i][j] = |{k <= i : w_k >= j}| for 1 <= i, j <= n (index 0 unused)."""
        n = self.n
        r = [[0] * (n + 2) for _ in range(n + 1)]
        for i in range(1, n + 1):
            wi = self.word[i - 1]
            for j in range(1, n + 1):
                r[i][j] = r[i - 1][j] + (1 if wi >= j else 0)
        return r

    @cached_property
    def cycle_type(self):
        seen = set()
        lengths = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            size, x = 0, start
            while x not in seen:
                seen.add(x)
                x = self.word[x - 1]
                size += 1
            lengths.append(size)
        return Partition(tuple(sorted(lengths, reverse=True)))


def _same_size(u, v):
    if u.n != v.n:
        raise SizeMismatch(f"permutations of sizes {u.n} and {v.n}")


def compose(u, v):
    """compose(u, v)(i) = u(v(i)).

    >>> str(compose(Permutation.parse('213'), Permutation.parse('132')))
    '231'
    """
    _same_size(u, v)
    return Permutation(tuple(u.word[x - 1] for x in v.word))


def bruhat_leq(u, w):
    """Bruhat order by the rank-matrix criterion, oriented so that e <= w."""
    _same_size(u, w)
    if u.length > w.length:
        return False
    ru, rw = u.rank_matrix, w.rank_matrix
    n = u.n
    return all(ru[i][j] <= rw[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def bruhat_leq_subword(u, w):
    """Subword criterion: u <= w iff u is a product of a subword of a reduced word of w."""
    _same_size(u, w)
    return u in _subword_products(w)


@lru_cache(maxsize=4096)
def _subword_products(w):
    products = {Permutation.identity(w.n)}
    for i in w.reduced_word:
        products |= {x.times_simple(i) for x in products}
    return frozenset(products)


def standardize(seq):
    ranks = {x: r for r, x in enumerate(sorted(seq), start=1)}
    return tuple(ranks[x] for x in seq)


def contains_pattern(w, p):
    """True iff some subsequence of w is order-isomorphic to p."""
    k = p.n
    if k > w.n:
        return False
    target = p.word
    for positions in combinations(range(w.n), k):
        values = [w.word[i] for i in positions]
        if standardize(values) == target:
            return True
    return False


def avoids(w, *patterns):
    return not any(contains_pattern(w, Permutation.parse(p) if isinstance(p, str) else p)
                   for p in patterns)


def is_smooth(w):
    return avoids(w, '3412', '4231')


@lru_cache(maxsize=None)
def all_permutations(n):
    """S_n in lexicographic order."""
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def _class_min_lengths(n):
    best = {}
    for w in all_permutations(n):
        lam = w.cycle_type
        if lam not in best or w.length < best[lam].length:
            best[lam] = w
    return best


def min_length_class_reps(n):
    """(cycle type, minimal length representative) for every partition of n.

    Ties are broken by lexicographically smallest one-line notation, and the
    list follows the descending lexicographic order of partitions.
    """
    config.guard(n, 'perm')
    best = _class_min_lengths(n)
    return [(lam, best[lam]) for lam in partitions(n)]


def is_min_length_in_class(w):
    return w.length == _class_min_lengths(w.n)[w.cycle_type].length


@dataclass(frozen=True)
class BlockSubgroupContext:
    """An ordered set partition (I_1, ..., I_r) of {1..n}."""
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in block)) for block in self.blocks)
        flat = [x for block in blocks for x in block]
        if any(not block for block in blocks) or sorted(flat) != list(range(1, len(flat) + 1)):
            raise ParseError(f"blocks {self.blocks} do not partition 1..n")
        object.__setattr__(self, 'blocks', blocks)

    @property
    def n(self):
        return sum(len(block) for block in self.blocks)

    @property
    def sizes(self):
        return tuple(len(block) for block in self.blocks)


def longest_element(ctx):
    """Reverse every block internally; the longest element of the block subgroup."""
    word = list(range(1, ctx.n + 1))
    for block in ctx.blocks:
        for pos, value in zip(block, reversed(block)):
            word[pos - 1] = value
    return Permutation(tuple(word))


def _block_choices(sizes, ground):
    if not sizes:
        yield ()
        return
    for block in combinations(ground, sizes[0]):
        remaining = tuple(x for x in ground if x not in block)
        for tail in _block_choices(sizes[1:], remaining):
            yield (block,) + tail


def ordered_set_partitions(sizes):
    """All ordered set partitions of 1..sum(sizes) whose k-th block has sizes[k] elements."""
    ground = tuple(range(1, sum(sizes) + 1))
    for blocks in _block_choices(tuple(sizes), ground):
        yield BlockSubgroupContext(blocks)
