"""Indifference graphs of 312-avoiding permutations and their coloring sums.

X_{G,q} sums q^{asc} over proper colorings, LLT_{G,q} over all colorings.
Both are collected into the monomial basis from their content vectors.
"""
import logging
from dataclasses import dataclass
from itertools import product

import config
from errors import AsymmetricCollection, IndifferenceViolation, InputError, PatternError
from perm import Permutation, contains_pattern
from ring import HalfLaurent, RatFunc, Q
from symfunc import SymFunc, partitions, plethysm_scale

logger = logging.getLogger(__name__)

GRAPH_RULES = ('hessenberg', 'inversion')
ASCENT_READINGS = ('edges', 'all_pairs')
PATTERN_312 = Permutation((3, 1, 2))


@dataclass(frozen=True)
class IndifferenceGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        edges = frozenset((min(i, j), max(i, j)) for i, j in self.edges)
        if any(i == j or not (1 <= i <= self.n and 1 <= j <= self.n) for i, j in edges):
            raise InputError(f"bad edge set {sorted(edges)} on {self.n} vertices")
        object.__setattr__(self, 'edges', edges)
        bound = self.bound_function()
        expected = {(i, j) for i in range(1, self.n + 1) for j in range(i + 1, bound[i - 1] + 1)}
        if any(a > b for a, b in zip(bound, bound[1:])) or expected != set(edges):
            raise IndifferenceViolation(f"edges {sorted(edges)} have no nondecreasing bound function")

    def bound_function(self):
        """m(i) = the largest neighbour above i (or i itself)."""
        return [max([i] + [j for a, j in self.edges if a == i]) for i in range(1, self.n + 1)]

    def to_json(self):
        return {'n': self.n, 'edges': sorted([list(e) for e in self.edges])}


def graph_from_permutation(w, rule='hessenberg'):
    """inc(P(w)) for a 312-avoiding w.

    The 'hessenberg' rule uses h(i) = max(w_1..w_i) with edges i < j <= h(i);
    the 'inversion' rule uses the inversion pairs of w and fails the
    indifference check for words such as 231.
    """
    if contains_pattern(w, PATTERN_312):
        raise PatternError(f"{w} contains the pattern 312")
    n = w.n
    if rule == 'hessenberg':
        edges, running = set(), 0
        for i in range(1, n + 1):
            running = max(running, w(i))
            edges |= {(i, j) for j in range(i + 1, running + 1)}
    elif rule == 'inversion':
        edges = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if w(i) > w(j)}
    else:
        raise InputError(f"unknown graph rule {rule!r}")
    return IndifferenceGraph(n, frozenset(edges))


def _coloring_sum(G, N, proper, ascents):
    if N is None:
        N = G.n
    if N < G.n:
        raise InputError(f"need at least {G.n} colors, got {N}")
    config.guard(G.n, 'chromatic')
    if ascents not in ASCENT_READINGS:
        raise InputError(f"unknown ascent reading {ascents!r}")
    n = G.n
    edges = sorted(G.edges)
    pairs = edges if ascents == 'edges' else [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    by_content = {}
    for kappa in product(range(N), repeat=n):
        if proper and any(kappa[i - 1] == kappa[j - 1] for i, j in edges):
            continue
        asc = sum(1 for i, j in pairs if kappa[i - 1] < kappa[j - 1])
        content = [0] * N
        for c in kappa:
            content[c] += 1
        weights = by_content.setdefault(tuple(content), {})
        weights[asc] = weights.get(asc, 0) + 1
    polys = {content: HalfLaurent({2 * a: c for a, c in weights.items()}) for content, weights in by_content.items()}
    coeffs = {}
    for lam in partitions(n):
        key = tuple(lam.parts) + (0,) * (N - len(lam))
        coeffs[key] = polys.get(key, HalfLaurent())
    for content, poly in polys.items():
        if coeffs[tuple(sorted(content, reverse=True))] != poly:
            raise AsymmetricCollection(f"content {content} disagrees with its sorted rearrangement")
    logger.debug(f"Collected {len(polys)} content vectors for n={n}, N={N}")
    return SymFunc(n, 'm', {tuple(p for p in key if p): RatFunc(c) for key, c in coeffs.items()})


def chromatic_qsym(G, N=None, ascents='edges'):
    """X_{G,q}: sum over proper colorings of q^{asc} x^kappa, in the m basis."""
    return _coloring_sum(G, N, proper=True, ascents=ascents)


def llt_poly(G, N=None, ascents='edges'):
    """LLT_{G,q}: sum over all colorings of q^{asc} x^kappa, in the m basis."""
    return _coloring_sum(G, N, proper=False, ascents=ascents)


def verify_plethystic_relation(w, N=None, rule='hessenberg'):
    """X[X] == (q-1)^{-n} LLT[(q-1)X] for the graph of w."""
    G = graph_from_permutation(w, rule)
    X = chromatic_qsym(G, N)
    LLT = llt_poly(G, N)
    q_minus_one = RatFunc(Q - 1)
    rhs = plethysm_scale(LLT, q_minus_one).scale(RatFunc(1) / q_minus_one ** G.n)
    return X == rhs
