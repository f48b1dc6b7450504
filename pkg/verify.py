"""Exhaustive verification suites.

Each suite takes n and returns a list of VerificationReport. A failing report
always carries a counterexample that can be fed back to the compute commands.
"""
import random
import time
import logging
from dataclasses import dataclass, field, asdict

import config
from chromatic import chromatic_qsym, graph_from_permutation, llt_poly, verify_plethystic_relation
from errors import IndifferenceViolation, InputError, InvariantError
from hecke import (HeckeElement, c_tilde, hecke_mul, kl_table, r_polynomial,
                   r_polynomial_oracle)
from perm import (Permutation, all_permutations, avoids, bruhat_leq, bruhat_leq_subword,
                  compose, contains_pattern, is_min_length_in_class, is_smooth,
                  min_length_class_reps, ordered_set_partitions)
from qmatrix import block_product, immanant, normalize, t_uv_monomial
from ring import HalfLaurent, RatFunc
from symfunc import SymFunc, partitions
from traces import (all_expansions, atomic_trace, block_immanant, check_trace_property,
                    induce_trace, llt_transform, psi_llt, trace_family,
                    trace_from_class_values, verify_specialization_chains, y_q)

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    identity: str
    n: int
    status: str
    counterexample: object = None
    wall_time: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ('pass', 'fail'):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == 'fail' and self.counterexample is None:
            raise InvariantError(f"failing report {self.identity} has no counterexample")

    @property
    def passed(self):
        return self.status == 'pass'

    def to_json(self):
        return asdict(self)

    def line(self):
        text = f"{self.identity} n={self.n}: {self.status} ({self.wall_time:.2f}s)"
        if self.counterexample is not None:
            text += f" counterexample={self.counterexample}"
        return text


class _Check:
    """Collects the first counterexample for one identity."""

    def __init__(self, identity, n):
        self.identity = identity
        self.n = n
        self.counterexample = None
        self.detail = {}
        self.start = time.time()

    def fail(self, **counterexample):
        if self.counterexample is None:
            self.counterexample = {k: str(v) for k, v in counterexample.items()}
        return False

    def report(self):
        status = 'pass' if self.counterexample is None else 'fail'
        report = VerificationReport(self.identity, self.n, status, self.counterexample,
                                    round(time.time() - self.start, 4), self.detail)
        log = logger.info if report.passed else logger.error
        log(report.line())
        return report


def _generators(n):
    return [HeckeElement.generator(i, n) for i in range(1, n)] or [HeckeElement.identity(n)]


def suite_hecke(n):
    assoc = _Check('hecke:associativity', n)
    gens = _generators(n)
    for a in gens:
        for b in gens:
            ab = hecke_mul(a, b)
            for c in gens:
                if hecke_mul(ab, c) != hecke_mul(a, hecke_mul(b, c)):
                    assoc.fail(a=a, b=b, c=c)
    special = _Check('hecke:group_algebra', n)
    for x in all_permutations(n):
        for y in all_permutations(n):
            got = hecke_mul(HeckeElement.basis(x), HeckeElement.basis(y)).specialize_q1()
            if got != {compose(x, y): 1}:
                special.fail(x=x, y=y)
                break
    return [assoc.report(), special.report()]


def suite_rpoly(n):
    check = _Check('rpoly:oracle', n)
    bruhat = _Check('perm:bruhat_subword', n)
    perms = all_permutations(n)
    for w in perms:
        for u in perms:
            leq = bruhat_leq(u, w)
            if leq != bruhat_leq_subword(u, w):
                bruhat.fail(u=u, w=w)
            if leq and r_polynomial(u, w) != r_polynomial_oracle(u, w):
                check.fail(u=u, w=w, recursion=r_polynomial(u, w), oracle=r_polynomial_oracle(u, w))
    return [check.report(), bruhat.report()]


def suite_kl(n):
    degrees = _Check('kl:degree_bound', n)
    smooth = _Check('kl:smooth_iff_trivial', n)
    table = kl_table(n)
    perms = all_permutations(n)
    for w in perms:
        all_one = True
        for u in table.below(w):
            p = table.p(u, w)
            if p != 1:
                all_one = False
            if u != w and (p.min_exp() < 0 or p.max_exp() > w.length - u.length - 1 or not p.is_polynomial_in_q()):
                degrees.fail(u=u, w=w, P=p)
            if table.r(u, w).max_exp() != 2 * (w.length - u.length):
                degrees.fail(u=u, w=w, R=table.r(u, w))
        if all_one != is_smooth(w):
            smooth.fail(w=w)
    return [degrees.report(), smooth.report()]


def suite_lemma4(n):
    check = _Check('lemma4:min_reps_smooth', n)
    for lam, w in min_length_class_reps(n):
        if not avoids(w, '3412', '4231'):
            check.fail(partition=lam, w=w)
        for v in all_permutations(n):
            if bruhat_leq(v, w) and not (is_smooth(v) and is_min_length_in_class(v)):
                check.fail(partition=lam, w=w, v=v)
    return [check.report()]


def _words(alphabet, max_len):
    words = [()]
    for _ in range(max_len):
        words = [w + (letter,) for w in words for letter in alphabet]
        yield from words


def suite_straightening(n):
    confluence = _Check('straightening:confluence', n)
    size = min(n, 3)
    alphabet = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1)]
    for k, word in enumerate(_words(alphabet, 4)):
        det = normalize(word, size)
        if det != normalize(word, size, strategy='random', seed=k):
            confluence.fail(word=word)
            break
        rows = sorted(a for a, _ in word)
        cols = sorted(b for _, b in word)
        if any(sorted(a for a, _ in w) != rows or sorted(b for _, b in w) != cols for w in det.coeffs):
            confluence.fail(word=word, reason='content')
            break
    confluence.detail['alphabet_size'] = size
    identity = _Check('straightening:longest_word', n)
    w0 = Permutation(tuple(range(n, 0, -1)))
    e = Permutation.identity(n)
    expected = {t_uv_monomial(e, w): r_polynomial(e, w).shift(-w.length)
                for w in all_permutations(n) if r_polynomial(e, w)}
    got = normalize(t_uv_monomial(w0, w0), n)
    if got.coeffs != expected:
        identity.fail(w0=w0, normal_form=got)
    return [confluence.report(), identity.report()]


def suite_traces(n):
    prop = _Check('traces:trace_property', n)
    for kind in ('eps', 'eta', 'eps_llt', 'eta_llt'):
        for lam, table in trace_family(kind, n).items():
            bad = check_trace_property(table)
            if bad:
                prop.fail(family=kind, partition=lam, x=bad[0], s=bad[1])
    assoc = _Check('traces:induction_association', n)
    for lam in partitions(n):
        for atom in ('sign', 'eta_llt'):
            atoms = [atomic_trace(atom, part) for part in lam.parts]
            left, right = induce_trace(atoms, 'left'), induce_trace(atoms, 'right')
            bad = left.first_difference(right)
            if bad is not None:
                assoc.fail(atom=atom, partition=lam, w=bad)
    determined = _Check('traces:class_determinacy', n)
    reps = [w for _, w in min_length_class_reps(n)]
    for lam, table in trace_family('eta', n).items():
        rebuilt = trace_from_class_values({w: table[w] for w in reps}, n)
        bad = rebuilt.first_difference(table)
        if bad is not None:
            determined.fail(partition=lam, w=bad)
    classes = _Check('traces:class_functions_at_q1', n)
    for kind in ('eps', 'eta', 'eps_llt', 'eta_llt'):
        for lam, table in trace_family(kind, n).items():
            values = table.specialize_q1()
            seen = {}
            for w, value in values.items():
                if seen.setdefault(w.cycle_type, value) != value:
                    classes.fail(family=kind, partition=lam, w=w)
    positivity = _Check('traces:llt_positivity', n)
    for w in all_permutations(n):
        if contains_pattern(w, Permutation((3, 1, 2))):
            continue
        D = c_tilde(w)
        for kind in ('eps_llt', 'eta_llt'):
            for lam, table in trace_family(kind, n).items():
                value = table(D)
                if not (value.is_laurent() and value.num.is_polynomial_in_q()
                        and value.num.has_nonnegative_integer_coeffs()):
                    positivity.fail(family=kind, partition=lam, w=w, value=value)
    return [prop.report(), assoc.report(), determined.report(), classes.report(), positivity.report()]


def _longest_word_immanant(k):
    w0 = Permutation(tuple(range(k, 0, -1)))
    return normalize(t_uv_monomial(w0, w0), k)


def suite_thm10(n):
    eq7 = _Check('thm9:ordered_set_partitions', n)
    eq8 = _Check('thm10:longest_words', n)
    routes = _Check('thm10:llt_routes', n)
    for lam in partitions(n):
        induced = trace_family('eps_llt', n)[lam]
        atoms = [atomic_trace('eps_llt', part) for part in lam.parts]
        if immanant(induced.values, n) != block_immanant(atoms):
            eq7.fail(partition=lam)
        induced_eta = trace_family('eta_llt', n)[lam]
        longest = [_longest_word_immanant(part) for part in lam.parts]
        total = None
        for ctx in ordered_set_partitions(lam.parts):
            term = block_product(list(zip(ctx.blocks, longest)), n)
            total = term if total is None else total + term
        if immanant(induced_eta.values, n) != total:
            eq8.fail(partition=lam)
        for kind, source in (('eps_llt', 'eps'), ('eta_llt', 'eta')):
            via_z = llt_transform(trace_family(source, n)[lam])
            bad = via_z.first_difference(trace_family(kind, n)[lam])
            if bad is not None:
                routes.fail(family=kind, partition=lam, w=bad)
    atoms = _Check('thm10:atomic_values', n)
    top = partitions(n)[0]
    eps_z = llt_transform(trace_family('eps', n)[top])
    eta_z = llt_transform(trace_family('eta', n)[top])
    e = Permutation.identity(n)
    for w in all_permutations(n):
        if eps_z[w] != int(w == e):
            atoms.fail(family='eps_llt', w=w, value=eps_z[w])
        if eta_z[w] != r_polynomial(e, w):
            atoms.fail(family='eta_llt', w=w, value=eta_z[w])
    return [eq7.report(), eq8.report(), routes.report(), atoms.report()]


def suite_eq6(n):
    check = _Check('eq6:smooth_ctilde', n)
    eps = trace_family('eps_llt', n)[partitions(n)[0]]
    count = 0
    for w in all_permutations(n):
        if not is_smooth(w):
            continue
        count += 1
        value = eps(c_tilde(w))
        if value != 1:
            check.fail(w=w, value=value)
    check.detail['smooth_permutations'] = count
    return [check.report()]


def suite_prop7(n):
    check = _Check('prop7:psi_llt', n)
    for lam in partitions(n):
        via_z = llt_transform(trace_family('psi', n)[lam])
        bad = psi_llt(lam).first_difference(via_z)
        if bad is not None:
            check.fail(partition=lam, w=bad)
    return [check.report()]


def suite_cor11(n):
    reports = []
    start = time.time()
    for result in verify_specialization_chains(n):
        counterexample = None
        if result['status'] == 'fail':
            counterexample = {'w': result['counterexample'], 'lhs': result['lhs'], 'rhs': result['rhs']}
        reports.append(VerificationReport(f"cor11:{result['label']}", n, result['status'], counterexample,
                                          round(time.time() - start, 4)))
    return reports


def _section1_permutations(n):
    return [w for w in all_permutations(n) if not contains_pattern(w, Permutation((3, 1, 2)))]


def suite_section1(n):
    chrom = _Check('section1:chromatic', n)
    llt = _Check('section1:llt', n)
    pleth = _Check('section1:plethysm', n)
    independent = _Check('section1:variable_count', n)
    eps_llt = trace_family('eps_llt', n)
    for w in _section1_permutations(n):
        G = graph_from_permutation(w)
        D = c_tilde(w)
        X = chromatic_qsym(G)
        if X != y_q(D):
            chrom.fail(w=w, X=X, Y=y_q(D))
        L = llt_poly(G)
        expected = SymFunc(n, 'm', {lam: table(D) for lam, table in eps_llt.items()})
        if L != expected:
            llt.fail(w=w, LLT=L, traces=expected)
        if not verify_plethystic_relation(w):
            pleth.fail(w=w)
        if n < config.max_n('chromatic') and (chromatic_qsym(G, n + 1) != X or llt_poly(G, n + 1) != L):
            independent.fail(w=w)
    chrom.detail.update(graph_rule='hessenberg', ascents='edges', **_section1_diagnostics(n))
    return [chrom.report(), llt.report(), pleth.report(), independent.report()]


def _section1_diagnostics(n):
    """Record where the inversion-graph rule and all-pairs ascents break down."""
    inversion_failure = pairs_failure = None
    for w in _section1_permutations(n):
        D = c_tilde(w)
        if inversion_failure is None:
            try:
                if chromatic_qsym(graph_from_permutation(w, 'inversion')) != y_q(D):
                    inversion_failure = str(w)
            except IndifferenceViolation:
                inversion_failure = str(w)
        if pairs_failure is None and chromatic_qsym(graph_from_permutation(w), ascents='all_pairs') != y_q(D):
            pairs_failure = str(w)
    return {'inversion_rule_first_failure': inversion_failure, 'all_pairs_first_failure': pairs_failure}


def random_hecke_element(n, rng):
    perms = all_permutations(n)
    coeffs = {}
    for _ in range(rng.randint(1, 4)):
        w = rng.choice(perms)
        coeffs[w] = HalfLaurent.q_power(rng.randint(0, 2), rng.randint(-3, 3)) + coeffs.get(w, HalfLaurent())
    return HeckeElement(n, coeffs)


def suite_prop2(n, samples=50, seed=0):
    check = _Check('prop2:dual_lists', n)
    convention = _Check('prop2:eta_convention', n)
    rng = random.Random(seed)
    eta = trace_family('eta', n)
    for k in range(samples):
        D = random_hecke_element(n, rng)
        primal, dual = all_expansions(D), all_expansions(D, dual=True)
        for family in primal:
            if any(primal[family].get(lam, RatFunc(0)) != dual[family].get(lam, RatFunc(0))
                   for lam in partitions(n)):
                check.fail(sample=k, family=family, D=D)
        if any(primal['eta'].get(lam, RatFunc(0)) != eta[lam](D) for lam in partitions(n)):
            convention.fail(sample=k, D=D)
    check.detail['samples'] = samples
    return [check.report(), convention.report()]


SUITES = {
    'hecke': suite_hecke,
    'rpoly': suite_rpoly,
    'kl': suite_kl,
    'lemma4': suite_lemma4,
    'straightening': suite_straightening,
    'traces': suite_traces,
    'thm10': suite_thm10,
    'eq6': suite_eq6,
    'prop7': suite_prop7,
    'cor11': suite_cor11,
    'section1': suite_section1,
    'prop2': suite_prop2,
}

GUARD_AREA = {
    'hecke': 'perm', 'rpoly': 'perm', 'kl': 'perm', 'lemma4': 'perm', 'straightening': 'perm',
    'traces': 'traces', 'thm10': 'traces', 'eq6': 'traces', 'prop7': 'traces',
    'cor11': 'cor11', 'section1': 'chromatic', 'prop2': 'traces',
}


def run_suite(identity, n):
    """Run one suite (or 'all') for every size 1..n; reports sorted by identity then n."""
    names = list(SUITES) if identity == 'all' else [identity]
    for name in names:
        if name not in SUITES:
            raise InputError(f"unknown identity {name!r}; choose from {', '.join(SUITES)} or all")
        config.guard(n, GUARD_AREA[name])
    reports = []
    for name in names:
        logger.info(f"Running suite {name} up to n={n}")
        for m in range(1, n + 1):
            reports.extend(SUITES[name](m))
    return sorted(reports, key=lambda r: (r.identity, r.n))
