"""Trace functionals on H_n(q), kept as full evaluation tables on {T_w}.

Families:
    eps, eta          induced from sign (T_s -> -1) / trivial (T_s -> q) atoms
    eps_llt, eta_llt  induced from the LLT atoms (T_w -> [w=e], T_w -> R_{e,w})
    psi, chi, phi, gamma   read off from Y_q in the p, s, e, h bases
    psi_llt           power-sum LLT traces
"""
import logging
import threading
import time
from functools import lru_cache
from itertools import combinations

import config
from errors import InputError, SizeMismatch
from hecke import HeckeElement, left_mul_simple, right_mul_simple, r_polynomial
from perm import Permutation, all_permutations, min_length_class_reps, ordered_set_partitions
from qmatrix import block_product, immanant, trace_values_from_immanant
from ring import HalfLaurent, RatFunc, ONE, Q, product, render, solve_linear, specialize_q1
from symfunc import SymFunc, omega, partitions, plethysm_scale, transitions

logger = logging.getLogger(__name__)

ATOMS = ('sign', 'trivial', 'eps_llt', 'eta_llt')
FAMILIES = ('eps', 'eta', 'eps_llt', 'eta_llt', 'psi', 'chi', 'phi', 'gamma', 'psi_llt')
_ATOM_OF = {'eps': 'sign', 'eta': 'trivial', 'eps_llt': 'eps_llt', 'eta_llt': 'eta_llt'}


class TraceTable:
    """theta(T_w) for every w in S_n. Treat as frozen once built."""
    __slots__ = ('n', 'name', 'values')

    def __init__(self, n, name, values):
        perms = all_permutations(n)
        missing = [w for w in perms if w not in values]
        if missing:
            raise SizeMismatch(f"trace {name} has no value at T_{missing[0]}")
        self.n = n
        self.name = name
        self.values = {w: RatFunc.coerce(values[w]) for w in perms}

    def __getitem__(self, w):
        return self.values[w]

    def __call__(self, D):
        """Evaluate on a Hecke element by linearity."""
        if D.n != self.n:
            raise SizeMismatch(f"trace on H_{self.n} applied to H_{D.n}")
        total = RatFunc(0)
        for w, c in D.coeffs.items():
            value = self.values[w]
            if value:
                total = total + value * c
        return total

    def renamed(self, name):
        return TraceTable(self.n, name, self.values)

    def __add__(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"traces on H_{self.n} and H_{other.n}")
        return TraceTable(self.n, f"{self.name}+{other.name}",
                          {w: v + other.values[w] for w, v in self.values.items()})

    def scale(self, scalar, name=None):
        scalar = RatFunc.coerce(scalar)
        return TraceTable(self.n, name or self.name, {w: v * scalar for w, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, TraceTable):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    __hash__ = None

    def first_difference(self, other):
        """The lexicographically first w where the tables disagree, or None."""
        return next((w for w in all_permutations(self.n) if self.values[w] != other.values[w]), None)

    def specialize_q1(self):
        return {w: specialize_q1(v) for w, v in self.values.items()}

    def to_json(self):
        return {'name': self.name, 'n': self.n,
                'values': {str(w): render(v) for w, v in self.values.items()}}


def linear_combination(terms, n, name):
    """sum of scalar·table over (scalar, table) pairs."""
    out = {w: RatFunc(0) for w in all_permutations(n)}
    for scalar, table in terms:
        scalar = RatFunc.coerce(scalar)
        if not scalar:
            continue
        for w, v in table.values.items():
            if v:
                out[w] = out[w] + v * scalar
    return TraceTable(n, name, out)


def atomic_trace(kind, n):
    """One of the four atoms: sign, trivial, eps_llt, eta_llt."""
    perms = all_permutations(n)
    if kind == 'sign':
        values = {w: -1 if w.length % 2 else 1 for w in perms}
    elif kind == 'trivial':
        values = {w: RatFunc.q_power(w.length) for w in perms}
    elif kind == 'eps_llt':
        values = {w: int(w.is_identity()) for w in perms}
    elif kind == 'eta_llt':
        e = Permutation.identity(n)
        values = {w: r_polynomial(e, w) for w in perms}
    else:
        raise InputError(f"unknown atom {kind!r}")
    return TraceTable(n, kind, values)


def clear_denominators(values):
    """Return (laurent_values, common_denominator) with value = laurent / common."""
    common = RatFunc(1)
    for v in values.values():
        v = RatFunc.coerce(v)
        if not v.is_laurent():
            ratio = common / RatFunc(v.den)
            common = common * RatFunc(ratio.den)
    return {w: RatFunc.coerce(v) * common for w, v in values.items()}, common


def _immanant_of(table):
    cleared, den = clear_denominators(table.values)
    return immanant(cleared, table.n), den


def induce_pair(first, second):
    """(theta_1 ⊗ theta_2)↑ summed over index blocks (I, complement of I)."""
    k, m = first.n, second.n
    n = k + m
    e1, d1 = _immanant_of(first)
    e2, d2 = _immanant_of(second)
    ground = range(1, n + 1)
    total = None
    for block in combinations(ground, k):
        rest = tuple(x for x in ground if x not in block)
        term = block_product([(block, e1), (rest, e2)], n)
        total = term if total is None else total + term
    values = trace_values_from_immanant(total, d1 * d2)
    return TraceTable(n, f"({first.name}⊗{second.name})↑", values)


def induce_trace(atoms, association='left'):
    """Induce a tensor product of traces up to H_n(q), n = sum of the atom sizes.

    Pairs are induced one at a time; association picks the bracketing
    ('left': ((a b) c), 'right': (a (b c))).
    """
    atoms = list(atoms)
    if not atoms:
        raise SizeMismatch("nothing to induce")
    if association == 'left':
        current = atoms[0]
        for nxt in atoms[1:]:
            current = induce_pair(current, nxt)
    elif association == 'right':
        current = atoms[-1]
        for nxt in reversed(atoms[:-1]):
            current = induce_pair(nxt, current)
    else:
        raise InputError(f"unknown association {association!r}")
    return current


def block_immanant(atoms):
    """sum over ordered set partitions of the block products of the atom immanants."""
    sizes = tuple(a.n for a in atoms)
    parts = [_immanant_of(a) for a in atoms]
    if any(d != 1 for _, d in parts):
        raise InputError("block immanants need Laurent-valued atoms")
    total = None
    for ctx in ordered_set_partitions(sizes):
        term = block_product([(block, E) for block, (E, _) in zip(ctx.blocks, parts)], sum(sizes))
        total = term if total is None else total + term
    return total


# Families

_families = {}
_families_lock = threading.RLock()


def _induced_family(kind, n):
    atom = _ATOM_OF[kind]
    family = {}
    for lam in partitions(n):
        atoms = [atomic_trace(atom, part) for part in lam.parts]
        family[lam] = induce_trace(atoms).renamed(f"{kind}^{lam}")
    return family


def _readoff_coefficients(n, basis):
    """Row lam: how [b_lam]Y depends on the eps^mu coordinates."""
    trans = transitions(n)
    inv = trans.from_m[basis]
    return {lam: [(inv[trans.index[mu]][trans.index[lam]], mu) for mu in trans.partitions]
            for lam in trans.partitions}


def _readoff_family(kind, n):
    eps = trace_family('eps', n)
    basis = {'psi': 'p', 'chi': 's', 'phi': 'e', 'gamma': 'h'}[kind]
    rows = _readoff_coefficients(n, basis)
    family = {}
    for lam in partitions(n):
        terms = [(a, eps[mu]) for a, mu in rows[lam] if a]
        if kind == 'psi':
            terms = [(a * lam.sign * lam.z, t) for a, t in terms]
        target = lam.conjugate if kind == 'chi' else lam
        family[target] = linear_combination(terms, n, f"{kind}^{target}")
    return family


def trace_family(kind, n):
    """{Partition: TraceTable} for a named family, built once per n."""
    config.guard(n, 'traces')
    with _families_lock:
        key = (kind, n)
        if key in _families:
            return _families[key]
        start = time.time()
        if kind in _ATOM_OF:
            family = _induced_family(kind, n)
        elif kind in ('psi', 'chi', 'phi', 'gamma'):
            family = _readoff_family(kind, n)
        elif kind == 'psi_llt':
            family = {lam: psi_llt(lam) for lam in partitions(n)}
        else:
            raise InputError(f"unknown trace family {kind!r}")
        _families[key] = family
        logger.info(f"Built trace family {kind} for n={n} in {time.time() - start:.2f}s")
        return family


def y_q(D):
    """Y_q(D) = sum over lam of eps^lam(D) m_lam."""
    eps = trace_family('eps', D.n)
    return SymFunc(D.n, 'm', {lam: table(D) for lam, table in eps.items()})


def all_expansions(D, dual=False):
    """Trace values read from the expansions of Y_q(D) (or of omega Y_q(D) when dual).

    Returns:
        {family: {Partition: RatFunc}} for eps, eta, psi, chi, phi, gamma
    """
    Y = y_q(D)
    out = {'eps': dict(Y.coeffs)}
    if not dual:
        out['eta'] = dict(Y.to('f').coeffs)
        out['psi'] = {lam: c * lam.sign * lam.z for lam, c in Y.to('p').coeffs.items()}
        out['chi'] = {lam.conjugate: c for lam, c in Y.to('s').coeffs.items()}
        out['phi'] = dict(Y.to('e').coeffs)
        out['gamma'] = dict(Y.to('h').coeffs)
    else:
        W = omega(Y)
        out['eps'] = dict(W.to('f').coeffs)
        out['eta'] = dict(W.coeffs)
        out['psi'] = {lam: c * lam.z for lam, c in W.to('p').coeffs.items()}
        out['chi'] = dict(W.to('s').coeffs)
        out['phi'] = dict(W.to('h').coeffs)
        out['gamma'] = dict(W.to('e').coeffs)
    return out


def trace_coordinates(theta):
    """b_lam with theta = sum b_lam eps^lam, solved on minimal length class representatives."""
    n = theta.n
    eps = trace_family('eps', n)
    lams = partitions(n)
    reps = [w for _, w in min_length_class_reps(n)]
    matrix = [[eps[lam][w] for lam in lams] for w in reps]
    rhs = [theta[w] for w in reps]
    return dict(zip(lams, solve_linear(matrix, rhs)))


def trace_from_class_values(rep_values, n, name='theta'):
    """The unique trace with the given values on the minimal length class representatives."""
    eps = trace_family('eps', n)
    lams = partitions(n)
    reps = [w for _, w in min_length_class_reps(n)]
    matrix = [[eps[lam][w] for lam in lams] for w in reps]
    coords = solve_linear(matrix, [rep_values[w] for w in reps])
    return linear_combination(zip(coords, (eps[lam] for lam in lams)), n, name)


@lru_cache(maxsize=64)
def _z_matrix(n, r, s):
    """L[mu][lam] = [m_lam] r·m_mu[sX]."""
    rows = {}
    for mu in partitions(n):
        scaled = plethysm_scale(SymFunc.basis_element('m', mu), s).scale(r).to('m')
        rows[mu] = {lam: scaled[lam] for lam in partitions(n)}
    return rows


def llt_parameters(n):
    """(r, s) taking Y_q to its LLT analog: r = (q-1)^n, s = 1/(q-1)."""
    q_minus_one = RatFunc(Q - 1)
    return q_minus_one ** n, RatFunc(1) / q_minus_one


def z_family(n, r, s):
    """eps^lam_Z(D) = [m_lam](r·Y_q(D)[sX]) as tables."""
    eps = trace_family('eps', n)
    L = _z_matrix(n, RatFunc.coerce(r), RatFunc.coerce(s))
    return {lam: linear_combination([(L[mu][lam], eps[mu]) for mu in partitions(n)], n, f"eps_Z^{lam}")
            for lam in partitions(n)}


def z_transform(theta, r, s, name=None):
    """theta_Z = sum b_lam eps^lam_Z, with b the eps-coordinates of theta."""
    n = theta.n
    r, s = RatFunc.coerce(r), RatFunc.coerce(s)
    b = trace_coordinates(theta)
    L = _z_matrix(n, r, s)
    eps = trace_family('eps', n)
    terms = []
    for mu in partitions(n):
        weight = RatFunc(0)
        for lam, coeff in b.items():
            if coeff:
                weight = weight + L[mu][lam] * coeff
        terms.append((weight, eps[mu]))
    return linear_combination(terms, n, name or f"{theta.name}_Z")


def llt_transform(theta):
    r, s = llt_parameters(theta.n)
    return z_transform(theta, r, s, name=f"{theta.name}_LLT")


def psi_llt_scalar(lam):
    """(q-1)^n prod 1/(q^{lam_i} - 1)."""
    q_minus_one = RatFunc(Q - 1)
    denominators = product(RatFunc(HalfLaurent.q_power(part) - 1) for part in lam.parts)
    return q_minus_one ** lam.n / denominators


def psi_llt(lam):
    psi = trace_family('psi', lam.n)[lam]
    return psi.scale(psi_llt_scalar(lam), name=f"psi_llt^{lam}")


# Checks

def check_trace_property(theta):
    """First (x, i) with theta(T_x T_{s_i}) != theta(T_{s_i} T_x), or None.

    Generator commutation for every x is equivalent to theta(DD') = theta(D'D).
    """
    n = theta.n
    for x in all_permutations(n):
        for i in range(1, n):
            right = HeckeElement(n, right_mul_simple({x: ONE}, i))
            left = HeckeElement(n, left_mul_simple({x: ONE}, i))
            if theta(right) != theta(left):
                return x, i
    return None


def _one_minus_q_powers(k):
    """(1-q)(1-q^2)...(1-q^k)."""
    return product(RatFunc(1 - HalfLaurent.q_power(j)) for j in range(1, k + 1))


def hook_coefficient(lam):
    """q^{b(lam)} / prod over cells of (1 - q^{hook})."""
    hooks = product(RatFunc(1 - HalfLaurent.q_power(h)) for h in lam.hooks())
    return RatFunc.q_power(lam.b) / hooks


def specialization_chains(n):
    """The eight (label, target, [(coefficient, family, lam)]) expressions for eps/eta LLT."""
    lams = partitions(n)
    one_minus = {lam: product(RatFunc(1 - HalfLaurent.q_power(p)) for p in lam.parts) for lam in lams}
    staircase = {lam: product(_one_minus_q_powers(p) for p in lam.parts) for lam in lams}
    q_binom = {lam: RatFunc.q_power(sum(p * (p - 1) // 2 for p in lam.parts)) for lam in lams}
    return [
        ('eps/psi', 'eps_llt', [(RatFunc(1) / (one_minus[lam] * lam.z), 'psi', lam) for lam in lams]),
        ('eps/chi', 'eps_llt', [(hook_coefficient(lam), 'chi', lam) for lam in lams]),
        ('eps/phi', 'eps_llt', [(RatFunc(1) / staircase[lam], 'phi', lam) for lam in lams]),
        ('eps/gamma', 'eps_llt', [(q_binom[lam] / staircase[lam], 'gamma', lam) for lam in lams]),
        ('eta/psi', 'eta_llt', [(RatFunc(lam.sign) / (one_minus[lam] * lam.z), 'psi', lam) for lam in lams]),
        ('eta/chi', 'eta_llt', [(hook_coefficient(lam.conjugate), 'chi', lam) for lam in lams]),
        ('eta/phi', 'eta_llt', [(q_binom[lam] / staircase[lam], 'phi', lam) for lam in lams]),
        ('eta/gamma', 'eta_llt', [(RatFunc(1) / staircase[lam], 'gamma', lam) for lam in lams]),
    ]


def verify_specialization_chains(n):
    """Compare every chain with eps^n_LLT/(1-q)^n or eta^n_LLT/(1-q)^n on all of S_n.

    Returns:
        list of dicts: label, status, counterexample (w or None), lhs, rhs
    """
    config.guard(n, 'cor11')
    top = partitions(n)[0]
    scale = RatFunc(1) / RatFunc(1 - Q) ** n
    targets = {kind: trace_family(kind, n)[top].scale(scale) for kind in ('eps_llt', 'eta_llt')}
    results = []
    for label, target, terms in specialization_chains(n):
        rhs = linear_combination(
            [(coeff, trace_family(family, n)[lam]) for coeff, family, lam in terms], n, label)
        lhs = targets[target]
        bad = lhs.first_difference(rhs)
        results.append({
            'label': label,
            'status': 'pass' if bad is None else 'fail',
            'counterexample': None if bad is None else str(bad),
            'lhs': None if bad is None else render(lhs[bad]),
            'rhs': None if bad is None else render(rhs[bad]),
        })
        log = logger.info if bad is None else logger.error
        log(f"Specialization chain {label} at n={n}: {results[-1]['status']}")
    return results
