import logging

from flask import Blueprint, jsonify

from chromatic import chromatic_qsym, graph_from_permutation, llt_poly
from errors import InputError
from hecke import kl_polynomial, parse_element, r_polynomial
from perm import Permutation
from qmatrix import immanant, normalize, parse_word
from ring import render
from symfunc import Partition
from traces import FAMILIES, clear_denominators, trace_family, y_q
from utils import get_params, timed

logger = logging.getLogger(__name__)

# Create Blueprint for compute endpoints
bp = Blueprint('compute', __name__, url_prefix='/0/compute')


def require(params, *names):
    missing = [name for name in names if not params.get(name)]
    if missing:
        raise InputError(f"missing parameter(s): {', '.join(missing)}", code='EGeneral:Invalid arguments')
    return [params[name] for name in names]


def ok(result):
    return jsonify({'error': [], 'result': result})


def _family_member(params):
    family, lam_text = require(params, 'family', 'lambda')
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}", code='EGeneral:Invalid arguments')
    lam = Partition.parse(str(lam_text))
    return family, lam, trace_family(family, lam.n)[lam]


@bp.route('/klpoly', methods=['GET', 'POST'])
def klpoly():
    """Kazhdan-Lusztig and R-polynomial of a pair (u, w)."""
    u_text, w_text = require(get_params(), 'u', 'w')
    u, w = Permutation.parse(u_text), Permutation.parse(w_text)
    with timed(f"klpoly {u},{w}") as t:
        P, R = kl_polynomial(u, w), r_polynomial(u, w)
    return ok({'u': str(u), 'w': str(w), 'P': str(P), 'R': str(R), 'seconds': t['seconds']})


@bp.route('/trace', methods=['GET', 'POST'])
def trace():
    """A trace family member, at one element ('at') or as a full table."""
    params = get_params()
    family, lam, table = _family_member(params)
    if params.get('at'):
        value = table(parse_element(params['at'], lam.n))
        return ok({'family': family, 'lambda': lam.key(), 'at': params['at'], 'value': render(value)})
    return ok(table.to_json())


@bp.route('/symfunc', methods=['GET', 'POST'])
def symfunc():
    """Y_q of a Hecke element ('at'), or the LLT / chromatic polynomial of a permutation ('w', 'kind')."""
    params = get_params()
    basis = params.get('basis', 'm')
    kind = params.get('kind', 'ysym')
    if kind == 'ysym':
        (at,) = require(params, 'at')
        F = y_q(parse_element(at))
    elif kind in ('llt', 'chromatic'):
        (w_text,) = require(params, 'w')
        G = graph_from_permutation(Permutation.parse(w_text), params.get('rule', 'hessenberg'))
        N = int(params['N']) if params.get('N') else None
        F = (llt_poly if kind == 'llt' else chromatic_qsym)(G, N)
    else:
        raise InputError(f"unknown kind {kind!r}", code='EGeneral:Invalid arguments')
    F = F.to(basis)
    return ok({**F.to_json(), 'text': str(F)})


@bp.route('/qnormalize', methods=['GET', 'POST'])
def qnormalize():
    params = get_params()
    (word,) = require(params, 'word')
    n = int(params['n']) if params.get('n') else None
    seed = int(params['seed']) if params.get('seed') is not None else None
    E = normalize(parse_word(word), n, strategy=params.get('strategy', 'deterministic'), seed=seed)
    return ok({
        'n': E.n,
        'terms': {';'.join(f"{a},{b}" for a, b in w): str(c) for w, c in E.terms()},
        'text': str(E),
    })


@bp.route('/immanant', methods=['GET', 'POST'])
def immanant_endpoint():
    family, lam, table = _family_member(get_params())
    cleared, den = clear_denominators(table.values)
    E = immanant(cleared, lam.n)
    return ok({'family': family, 'lambda': lam.key(), 'immanant': str(E), 'denominator': render(den)})
