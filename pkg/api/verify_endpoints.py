import logging

from flask import Blueprint, jsonify

from database import get_db, save_report, fetch_reports
from errors import InputError
from utils import get_params, timed
from verify import run_suite

logger = logging.getLogger(__name__)

# Create Blueprint for verification endpoints
bp = Blueprint('verify', __name__, url_prefix='/0/verify')


def _flag(value, default=True):
    if value is None:
        return default
    return str(value).lower() not in ('0', 'false', 'no')


@bp.route('/reports', methods=['GET'])
def reports():
    """Stored verification reports, newest first.

    Query params:
        identity: prefix filter such as "cor11" or "eq6:smooth_ctilde"
        status: pass or fail
        limit: maximum rows (default 100)
    """
    params = get_params()
    rows = fetch_reports(get_db(), params.get('identity'), params.get('status'), params.get('limit', 100))
    return jsonify({'error': [], 'result': {'count': len(rows), 'reports': rows}})


@bp.route('/<identity>', methods=['POST'])
def run(identity):
    params = get_params()
    try:
        n = int(params.get('n', 1))
    except (TypeError, ValueError):
        raise InputError(f"n must be an integer, got {params.get('n')!r}", code='EGeneral:Invalid arguments')

    with timed(f"verify {identity} n<={n}") as t:
        results = run_suite(identity, n)

    if _flag(params.get('store')):
        db = get_db()
        for report in results:
            save_report(db, report)

    failed = [r.identity for r in results if not r.passed]
    if failed:
        logger.error(f"Verification {identity} n<={n} failed: {', '.join(failed)}")
    return jsonify({
        'error': [],
        'result': {
            'status': 'fail' if failed else 'pass',
            'seconds': t['seconds'],
            'reports': [r.to_json() for r in results],
        },
    })
