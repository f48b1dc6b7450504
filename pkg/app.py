import logging

from flask import Flask, jsonify, g

import config
import utils
from api import compute_endpoints, verify_endpoints
from database import init_db, get_db
from errors import KernelError

# Setup logging
config.setup_logging()
logger = logging.getLogger(__name__)
logger.info(f"Logging level set to {config.LOG_LEVEL}")

# Create Flask app
app = Flask(__name__)
app.config['DATABASE'] = config.DATABASE


@app.before_request
def before_request():
    g.db = get_db()
    # Log all HTTP requests to the server
    utils.log_request_info()


@app.teardown_request
def teardown_request(exception):
    db = g.pop('db', None)
    if db is not None:
        db.close()


# Initialize database on startup
with app.app_context():
    init_db()


@app.route('/')
def index():
    return jsonify({
        "status": "OK",
        "message": "Hecke kernel API is running",
        "version": "1.0.0",
        "guards": {area: config.max_n(area) for area in config.GUARDS},
    })


# Register compute endpoints
app.register_blueprint(compute_endpoints.bp)
# Register verification endpoints
app.register_blueprint(verify_endpoints.bp)


# Error handling
@app.errorhandler(404)
def not_found(error):
    return jsonify({
        "error": ["EGeneral:Unknown method"],
        "result": {}
    }), 404


@app.errorhandler(KernelError)
def handle_kernel_error(e):
    status = getattr(e, 'http_status', 500)
    if status >= 500:
        logger.error(f"Invariant violation: {e.to_wire()}")
    else:
        logger.warning(f"Rejected request: {e.to_wire()}")
    return jsonify({
        "error": [e.to_wire()],
        "result": {}
    }), status


@app.errorhandler(Exception)
def handle_exception(e):
    logger.error(f"Unhandled exception: {str(e)}")
    return jsonify({
        "error": ["EGeneral:Internal error"],
        "result": {}
    }), 500


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=config.PORT, debug=False)
