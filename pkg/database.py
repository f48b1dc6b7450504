import sqlite3
import json
import logging
from pathlib import Path

from flask import g, current_app, has_app_context

import config

logger = logging.getLogger(__name__)


def connect(path=None):
    """Open the report store outside a request (CLI use)."""
    path = path or config.DATABASE
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(path, detect_types=sqlite3.PARSE_DECLTYPES)
    conn.row_factory = sqlite3.Row
    return conn


def get_db():
    if 'db' not in g:
        g.db = connect(current_app.config['DATABASE'])
    return g.db


def init_db(db=None):
    """Initialize database tables if they don't exist"""
    if db is None:
        db = get_db() if has_app_context() else connect()

    db.execute('''
    CREATE TABLE IF NOT EXISTS verification_reports (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        identity TEXT NOT NULL,
        n INTEGER NOT NULL,
        status TEXT NOT NULL,
        counterexample JSON,
        detail JSON,
        wall_time REAL,
        created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
    )
    ''')
    db.execute('CREATE INDEX IF NOT EXISTS idx_reports_identity ON verification_reports (identity, n)')
    db.commit()
    logger.info("Database initialized")


def save_report(db, report):
    cursor = db.execute(
        'INSERT INTO verification_reports (identity, n, status, counterexample, detail, wall_time) '
        'VALUES (?, ?, ?, ?, ?, ?)',
        (report.identity, report.n, report.status,
         json.dumps(report.counterexample) if report.counterexample is not None else None,
         json.dumps(report.detail), report.wall_time)
    )
    db.commit()
    logger.debug(f"Stored report {report.identity} n={report.n} as id {cursor.lastrowid}")
    return cursor.lastrowid


def fetch_reports(db, identity=None, status=None, limit=100):
    """Latest reports first, optionally filtered by identity prefix and status."""
    query = 'SELECT * FROM verification_reports WHERE 1=1'
    params = []
    if identity:
        query += ' AND identity LIKE ?'
        params.append(f"{identity}%")
    if status:
        query += ' AND status = ?'
        params.append(status)
    query += ' ORDER BY id DESC LIMIT ?'
    params.append(int(limit))
    rows = []
    for row in db.execute(query, params).fetchall():
        item = dict(row)
        for key in ('counterexample', 'detail'):
            if item[key]:
                item[key] = json.loads(item[key])
        rows.append(item)
    return rows
