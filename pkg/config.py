import os
import logging
from pathlib import Path

from dotenv import load_dotenv

from errors import GuardExceeded

load_dotenv()

LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
DATABASE = os.environ.get('DATABASE', str(Path('./data') / 'hecke_kernel.db'))
PORT = int(os.environ.get('PORT', '5555'))

# Default size guards per area. KERNEL_MAX_N replaces all of them (unsafe:
# tables grow like n!).
GUARDS = {
    'perm': 8,
    'traces': 7,
    'cor11': 5,
    'chromatic': 7,
}


def max_n(area):
    override = os.environ.get('KERNEL_MAX_N')
    if override:
        try:
            return int(override)
        except ValueError:
            raise GuardExceeded(f"KERNEL_MAX_N must be an integer, got {override!r}") from None
    return GUARDS[area]


def guard(n, area):
    """Reject sizes above the area's guard."""
    limit = max_n(area)
    if n < 1 or n > limit:
        raise GuardExceeded(f"n={n} outside 1..{limit} for {area} (set KERNEL_MAX_N to override)")
    return n


def setup_logging(level_name=None):
    """Configure the root logger from LOG_LEVEL (entry points only)."""
    level_name = (level_name or LOG_LEVEL).upper()
    level = getattr(logging, level_name, logging.INFO)
    logging.basicConfig(level=level)
    logging.getLogger(__name__).debug(f"Logging level set to {level_name}")
    return level
