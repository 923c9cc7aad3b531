#!/usr/bin/env python3
"""
Configuration loaded from the environment (.env supported through python-dotenv).

Every value can be overridden per invocation by the CLI global flags.
"""

import os
import logging
from fractions import Fraction

import dotenv

logger = logging.getLogger('archgroups.config')

VERSION = '1.0.0'

# Load environment variables
dotenv.load_dotenv()


def _int_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def _fraction_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        logger.warning(f"Ignoring malformed {name}={raw!r}, using {default}")
        return default
    if value <= 0:
        logger.warning(f"{name} must be positive, using {default}")
        return default
    return value


# Refinement rounds before giving up; each round adds a bit of working
# precision. Configured values are clamped to MAX_REFINE_CAP.
MAX_REFINE_CAP = 1000000
REFINE_CAP = min(_int_env('ARCHGROUPS_REFINE_CAP', 256), MAX_REFINE_CAP)
SEARCH_HEIGHT = _int_env('ARCHGROUPS_SEARCH_HEIGHT', 3)
DEFAULT_EPS = _fraction_env('ARCHGROUPS_EPS', Fraction(1, 1000000))
SEPARATION_CAP = _int_env('ARCHGROUPS_SEPARATION_CAP', 1000)
LOG_LEVEL = os.getenv('ARCHGROUPS_LOG_LEVEL', 'WARNING').upper()
LOG_FILE = os.getenv('ARCHGROUPS_LOG_FILE')

# Variables understood by update_env.py, with their defaults
ENV_DEFAULTS = {
    'ARCHGROUPS_REFINE_CAP': '256',
    'ARCHGROUPS_SEARCH_HEIGHT': '3',
    'ARCHGROUPS_EPS': '1/1000000',
    'ARCHGROUPS_SEPARATION_CAP': '1000',
    'ARCHGROUPS_LOG_LEVEL': 'WARNING',
    'ARCHGROUPS_LOG_FILE': '',
}


class Settings:
    """Mutable per-run settings, seeded from the environment"""

    def __init__(self, refine_cap=None, search_height=None, eps=None, separation_cap=None):
        if refine_cap is not None and refine_cap > MAX_REFINE_CAP:
            logger.warning(f"Refinement cap {refine_cap} exceeds {MAX_REFINE_CAP}, clamping")
            refine_cap = MAX_REFINE_CAP
        self.refine_cap = refine_cap if refine_cap is not None else REFINE_CAP
        self.search_height = search_height if search_height is not None else SEARCH_HEIGHT
        self.eps = eps if eps is not None else DEFAULT_EPS
        self.separation_cap = separation_cap if separation_cap is not None else SEPARATION_CAP

    def as_dict(self):
        return {
            'refine_cap': self.refine_cap,
            'search_height': self.search_height,
            'eps': str(self.eps),
            'separation_cap': self.separation_cap,
        }


# Process-wide settings; the CLI replaces fields from its flags
settings = Settings()
