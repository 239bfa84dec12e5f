import os
import sys

MASK64 = (1 << 64) - 1


def resource_path(relative_path):
    """Get absolute path to resource, works for both development and PyInstaller."""
    try:
        base_path = sys._MEIPASS
    except AttributeError:
        base_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

    return os.path.join(base_path, relative_path)


def _splitmix64(state):
    z = (state + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master, trial):
    """Child seed of trial ``trial``: splitmix64(splitmix64(master) ^ trial).

    Any implementation of splitmix64 reproduces the same per-trial streams.
    """
    if master < 0 or trial < 0:
        raise ValueError("seeds and trial indices are non-negative")
    return _splitmix64(_splitmix64(master & MASK64) ^ (trial & MASK64))


def format_float(value):
    """17 significant digits; empty string for None."""
    if value is None:
        return ''
    return format(float(value), '.17g')


def parse_float_list(text):
    """'0.2,0.1, 0.05' -> [0.2, 0.1, 0.05]"""
    values = [float(part) for part in text.split(',') if part.strip()]
    if not values:
        raise ValueError(f"no numbers in {text!r}")
    return values
