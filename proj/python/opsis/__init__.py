"""Operator sampling on the finite phase space Z_L x Z_L."""

import json as _json

from ._opsis import (
    ConfigError,
    NotAFrame,
    NotRiesz,
    annihilator,
    cross_wigner,
    fourier_wigner,
    frame_bounds,
    gaussian_window,
    kn_operator,
    kn_symbol,
    lattice,
    op_translate,
    rank_one,
    reconstruct,
    rihaczek,
    riesz_check,
    stft,
    symplectic_form,
    tf_shift,
    weyl_operator,
    weyl_symbol,
)
from ._opsis import run as _run
from ._opsis import cli as _cli

__all__ = [
    "ConfigError",
    "NotAFrame",
    "NotRiesz",
    "annihilator",
    "cli",
    "cross_wigner",
    "fourier_wigner",
    "frame_bounds",
    "gaussian_window",
    "kn_operator",
    "kn_symbol",
    "lattice",
    "op_translate",
    "rank_one",
    "reconstruct",
    "rihaczek",
    "riesz_check",
    "run",
    "stft",
    "symplectic_form",
    "tf_shift",
    "weyl_operator",
    "weyl_symbol",
]


def run(command, config, seed=None):
    """Run one experiment command on a config (dict or JSON string).

    Returns (metrics, tables, exit_code); tables maps a table name to its CSV text.
    """
    text = config if isinstance(config, str) else _json.dumps(config)
    metrics, tables, code = _run(command, text, seed)
    return _json.loads(metrics), tables, code


def cli(args):
    """Same as the `opsis` executable; `args` excludes the program name."""
    return _cli(["opsis", *args])
