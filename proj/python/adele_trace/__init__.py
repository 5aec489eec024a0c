"""Both sides of the trace formula for A^1 x| A over Q, with certified bounds.

Documents are plain dicts in the same JSON layout the ``adele-trace``
command reads and writes; a ``str`` or ``pathlib.Path`` naming a file is
accepted wherever a document is.
"""

import json
import os

from . import _core
from ._core import SCHEMA, ParseError, __version__

__all__ = [
    "SCHEMA",
    "ParseError",
    "__version__",
    "verify",
    "poisson",
    "chars",
    "fourier",
    "spectral",
    "geometric",
    "random_hecke",
    "random_poisson",
    "lattice_sum",
    "psi_p",
]


def _text(doc):
    if isinstance(doc, (dict, list)):
        return json.dumps(doc)
    if isinstance(doc, (str, os.PathLike)):
        with open(doc, "rb") as f:
            return f.read().decode("utf-8")
    raise TypeError("expected a dict or a path, got %s" % type(doc).__name__)


def verify(h, tol=1e-8):
    """Trace report for a Hecke element; ``report["verdict"]`` is "pass" or "fail"."""
    return json.loads(_core.verify(_text(h), tol))


def poisson(phi, tol=1e-8):
    return json.loads(_core.poisson(_text(phi), tol))


def chars(h, modulus):
    return json.loads(_core.chars(_text(h), modulus))


def fourier(f):
    """Local Fourier transform of a ``{"p": p, "atoms": [...]}`` document."""
    return json.loads(_core.fourier(_text(f)))


def spectral(h, tol=1e-12):
    return json.loads(_core.spectral(_text(h), tol))


def geometric(h, tol=1e-12):
    return json.loads(_core.geometric(_text(h), tol))


def random_hecke(seed, primes=(2, 3, 5), atoms=2, max_level=2):
    return json.loads(_core.random_document(seed, list(primes), atoms, max_level, "hecke"))


def random_poisson(seed, primes=(2, 3, 5), atoms=2, max_level=2):
    return json.loads(_core.random_document(seed, list(primes), atoms, max_level, "poisson"))


def lattice_sum(arch, denominator, tol=1e-12):
    """Sum of a list of Gaussian atoms over (1/D)Z as ``(value, bound)``."""
    return _core.lattice_sum(json.dumps(arch), denominator, tol)


def psi_p(x, p):
    """psi_p(x) for a rational given as a string such as "1/3"; ``(value, radius)``."""
    return _core.psi_p(str(x), p)
