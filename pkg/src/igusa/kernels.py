"""Backend selection for the hot lifting loop.

The compiled extension is used when it was built; otherwise the pure-Python
kernel takes over.  Both return identical arrays for identical input.
"""
from __future__ import annotations

from array import array

from . import _lift_py

try:
    from . import _lift as _compiled
except ImportError:  # extension not built
    _compiled = None

# the compiled kernel adds two residues in a signed 64-bit integer
COMPILED_MAX_MODULUS = 2**62

_backend = "cython" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _backend = name


def lift_level(sols, n, coefs, exps, owner, l, p, prev_mod, mod):
    if _backend == "cython" and mod < COMPILED_MAX_MODULUS:
        return _compiled.lift_level(
            _q(sols), n, _q([c % mod for c in coefs]), _q(exps), _q(owner), l, p, prev_mod, mod
        )
    return _lift_py.lift_level(sols, n, coefs, exps, owner, l, p, prev_mod, mod)


def _q(seq):
    return seq if isinstance(seq, array) and seq.typecode == "q" else array("q", seq)
