"""Pure-Python lifting kernel; same contract as the compiled ``_lift``."""
from __future__ import annotations

from itertools import product


def lift_level(sols, n, coefs, exps, owner, l, p, prev_mod, mod):
    """Lift residues mod ``prev_mod`` to all solutions mod ``mod = p * prev_mod``.

    ``sols`` is a flat array of ``n``-tuples.  Term ``t`` is
    ``coefs[t] * prod x_j^exps[t*n + j]`` and belongs to component
    ``owner[t]``.  Returns the flat list of surviving lifts.
    """
    out = []
    nterms = len(coefs)
    cs = [c % mod for c in coefs]
    ex = [tuple(exps[t * n:(t + 1) * n]) for t in range(nterms)]
    # first coordinate varies fastest, matching the compiled kernel
    digits = [r[::-1] for r in product(range(p), repeat=n)]
    for s in range(len(sols) // n):
        base = sols[s * n:(s + 1) * n]
        for r in digits:
            x = [b + prev_mod * d for b, d in zip(base, r)]
            vals = [0] * l
            for t in range(nterms):
                v = cs[t]
                for xj, e in zip(x, ex[t]):
                    if e:
                        v = v * pow(xj, e, mod) % mod
                vals[owner[t]] = (vals[owner[t]] + v) % mod
            if not any(vals):
                out.extend(x)
    return out
