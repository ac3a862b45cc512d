"""Shared fixtures-by-function for the test modules."""
from skewcat import focused as fo
from skewcat import seqcalc as sc
from skewcat.core import I, NormalityFlags, Tensor

from gen import formula, rng_choose, seq_deriv

SETTINGS = NormalityFlags.all_settings()


def random_seq(seed, flags, budget=10):
    return seq_deriv(rng_choose(seed), flags, budget)


def derivation_of(flags, stoup, ctx, succ, pick=0):
    """Some derivation of the sequent (via search and emb), or None."""
    ds = fo.search(flags, fo.root(stoup, tuple(ctx), succ))
    if not ds:
        return None
    return fo.emb(ds[pick % len(ds)], flags)


def empty_stoup_derivation(flags, a, pick=0):
    """A derivation of  - | G --> a  for a few shapes of G."""
    shapes = [(a,), (I, a)]
    if isinstance(a, Tensor):
        shapes.append((a.left, a.right))
    ctx = shapes[pick % len(shapes)]
    return derivation_of(flags, None, ctx, a, pick // len(shapes))


def some_formula(seed):
    return formula(rng_choose(seed), 2)
