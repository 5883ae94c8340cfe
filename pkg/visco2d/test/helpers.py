import numpy as np
import pytest


class raises_kind(object):
    def __init__(self, exc, kind):
        self.exc = exc
        self.kind = kind

    def __enter__(self):
        return None

    def __exit__(self, *tp):
        __tracebackhide__ = True
        if tp[0] is None:
            pytest.fail("DID NOT RAISE")
        assert tp[1].kind == self.kind
        return issubclass(tp[0], self.exc)


def random_field(grid, cls, rng, kmax=6, scale=1.0):
    """ cls.random scaled to max|f| = scale. """
    f = cls.random(grid, rng, kmax)
    return f * (scale / f.max_abs())


def rel(a, b):
    """ Maximum relative difference of two arrays. """
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))
