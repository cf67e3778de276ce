"""Deterministic compensated summation.

Large double sums over point pairs cancel heavily (diagonal against
off-diagonal terms), so plain accumulation loses digits.  The scheme
here splits the input into fixed-width blocks, runs a compensated
(Kahan) accumulation vectorized across the block lanes, and combines
the lane totals with an exactly rounded summation.  The reduction
shape depends only on the input length, never on worker count, so the
result is bitwise reproducible.
"""

import math

import numpy as np

BLOCK = 1024


def comp_sum(values):
    """Sum a float array in a fixed deterministic order with compensation."""
    a = np.asarray(values, dtype=float).ravel()
    n = a.size
    if n == 0:
        return 0.0
    if n <= BLOCK:
        return math.fsum(a.tolist())
    pad = (-n) % BLOCK
    if pad:
        a = np.concatenate([a, np.zeros(pad)])
    rows = a.reshape(-1, BLOCK)
    s = np.zeros(BLOCK)
    c = np.zeros(BLOCK)
    for row in rows:
        y = row - c
        t = s + y
        c = (t - s) - y
        s = t
    return math.fsum(s.tolist() + (-c).tolist())


def comp_dot(x, y):
    """Deterministic compensated inner product of two 1-d arrays."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    return comp_sum(x * y)
