"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written in plain Python (bitmask subset
loops, no numpy, no reuse of the package's signed-sum code) so that
agreement with the package is meaningful.
"""

from itertools import product
from math import prod

from dirmono import CopulaSpec, cdf


def bf_orthant(point_fn, signs, v):
    """Brute-force inclusion-exclusion orthant probability.

    ``point_fn`` evaluates the copula at a full-length point; subsets of
    the positive axes are enumerated through bitmasks and coordinates
    outside the kept set are pinned to 1.
    """
    n = len(signs)
    pos = [i for i in range(n) if signs[i] > 0]
    neg = [i for i in range(n) if signs[i] < 0]
    total = 0.0
    for mask in range(1 << len(pos)):
        keep = list(neg)
        bits = 0
        for b in range(len(pos)):
            if mask >> b & 1:
                keep.append(pos[b])
                bits += 1
        if keep:
            pt = tuple(v[i] if i in keep else 1.0 for i in range(n))
            value = point_fn(pt)
        else:
            value = 1.0
        total += (-1.0) ** bits * value
    return total


def bf_survival(point_fn, n, u):
    """Brute-force survival value: signed sum over all coordinate subsets."""
    total = 0.0
    for mask in range(1 << n):
        pt = [1.0] * n
        bits = 0
        for i in range(n):
            if mask >> i & 1:
                pt[i] = 1.0 - u[i]
                bits += 1
        total += (-1.0) ** bits * point_fn(tuple(pt))
    return total


def survival2_closed_form(point_fn, u, v):
    """Bivariate survival value u + v - 1 + C(1-u, 1-v)."""
    return u + v - 1.0 + point_fn((1.0 - u, 1.0 - v))


# hand-written family formulas, independent of the package dispatch
def fgm_formula(lam):
    return lambda u: prod(u) * (1.0 + lam * prod(1.0 - x for x in u))


def amh_formula(delta):
    return lambda u: u[0] * u[1] / (1.0 + delta * (1.0 - u[0]) * (1.0 - u[1]))


def point_fn(spec: CopulaSpec):
    """Scalar evaluator of a spec, for feeding the brute-force sums."""
    return lambda pt: cdf(spec, pt)


def family_zoo():
    """Representative validated specs across all families and dims 2..5."""
    zoo = [
        CopulaSpec("product", 2),
        CopulaSpec("product", 3),
        CopulaSpec("product", 4),
        CopulaSpec("product", 5),
        CopulaSpec("m", 2),
        CopulaSpec("m", 3),
        CopulaSpec("m", 4),
        CopulaSpec("w", 2),
        CopulaSpec("amh", 2, {"delta": -1.0}),
        CopulaSpec("amh", 2, {"delta": -0.5}),
        CopulaSpec("amh", 2, {"delta": 0.5}),
        CopulaSpec("amh", 2, {"delta": 1.0}),
        CopulaSpec("convexpim", 2, {"theta": 0.0}),
        CopulaSpec("convexpim", 2, {"theta": 0.5}),
        CopulaSpec("convexpim", 3, {"theta": 0.5}),
        CopulaSpec("convexpim", 3, {"theta": 1.0}),
        CopulaSpec("convexpim", 4, {"theta": 0.5}),
    ]
    for lam in (-1.0, -0.5, 0.5, 1.0):
        for n in (2, 3, 4):
            zoo.append(CopulaSpec("fgm", n, {"lambda": lam}))
    zoo.append(CopulaSpec("fgm", 5, {"lambda": 0.5}))
    zoo += [
        CopulaSpec("survival", 2, inner=CopulaSpec("fgm", 2, {"lambda": 0.5})),
        CopulaSpec("survival", 2, inner=CopulaSpec("amh", 2, {"delta": -0.5})),
        CopulaSpec("survival", 2, inner=CopulaSpec("w", 2)),
        CopulaSpec("survival", 3, inner=CopulaSpec("fgm", 3, {"lambda": -0.5})),
    ]
    return zoo


def bivariate_zoo():
    return [s for s in family_zoo() if s.dim == 2]


def all_sign_vectors(n):
    return list(product((1, -1), repeat=n))
