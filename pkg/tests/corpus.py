"""Shared test inputs."""

import random
from fractions import Fraction

from tqft.frobenius import semisimple_from_idempotents, truncated_polynomial
from tqft.gauge import builtin_group, center_frobenius_algebra
from tqft.linalg import ExactMatrix, rank

GROUP_NAMES = ["cyclic2", "cyclic3", "cyclic4", "cyclic5", "cyclic6",
               "symmetric3", "dihedral4", "quaternion8"]


def groups():
    return [builtin_group(n) for n in GROUP_NAMES]


def random_semisimple(seed: int = 7, dim: int = 3):
    """Commutative semisimple algebra in a scrambled basis with a random trace."""
    rng = random.Random(seed)
    lambdas = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([1, -1])
               for _ in range(dim)]
    while True:
        p = ExactMatrix.from_rows([[rng.randint(-3, 3) for _ in range(dim)] for _ in range(dim)])
        if rank(p) == dim:
            break
    return semisimple_from_idempotents(lambdas, p)


def frobenius_corpus():
    """(name, algebra, semisimple?)"""
    out = [("truncpoly2", truncated_polynomial(2), False)]
    out += [(f"center:{g.name}", center_frobenius_algebra(g), True) for g in groups()]
    out.append(("random3", random_semisimple(), True))
    return out
