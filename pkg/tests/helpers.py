import random
from fractions import Fraction


def random_positive(rng: random.Random, n: int):
    return tuple(Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n))


def random_nonnegative(rng: random.Random, n: int):
    return tuple(Fraction(rng.choice([0, 0, 1, 2, 3, 5]), rng.randint(1, 3)) for _ in range(n))
