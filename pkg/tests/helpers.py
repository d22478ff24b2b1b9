"""Brute-force oracles used to cross-check the linear-algebra layer.

Everything here is deliberately naive: bounded coefficient searches and
permutation-sum determinants, independent of the implementations under
test.
"""

from fractions import Fraction
from itertools import permutations, product


def brute_contains(free, closed, p, x, bound=10, kmax=6):
    """Is x an integer combination of free gens and closed gens over Z[1/p]?

    Searches integer coefficients in [-bound, bound] after pushing every
    closed generator down by p**k, for each k up to kmax.  Sound but only
    complete for small witnesses; keep test vectors small.
    """
    x = tuple(Fraction(c) for c in x)
    rank = len(x)
    free = [tuple(Fraction(c) for c in v) for v in free]
    closed = [tuple(Fraction(c) for c in v) for v in closed]
    for k in range(kmax):
        scale = Fraction(1, p ** k) if closed else Fraction(1)
        vecs = free + [tuple(c * scale for c in v) for v in closed]
        if not vecs:
            if all(c == 0 for c in x):
                return True
            continue
        for coeffs in product(range(-bound, bound + 1), repeat=len(vecs)):
            tot = tuple(sum(coeffs[i] * vecs[i][j] for i in range(len(vecs)))
                        for j in range(rank))
            if tot == x:
                return True
    return False


def rank1_member(free, closed, p, x, kcap=20):
    """Exact membership for rank-1 groups via gcd arithmetic.

    Complete as long as x needs no p-power denominator beyond p**kcap.
    """
    from math import gcd, lcm

    x = Fraction(x)
    free = [Fraction(g) for g in free]
    closed = [Fraction(h) for h in closed]
    for k in range(kcap):
        gens = free + [h / p ** k for h in closed]
        if not gens:
            return x == 0
        d = lcm(x.denominator, *(g.denominator for g in gens))
        ints = [int(g * d) for g in gens]
        g0 = gcd(*ints) if len(ints) > 1 else abs(ints[0])
        if g0 == 0:
            return x == 0
        if int(x * d) % g0 == 0:
            return True
        if not closed:
            return False
    return False


def perm_det(rows):
    """Permutation-sum determinant, fine for n <= 4."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += sign * term
    return total


def sample_elements(rng, free, closed, p, count=40, coeff=4, kmax=3):
    """Random elements of the group presented by free and closed gens."""
    free = [tuple(Fraction(c) for c in v) for v in free]
    closed = [tuple(Fraction(c) for c in v) for v in closed]
    rank = len(free[0]) if free else (len(closed[0]) if closed else 1)
    out = []
    for _ in range(count):
        tot = tuple(Fraction(0) for _ in range(rank))
        for v in free:
            a = rng.randint(-coeff, coeff)
            tot = tuple(t + a * c for t, c in zip(tot, v))
        for v in closed:
            a = rng.randint(-coeff, coeff)
            k = rng.randint(0, kmax)
            q = Fraction(a, p ** k)
            tot = tuple(t + q * c for t, c in zip(tot, v))
        out.append(tot)
    return out
