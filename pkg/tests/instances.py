"""Seeded instance builders shared by the property and acceptance suites."""

import itertools
from fractions import Fraction

from homnambu.families import Lcg, random_covector, random_skew, rank_one_c1
from homnambu.multilinear import HomNambuAlgebra, PForm
from homnambu.space import LinearMap, basis_vector, kernel_basis

F = Fraction
Z = F(0)


def e(d, i):
    return basis_vector(d, i)


def lcg_vector(rng, d, bound=2):
    return tuple(F(rng.randint(-bound, bound)) for _ in range(d))


def lcg_skew(rng, d, n, density=40):
    return random_skew(rng, d, n, lambda: lcg_vector(rng, d), density)


def lcg_pform(rng, d, p, density=50):
    table = {k: F(rng.randint(-2, 2)) for k in itertools.combinations(range(d), p)
             if rng.chance(density)}
    return PForm(d, p, table)


def projection_instance(seed, n, kernel_target=False):
    """Induction input whose last twist fixes a known vector ``a``.

    With ``kernel_target`` the twists project onto a kernel vector (so
    ``tau(a) = 0``); otherwise onto a vector ``w`` with ``tau(w) != 0``.
    """
    rng = Lcg(seed)
    d = rng.randint(3, 4)
    tau = random_covector(rng, d)
    kernel = kernel_basis(tau)
    if kernel_target:
        a = rng.choice(kernel)
        j = next(i for i, c in enumerate(a) if c)
        alpha = LinearMap(tuple(tuple(c * F(int(col == j)) / a[j] for c in a) for col in range(d)))
    else:
        u = next(i for i, c in enumerate(tau.coeffs) if c)
        a = tuple(F(rng.randint(-1, 1)) + (1 if i == u else 0) for i in range(d))
        if not tau(a):
            a = e(d, u)
        (alpha,) = rank_one_c1(tau, a, [1 / tau(a)])
    kvals = [k for k in kernel]

    def value():
        acc = [Z] * d
        for k in kvals:
            c = rng.randint(-2, 2)
            acc = [x + c * y for x, y in zip(acc, k)]
        return tuple(acc)

    phi = random_skew(rng, d, n, value, density=60)
    alg = HomNambuAlgebra(phi, (alpha,) * (n - 1))
    return alg, tau, alpha, a
