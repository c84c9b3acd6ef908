"""Direct checks of the structure results for compatible tuples."""

import itertools
from fractions import Fraction

from homnambu.space import (
    as_covector,
    basis_vector,
    kernel_basis,
    proportionality,
    vadd,
)


def sample_outside_kernel(tau):
    """Basis vectors outside ker tau and their shifts by kernel vectors."""
    tau = as_covector(tau)
    d = tau.dim
    outside = [basis_vector(d, u) for u in range(d) if tau.coeffs[u]]
    kernel = kernel_basis(tau)
    out = list(outside)
    for u, k in itertools.product(outside, kernel):
        out.append(vadd(u, k))
    return out


def kernel_preserved(alphas, tau):
    tau = as_covector(tau)
    return all(not tau(a(k)) for a in alphas for k in kernel_basis(tau))


def one_witness_decides(alphas, tau):
    """If some u outside the kernel has tau(alpha(u)) = 0 then alpha(V) lies in the kernel."""
    tau = as_covector(tau)
    d = tau.dim
    for a in alphas:
        if any(not tau(a(u)) for u in sample_outside_kernel(tau)):
            if any(tau(a(basis_vector(d, x))) for x in range(d)):
                return False
    return True


def preserving(a, tau):
    return all(tau(a(u)) for u in sample_outside_kernel(tau))


def ratios_consistent(alphas, tau):
    """Preserving pairs are proportional with a witness-independent ratio."""
    tau = as_covector(tau)
    pres = [a for a in alphas if preserving(a, tau)]
    for ai, aj in itertools.permutations(pres, 2):
        lam = proportionality(ai, aj, tau)
        if not lam or ai != aj.scale(lam):
            return False
        for u in sample_outside_kernel(tau):
            if Fraction(tau(ai(u))) / tau(aj(u)) != lam:
                return False
    return True


def mixed_forces_zero(alphas, tau):
    tau = as_covector(tau)
    pres = [preserving(a, tau) for a in alphas]
    if any(pres) and not all(pres):
        return all(a.is_zero() for a, p in zip(alphas, pres) if not p)
    return True


def nondegenerate(tau):
    tau = as_covector(tau)
    return not tau.is_zero() and tau.dim > 1
