"""Independent brute-force oracles.

These evaluate identities literally over every ordered basis tuple or
every permutation, sharing nothing with the restricted loops and shuffle
sums under test beyond ``eval_vectors``/``eval_basis``.
"""

import itertools
from fractions import Fraction
from math import factorial

from homnambu.space import basis_vector


def perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(s, v):
    return tuple(s * a for a in v)


def hnj_defects(alg):
    """Every ordered (x, y) basis tuple with a nonzero Hom-Nambu-Jacobi defect."""
    phi, d, n = alg.bracket, alg.dim, alg.arity
    e = [basis_vector(d, i) for i in range(d)]
    out = {}
    for x in itertools.product(range(d), repeat=n - 1):
        for y in itertools.product(range(d), repeat=n):
            lhs = phi.eval_vectors(
                [alg.twists[s](e[x[s]]) for s in range(n - 1)] + [phi.eval_vectors([e[i] for i in y])])
            rhs = (Fraction(0),) * d
            for k in range(n):
                inner = phi.eval_vectors([e[i] for i in x] + [e[y[k]]])
                args = []
                for m in range(n):
                    if m < k:
                        args.append(alg.twists[m](e[y[m]]))
                    elif m == k:
                        args.append(inner)
                    else:
                        args.append(alg.twists[m - 1](e[y[m]]))
                rhs = vec_add(rhs, phi.eval_vectors(args))
            dft = tuple(a - b for a, b in zip(lhs, rhs))
            if any(dft):
                out[(x, y)] = dft
    return out


def phi_tau_symmetrized(phi, tau, args):
    """-(1/n!) sum_sigma sgn(sigma) tau(x_s1) phi(x_s2, ..)."""
    n1 = len(args)
    total = (Fraction(0),) * phi.dim
    for p in itertools.permutations(range(n1)):
        t = tau(args[p[0]])
        if not t:
            continue
        val = phi.eval_vectors([args[i] for i in p[1:]])
        total = vec_add(total, vec_scale(perm_sign(p) * t, val))
    return vec_scale(Fraction(-1, factorial(n1 - 1)), total)


def wedge_symmetrized(tau, other, args, vector_valued):
    p = tau.arity
    q = other.arity
    acc = None
    for perm in itertools.permutations(range(p + q)):
        t = tau.eval_vectors([args[i] for i in perm[:p]])
        if not t:
            continue
        val = other.eval_vectors([args[i] for i in perm[p:]])
        term = vec_scale(perm_sign(perm) * t, val) if vector_valued else perm_sign(perm) * t * val
        acc = term if acc is None else (vec_add(acc, term) if vector_valued else acc + term)
    norm = Fraction(1, factorial(p) * factorial(q))
    if acc is None:
        return (Fraction(0),) * tau.dim if vector_valued else Fraction(0)
    return vec_scale(norm, acc) if vector_valued else norm * acc


def interior_symmetrized(phi, psi, args, vector_valued):
    k = phi.arity
    l = psi.arity - 1
    acc = None
    for perm in itertools.permutations(range(k + l)):
        inner = phi.eval_vectors([args[i] for i in perm[:k]])
        val = psi.eval_vectors([inner] + [args[i] for i in perm[k:]])
        term = vec_scale(perm_sign(perm), val) if vector_valued else perm_sign(perm) * val
        acc = term if acc is None else (vec_add(acc, term) if vector_valued else acc + term)
    norm = Fraction(1, factorial(k) * factorial(l))
    return vec_scale(norm, acc) if vector_valued else norm * acc


def gji_sum(phi, args):
    """sum over S_{2n-1} of sgn * phi(phi(x_s1..x_sn), x_s(n+1)..)."""
    n = phi.arity
    total = (Fraction(0),) * phi.dim
    for perm in itertools.permutations(range(2 * n - 1)):
        inner = phi.eval_vectors([args[i] for i in perm[:n]])
        if not any(inner):
            continue
        val = phi.eval_vectors([inner] + [args[i] for i in perm[n:]])
        total = vec_add(total, vec_scale(perm_sign(perm), val))
    return total
