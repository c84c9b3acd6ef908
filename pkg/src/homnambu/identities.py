"""Brute-force exact checkers for the identities of n-ary Hom-Nambu-Lie algebras.

Every checker loops over basis tuples only, which suffices by
multilinearity.  Within an argument block the loop is further restricted to
strictly increasing tuples wherever the identity is alternating in that
block; see :func:`check_hom_nambu_jacobi` for when that holds.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb

from .multilinear import HomNambuAlgebra, PForm, SkewMap, contract_pform, interior, wedge
from .report import CheckReport
from .space import (
    as_covector,
    basis_vector,
    collinear,
    is_zero,
    support,
    vaxpy,
)

__all__ = [
    "check_hom_nambu_jacobi",
    "check_fundamental_identity",
    "check_phi_trace",
    "check_pform_compatible",
    "check_gji",
    "check_wedge_hypothesis",
    "check_abelian",
    "check_skew",
    "twist_classes",
]


# -- Hom-Nambu-Jacobi ----------------------------------------------------------


def twist_classes(twists) -> list[list[int]]:
    """Partition slot indices into groups of mutually collinear twists.

    Zero maps are collinear with everything and join the first group.
    """
    groups: list[list[int]] = []
    zeros = []
    for s, a in enumerate(twists):
        if a.is_zero():
            zeros.append(s)
            continue
        for g in groups:
            if collinear(twists[g[0]], a):
                g.append(s)
                break
        else:
            groups.append([s])
    if zeros:
        if groups:
            groups[0] = sorted(groups[0] + zeros)
        else:
            groups.append(zeros)
    return groups


def _x_tuples(d, groups, length):
    """Ordered tuples, strictly increasing on the slots of each group."""
    per_group = [itertools.combinations(range(d), len(g)) for g in groups]
    for choice in itertools.product(*[list(p) for p in per_group]):
        x = [0] * length
        for g, idx in zip(groups, choice):
            for slot, i in zip(g, idx):
                x[slot] = i
        yield tuple(x)


class _HNJContext:
    """Cached pieces shared by all (x, y) evaluations."""

    def __init__(self, alg: HomNambuAlgebra):
        self.phi = alg.bracket
        self.d = alg.dim
        self.n = alg.arity
        self.twist_supports = [[support(c) for c in a.cols] for a in alg.twists]
        self._twisted: dict = {}
        self._phi_basis: dict = {}

    def phi_at(self, idx):
        key = tuple(idx)
        val = self._phi_basis.get(key)
        if val is None:
            val = self.phi.eval_basis(key)
            self._phi_basis[key] = val
        return val

    def twisted(self, z):
        """Columns of ``w -> phi(a_1 e_z1, .., a_{n-1} e_z{n-1}, w)``."""
        cols = self._twisted.get(z)
        if cols is None:
            sups = [self.twist_supports[s][i] for s, i in enumerate(z)]
            cols = [self.phi._expand(sups + [[(j, Fraction(1))]]) for j in range(self.d)]
            self._twisted[z] = cols
        return cols

    def apply_twisted(self, z, w, acc):
        cols = None
        for j, c in enumerate(w):
            if c:
                if cols is None:
                    cols = self.twisted(z)
                vaxpy(acc, c, cols[j])

    def defect(self, x, y):
        n, d = self.n, self.d
        acc = [Fraction(0)] * d
        self.apply_twisted(x, self.phi_at(y), acc)
        neg = [Fraction(0)] * d
        for k in range(n):
            inner = self.phi_at(x + (y[k],))
            if is_zero(inner):
                continue
            rest = y[:k] + y[k + 1:]
            # moving the inner bracket from slot k+1 to slot n costs n-k-1 swaps
            if (n - k - 1) % 2:
                self.apply_twisted(rest, inner, acc)
            else:
                self.apply_twisted(rest, inner, neg)
        return tuple(a - b for a, b in zip(acc, neg))


def _hnj_chunk(alg, xs, ys, stop_at_first, name):
    ctx = _HNJContext(alg)
    rep = CheckReport(name)
    for x in xs:
        for y in ys:
            rep.checked += 1
            dft = ctx.defect(x, y)
            if not is_zero(dft):
                rep.add(dft, x=x, y=y)
                if stop_at_first:
                    return rep
    return rep


def check_hom_nambu_jacobi(alg: HomNambuAlgebra, stop_at_first=False, jobs=1,
                           name="HNJ") -> CheckReport:
    """Check the Hom-Nambu-Jacobi identity on basis tuples.

    With ``x = (x_1..x_{n-1})`` and ``y = (y_1..y_n)`` the defect is

        phi(a_1 x_1, .., a_{n-1} x_{n-1}, phi(y))
          - sum_k phi(a_1 y_1, .., a_{k-1} y_{k-1}, phi(x, y_k), a_k y_{k+1}, ..)

    Slots of ``x`` whose twists are collinear may be restricted to increasing
    indices; ``y`` may be restricted only when all twists are collinear.
    Both hold for untwisted brackets.
    """
    n, d = alg.arity, alg.dim
    groups = twist_classes(alg.twists)
    xs = list(_x_tuples(d, groups, n - 1)) if n > 1 else [()]
    if len(groups) <= 1:
        ys = list(itertools.combinations(range(d), n))
    else:
        ys = list(itertools.product(range(d), repeat=n))
    rep = CheckReport(name)
    if n > d:
        rep.vacuous = True
        rep.notes.append(f"arity {n} exceeds dimension {d}")
    if not ys or alg.bracket.is_zero():
        rep.checked = len(xs) * len(ys)
        return rep
    if jobs > 1 and len(xs) > 1 and not stop_at_first:
        chunks = [xs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_hnj_chunk, [alg] * jobs, chunks, [ys] * jobs,
                                 [False] * jobs, [name] * jobs):
                rep.merge(part)
    else:
        rep.merge(_hnj_chunk(alg, xs, ys, stop_at_first, name))
    return rep.finalize()


def check_fundamental_identity(phi: SkewMap, stop_at_first=False, jobs=1) -> CheckReport:
    """The untwisted identity (all twisting maps the identity)."""
    return check_hom_nambu_jacobi(HomNambuAlgebra.untwisted(phi), stop_at_first, jobs, name="FI")


# -- traces and compatible forms ----------------------------------------------


def check_phi_trace(tau, phi: SkewMap, stop_at_first=False) -> CheckReport:
    """``tau(phi(x_1..x_n)) = 0`` on all increasing basis tuples."""
    tau = as_covector(tau)
    rep = CheckReport("trace", checked=comb(phi.dim, phi.arity))
    for key, val in phi.items():
        t = tau(val)
        if t:
            rep.add(t, x=key)
            if stop_at_first:
                break
    return rep.finalize()


def check_pform_compatible(tau, phi: SkewMap, stop_at_first=False) -> CheckReport:
    """``tau(phi(x_1..x_n), y_1..y_{p-1}) = 0`` on increasing basis tuples."""
    if not isinstance(tau, PForm):
        tau = PForm.from_covector(tau)
    d, p = phi.dim, tau.arity
    rep = CheckReport("pform-compat", checked=comb(d, phi.arity) * comb(d, p - 1))
    ys = list(itertools.combinations(range(d), p - 1))
    for key, val in phi.items():
        sup = support(val)
        for y in ys:
            t = tau._expand([sup] + [[(i, Fraction(1))] for i in y])
            if t:
                rep.add(t, x=key, y=y)
                if stop_at_first:
                    return rep.finalize()
    return rep.finalize()


def check_gji(phi: SkewMap, stop_at_first=False) -> CheckReport:
    """Generalized Jacobi identity, computed as ``i_phi phi == 0``."""
    d, n = phi.dim, phi.arity
    rep = CheckReport("GJI", checked=comb(d, 2 * n - 1))
    if 2 * n - 1 > d:
        rep.vacuous = True
        rep.notes.append(f"{2 * n - 1} alternating arguments in dimension {d}")
        return rep
    for key, val in interior(phi, phi).items():
        rep.add(val, x=key)
        if stop_at_first:
            break
    return rep.finalize()


def check_wedge_hypothesis(tau: PForm, stop_at_first=False) -> CheckReport:
    """``(tau(x_1..x_{p-1}, .) ^ tau) = 0`` for all basis ``x``."""
    if not isinstance(tau, PForm):
        tau = PForm.from_covector(tau)
    d, p = tau.dim, tau.arity
    fixed_sets = list(itertools.combinations(range(d), p - 1))
    rep = CheckReport("wedge-hyp", checked=len(fixed_sets) * comb(d, p + 1))
    if p + 1 > d:
        rep.vacuous = True
        rep.notes.append(f"{p + 1}-forms vanish in dimension {d}")
        return rep
    for fixed in fixed_sets:
        c = contract_pform(tau, [basis_vector(d, i) for i in fixed])
        for key, val in wedge(c, tau).items():
            rep.add(val, fixed=fixed, y=key)
            if stop_at_first:
                return rep.finalize()
    return rep.finalize()


def check_abelian(phi: SkewMap) -> CheckReport:
    rep = CheckReport("abelian", checked=comb(phi.dim, phi.arity))
    for key, val in phi.items():
        rep.add(val, x=key)
    return rep


def check_skew(m) -> CheckReport:
    """Alternating sign rule on every ordered basis tuple.

    Compares each ordered tuple against the tuple with its first two
    entries swapped (antisymmetry) and checks repeats evaluate to zero.
    """
    d, n = m.dim, m.arity
    rep = CheckReport("skew")
    zero = type(m)._zero(d)
    for t in itertools.product(range(d), repeat=n):
        rep.checked += 1
        v = m.eval_basis(t)
        if len(set(t)) < n:
            if v != zero:
                rep.add(v, x=t)
            continue
        for a in range(n - 1):
            s = t[:a] + (t[a + 1], t[a]) + t[a + 2:]
            w = m.eval_basis(s)
            total = type(m)._add(v, w)
            if total != zero and type(m)._nonzero(total):
                rep.add(total, x=t, swapped=a + 1)
    return rep.finalize()
