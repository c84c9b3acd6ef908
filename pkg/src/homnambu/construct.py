"""Construction pipelines: trace induction, reductions, twistings, wedges.

Every pipeline checks its preconditions exactly before building anything;
``verify`` flags only control the (expensive) identity check of the output.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .identities import (
    check_abelian,
    check_fundamental_identity,
    check_gji,
    check_hom_nambu_jacobi,
    check_phi_trace,
    check_pform_compatible,
    check_wedge_hypothesis,
)
from .multilinear import (
    HomNambuAlgebra,
    PForm,
    SkewMap,
    fix_args_pi,
    induce_phi_tau,
    wedge,
)
from .report import CheckReport
from .space import (
    LinearMap,
    Vector,
    as_covector,
    check_compatibility,
    collinear,
    first_outside_kernel,
    is_zero,
    preserves_complement,
    vaxpy,
    vsub,
)


class PreconditionError(ValueError):
    """A construction's hypothesis failed; ``report`` carries the witnesses."""

    def __init__(self, message: str, report: CheckReport | None = None):
        if report is not None and report.violations:
            message = f"{message}\n{report.format_text()}"
        super().__init__(message)
        self.report = report


@dataclass
class InductionRecord:
    source: HomNambuAlgebra
    tau: object
    alpha_n: LinearMap
    result: HomNambuAlgebra
    reports: dict[str, CheckReport] = field(default_factory=dict)

    def summary(self, basis=None) -> list[str]:
        lines = [
            f"induced arity {self.result.arity} from arity {self.source.arity}",
            f"trace coefficients: {', '.join(str(c) for c in as_covector(self.tau).coeffs)}",
        ]
        for rep in self.reports.values():
            lines.extend(rep.format_text(basis).splitlines())
        return lines


def _admissibility_hint(twists, alpha_n, tau):
    """Warn when ``alpha_n`` cannot be admissible next to a C1-type twist."""
    tau = as_covector(tau)
    u = first_outside_kernel(tau)
    if u is None or tau.dim == 1:
        return
    for k, a in enumerate(twists, 1):
        if preserves_complement(a, tau, u) and not (alpha_n.is_zero() or collinear(alpha_n, a)):
            warnings.warn(
                f"alpha_{k} maps the complement of ker(tau) into itself, so the new "
                f"twisting map must be zero or a scalar multiple of alpha_{k}",
                stacklevel=3)
            return


def _require_trace(tau, phi):
    rep = check_phi_trace(tau, phi)
    if not rep.passed:
        raise PreconditionError("trace condition fails: tau does not vanish on the image", rep)
    return rep


def _require_compatible(alphas, tau):
    rep = check_compatibility(alphas, tau)
    if not rep.passed:
        raise PreconditionError("compatibility relations fail", rep)
    return rep


def induce_algebra(alg: HomNambuAlgebra, tau, alpha_n: LinearMap, verify=True,
                   jobs=1) -> InductionRecord:
    """Induce an ``(n+1)``-ary algebra from ``alg``, a trace and a new twist."""
    tau = as_covector(tau)
    reports = {"trace": _require_trace(tau, alg.bracket)}
    alphas = list(alg.twists) + [alpha_n]
    rep = check_compatibility(alphas, tau)
    if not rep.passed:
        _admissibility_hint(alg.twists, alpha_n, tau)
        raise PreconditionError("compatibility relations fail", rep)
    reports["compat"] = rep
    out = HomNambuAlgebra(induce_phi_tau(alg.bracket, tau), tuple(alphas))
    if verify:
        reports["HNJ"] = check_hom_nambu_jacobi(out, jobs=jobs)
    return InductionRecord(alg, tau, alpha_n, out, reports)


def double_induce(alg: HomNambuAlgebra, tau, alpha_n: LinearMap, alpha_next: LinearMap,
                  verify=True, tau2=None) -> InductionRecord:
    """Induce twice with the same trace; the result is always abelian."""
    if tau2 is not None and as_covector(tau2) != as_covector(tau):
        raise ValueError("double_induce reuses one trace; chain two induce_algebra "
                         "calls to use a different second trace")
    first = induce_algebra(alg, tau, alpha_n, verify=False)
    second = induce_algebra(first.result, tau, alpha_next, verify=verify)
    second.source = alg
    second.reports["abelian"] = check_abelian(second.result.bracket)
    return second


def reduce_algebra(alg: HomNambuAlgebra, a_list: Sequence[Vector], verify=False) -> HomNambuAlgebra:
    """Fix the last ``k`` bracket arguments at fixed points of the twists.

    ``a_i`` must be fixed by twist ``n - k - 1 + i`` (1-based); the output
    keeps twists ``1 .. n - k - 1``.
    """
    n, k = alg.arity, len(a_list)
    if k >= n:
        raise ValueError(f"cannot fix {k} arguments of an arity-{n} bracket")
    rep = CheckReport("fixed-point", checked=k)
    for i, a in enumerate(a_list, 1):
        t = alg.twists[n - k - 2 + i]
        dft = vsub(t(a), tuple(a))
        if not is_zero(dft):
            rep.add(dft, i=i, twist=n - k - 1 + i)
    if not rep.passed:
        raise PreconditionError("fixed vectors are not fixed by their twists", rep)
    out = HomNambuAlgebra(fix_args_pi(alg.bracket, a_list), alg.twists[: n - k - 1])
    if verify:
        hnj = check_hom_nambu_jacobi(out)
        if not hnj.passed:
            raise AssertionError(f"reduced algebra fails the identity\n{hnj.format_text()}")
    return out


# -- twistings -----------------------------------------------------------------


def updown_formula(phi: SkewMap, tau, a: Vector) -> SkewMap:
    """Closed form of ``pi_a(phi_tau)`` evaluated directly on basis tuples.

    ``sum_k (-1)^k tau(x_k) phi(.. ^x_k .., a) + (-1)^(n+1) tau(a) phi(x)``
    """
    tau = as_covector(tau)
    base = downup_formula(phi, tau, a)
    n = phi.arity
    coeff = tau(a) if (n + 1) % 2 == 0 else -tau(a)
    return base + phi.scale(coeff)


def downup_formula(phi: SkewMap, tau, a: Vector) -> SkewMap:
    """Closed form of ``(pi_a phi)_tau``: ``sum_k (-1)^k tau(x_k) phi(.. ^x_k .., a)``."""
    tau = as_covector(tau)
    d, n = phi.dim, phi.arity
    e = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
    table = {}
    for key in itertools.combinations(range(d), n):
        acc = [Fraction(0)] * d
        for k in range(1, n + 1):
            t = tau.coeffs[key[k - 1]]
            if not t:
                continue
            rest = [e[i] for pos, i in enumerate(key, 1) if pos != k]
            val = phi.eval_vectors(rest + [tuple(a)])
            vaxpy(acc, t if k % 2 == 0 else -t, val)
        table[key] = tuple(acc)
    return SkewMap(d, n, table)


def twist_updown(alg: HomNambuAlgebra, tau, alpha_n: LinearMap, a: Vector) -> HomNambuAlgebra:
    """Induce with ``tau, alpha_n`` then fix the last argument at ``a``."""
    tau = as_covector(tau)
    _require_trace(tau, alg.bracket)
    _require_compatible(list(alg.twists) + [alpha_n], tau)
    dft = vsub(alpha_n(a), tuple(a))
    if not is_zero(dft):
        rep = CheckReport("fixed-point", checked=1)
        rep.add(dft, twist=alg.arity)
        raise PreconditionError("a is not a fixed point of alpha_n", rep)
    bracket = fix_args_pi(induce_phi_tau(alg.bracket, tau), [a])
    if bracket != updown_formula(alg.bracket, tau, a):
        raise AssertionError("closed up-down formula disagrees with the composition")
    return HomNambuAlgebra(bracket, alg.twists)


def twist_downup(alg: HomNambuAlgebra, tau, a: Vector) -> HomNambuAlgebra:
    """Fix the last argument at ``a`` then induce with ``tau``, reusing ``alpha_{n-1}``."""
    tau = as_covector(tau)
    n = alg.arity
    if n < 2:
        raise ValueError("twist_downup needs arity at least 2")
    last = alg.twists[n - 2]
    dft = vsub(last(a), tuple(a))
    if not is_zero(dft):
        rep = CheckReport("fixed-point", checked=1)
        rep.add(dft, twist=n - 1)
        raise PreconditionError("a is not a fixed point of alpha_{n-1}", rep)
    reduced = fix_args_pi(alg.bracket, [a])
    _require_trace(tau, reduced)
    _require_compatible(alg.twists, tau)
    bracket = induce_phi_tau(reduced, tau)
    if bracket != downup_formula(alg.bracket, tau, a):
        raise AssertionError("closed down-up formula disagrees with the composition")
    return HomNambuAlgebra(bracket, alg.twists)


def commutator_defect(alg: HomNambuAlgebra, tau, a: Vector, alpha_n: LinearMap | None = None) -> SkewMap:
    """``[i_tau, pi_a] phi = (pi_a phi)_tau - pi_a(phi_tau)``, asserted to be ``(-1)^n tau(a) phi``.

    Both twisting paths must be admissible; ``alpha_n`` defaults to the
    last existing twist.
    """
    tau = as_covector(tau)
    if alpha_n is None:
        alpha_n = alg.twists[-1]
    up = twist_updown(alg, tau, alpha_n, a)
    down = twist_downup(alg, tau, a)
    diff = down.bracket - up.bracket
    n = alg.arity
    expected = alg.bracket.scale(tau(a) if n % 2 == 0 else -tau(a))
    if diff != expected:
        raise AssertionError("commutator differs from (-1)^n tau(a) phi")
    return diff


# -- higher order -------------------------------------------------------------


def wedge_construct(phi: SkewMap, tau: PForm, mode: str = "nambu", verify=True):
    """Build ``tau ^ phi`` after checking the hypotheses of ``mode``.

    ``mode="gji"``: ``phi`` satisfies the generalized Jacobi identity and
    ``tau`` is phi-compatible; the output satisfies it too.
    ``mode="nambu"``: ``phi`` is n-Lie, ``tau`` phi-compatible and
    ``(tau(x_1..x_{p-1}, .) ^ tau) = 0``; the output is ``(n+p)``-Lie.
    Returns ``(bracket, report)`` where the report checks the output.
    """
    if not isinstance(tau, PForm):
        tau = PForm.from_covector(tau)
    if mode == "gji":
        pre = [check_gji(phi)]
    elif mode == "nambu":
        pre = [check_fundamental_identity(phi)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pre.append(check_pform_compatible(tau, phi))
    if mode == "nambu":
        pre.append(check_wedge_hypothesis(tau))
    for rep in pre:
        if not rep.passed:
            raise PreconditionError(f"{rep.name} precondition fails", rep)
    out = wedge(tau, phi)
    if not verify:
        return out, CheckReport("unverified")
    rep = check_gji(out) if mode == "gji" else check_fundamental_identity(out)
    return out, rep
