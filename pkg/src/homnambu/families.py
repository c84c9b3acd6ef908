"""Built-in algebras: the worked 4-dimensional example and seeded random families.

All randomness goes through :class:`Lcg`, a fixed 64-bit linear
congruential generator, so a ``(family, seed)`` pair always produces the
same instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .identities import check_fundamental_identity, check_hom_nambu_jacobi
from .multilinear import HomNambuAlgebra, SkewMap, induce_phi_tau
from .report import CheckReport
from .scalar import ParameterContext
from .space import LinearMap, TraceFunctional, as_covector, kernel_basis, vaxpy

_MASK = (1 << 64) - 1


class Lcg:
    """``state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)``.

    Draws use the high 31 bits of the new state.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state * self.MULTIPLIER + self.INCREMENT) & _MASK
        return self.state

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` (modulo bias is irrelevant here)."""
        return lo + (self.next_u64() >> 33) % (hi - lo + 1)

    def chance(self, percent: int) -> bool:
        return self.randint(0, 99) < percent

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def nonzero(self, bound: int) -> int:
        v = self.randint(1, bound)
        return v if self.chance(50) else -v


@dataclass(frozen=True)
class ExampleSpec:
    family: str
    bindings: dict = field(default_factory=dict)
    seed: int = 0


# -- the worked example ---------------------------------------------------------


def worked_b_matrix(b, c):
    """Coefficients of ``x4`` in ``[x_i, x_j]`` for ``i < j`` (0-based keys)."""
    return {
        (0, 1): b, (0, 2): b, (0, 3): b + c,
        (1, 2): Fraction(0), (1, 3): c,
        (2, 3): c,
    }


def paper_example(b, c):
    """The 4-dimensional Hom-Lie algebra ``[x_i, x_j] = x3 + b_ij x4``.

    Returns ``(algebra, tau, alpha_2)`` with twist ``alpha_1(x_i) = x3``,
    trace ``tau = (1, 1, 0, 0)`` and ``alpha_2(x_i) = x4``.
    """
    one, zero = Fraction(1), Fraction(0)
    table = {k: (zero, zero, one, v) for k, v in worked_b_matrix(b, c).items()}
    phi = SkewMap(4, 2, table)
    alpha1 = LinearMap.constant(4, (zero, zero, one, zero))
    alpha2 = LinearMap.constant(4, (zero, zero, zero, one))
    tau = TraceFunctional((one, one, zero, zero))
    return HomNambuAlgebra(phi, (alpha1,)), tau, alpha2


def paper_example_symbolic():
    ctx = ParameterContext(("b", "c", "delta1", "delta2"))
    return ctx, paper_example(ctx.param("b"), ctx.param("c"))


def second_trace(delta1, delta2) -> TraceFunctional:
    """``rho = (delta1, delta2, 0, 0)`` used for the second induction step."""
    return TraceFunctional((delta1, delta2, Fraction(0), Fraction(0)))


def reference_step1(b, c) -> SkewMap:
    """Ternary table of the worked example as stored for comparison.

    Differs from the computed table (see :func:`table_divergence`).
    """
    z, one = Fraction(0), Fraction(1)
    return SkewMap(4, 3, {
        (0, 1, 2): (z, z, z, -b),
        (0, 1, 3): (z, z, z, -c),
        (0, 2, 3): (z, z, one, c),
        (1, 2, 3): (z, z, one, c),
    })


def reference_step2(delta1, delta2, c) -> SkewMap:
    z, one = Fraction(0), Fraction(1)
    k = delta2 - delta1
    return SkewMap(4, 4, {(0, 1, 2, 3): (z, z, k * one, k * c)})


def table_divergence(computed: SkewMap, reference: SkewMap, name="divergence") -> CheckReport:
    """Entrywise ``computed - reference`` on every stored key of either table."""
    rep = CheckReport(name, checked=len(set(computed.keys()) | set(reference.keys())))
    for key, val in (computed - reference).items():
        rep.add(val, x=key)
    return rep.finalize()


# -- compatible tuples -----------------------------------------------------------


def rank_one_c1(tau, w, mus: Sequence) -> list[LinearMap]:
    """Twists ``alpha_i(x) = mu_i * tau(x) * w`` (class C1 when ``tau(w) != 0``)."""
    tau = as_covector(tau)
    if not tau(w):
        raise ValueError("tau(w) must be nonzero")
    if any(not m for m in mus):
        raise ValueError("all mu_i must be nonzero")
    return [LinearMap(tuple(tuple(m * t * wi for wi in w) for t in tau.coeffs)) for m in mus]


def _integral_kernel(tau) -> list[tuple]:
    """Kernel basis scaled to integer entries."""
    out = []
    for v in kernel_basis(tau):
        den = 1
        for c in v:
            den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        out.append(tuple(Fraction(c) * den for c in v))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def random_kernel_vector(rng: Lcg, kernel, d, bound=2, density=60):
    acc = [Fraction(0)] * d
    for k in kernel:
        if rng.chance(density):
            vaxpy(acc, Fraction(rng.randint(-bound, bound)), k)
    return tuple(acc)


def random_c2_tuple(tau, seed: int, count: int = 1, rng: Lcg | None = None,
                    density: int = 60) -> list[LinearMap]:
    """Random maps whose columns lie in ``ker tau``."""
    tau = as_covector(tau)
    rng = rng or Lcg(seed)
    kernel = _integral_kernel(tau)
    d = tau.dim
    return [LinearMap(tuple(random_kernel_vector(rng, kernel, d, density=density) for _ in range(d)))
            for _ in range(count)]


def random_covector(rng: Lcg, d: int, bound=2) -> TraceFunctional:
    """A nonzero integer covector."""
    while True:
        c = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d))
        if any(c):
            return TraceFunctional(c)


def random_skew(rng: Lcg, d: int, n: int, values, density=40) -> SkewMap:
    """Sparse random table; ``values()`` draws each stored vector."""
    table = {}
    for key in itertools.combinations(range(d), n):
        if rng.chance(density):
            table[key] = values()
    return SkewMap(d, n, table)


@dataclass
class InductionInstance:
    algebra: HomNambuAlgebra
    tau: TraceFunctional
    alpha_n: LinearMap
    family: str


def random_induction_instance(family: str, d: int, n: int, seed: int,
                              attempts: int = 400) -> InductionInstance:
    """A random input satisfying every hypothesis of the induction construction.

    ``family`` is ``"c1"`` (rank-one twists along a vector outside the
    kernel) or ``"c2"`` (twists with image in the kernel).  The bracket is a
    sparse random table with values in ``ker tau``, filtered until the
    ``n``-ary identity holds and the induced bracket is nonzero.
    """
    rng = Lcg(seed)
    for _ in range(attempts):
        tau = random_covector(rng, d)
        kernel = _integral_kernel(tau)
        if family == "c1":
            while True:
                w = tuple(Fraction(rng.randint(-2, 2)) for _ in range(d))
                if tau(w):
                    break
            alphas = rank_one_c1(tau, w, [rng.nonzero(3) for _ in range(n)])
        elif family == "c2":
            density = rng.choice([30, 60])
            if rng.chance(50):
                (base,) = random_c2_tuple(tau, 0, 1, rng=rng, density=density)
                alphas = [base.scale(Fraction(rng.nonzero(2))) for _ in range(n)]
            else:
                alphas = random_c2_tuple(tau, 0, n, rng=rng, density=density)
        else:
            raise ValueError(f"unknown family {family!r}")
        density = rng.choice([25, 40, 60])
        phi = random_skew(rng, d, n, lambda: random_kernel_vector(rng, kernel, d), density)
        if induce_phi_tau(phi, tau).is_zero():
            continue
        alg = HomNambuAlgebra(phi, tuple(alphas[:-1]))
        if check_hom_nambu_jacobi(alg, stop_at_first=True).passed:
            return InductionInstance(alg, tau, alphas[-1], family)
    raise RuntimeError(f"no {family} instance found in {attempts} attempts (d={d}, n={n}, seed={seed})")


# -- n-Lie algebras -----------------------------------------------------------------


def random_nlie(dim: int, arity: int, seed: int, attempts: int = 500,
                entries: tuple[int, int] = (1, 3)) -> SkewMap | None:
    """First sparse random table passing the fundamental identity, else ``None``."""
    rng = Lcg(seed)
    keys = list(itertools.combinations(range(dim), arity))
    if not keys:
        return None
    for _ in range(attempts):
        count = rng.randint(*entries)
        table = {}
        for _ in range(count):
            key = rng.choice(keys)
            vec = [Fraction(0)] * dim
            for _ in range(rng.randint(1, 2)):
                vec[rng.randint(0, dim - 1)] = Fraction(rng.nonzero(2))
            table[key] = tuple(vec)
        phi = SkewMap(dim, arity, table)
        if not phi.is_zero() and check_fundamental_identity(phi, stop_at_first=True).passed:
            return phi
    return None


def simple_nlie(arity: int, signs: Sequence[int] | None = None) -> SkewMap:
    """``[e_1, .., ^e_i, .., e_{n+1}] = s_i e_i`` on an ``(n+1)``-dimensional space."""
    d = arity + 1
    signs = signs or [1] * d
    table = {}
    for i in range(d):
        key = tuple(j for j in range(d) if j != i)
        val = [Fraction(0)] * d
        val[i] = Fraction(signs[i])
        table[key] = tuple(val)
    return SkewMap(d, arity, table)


def image_subspace_nlie(d: int, p: int, seed: int) -> tuple[SkewMap, list[tuple]]:
    """An n-Lie bracket whose image lies in ``span(x_{p+1}, .., x_d)``.

    Returns the bracket and that spanning set; used for the determinant
    form construction.
    """
    rng = Lcg(seed)
    u_basis = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(p, d)]
    for _ in range(1000):
        n = rng.randint(2, 3)
        keys = list(itertools.combinations(range(d), n))
        table = {}
        for _ in range(rng.randint(1, 3)):
            vec = [Fraction(0)] * d
            vec[rng.randint(p, d - 1)] = Fraction(rng.nonzero(2))
            table[rng.choice(keys)] = tuple(vec)
        phi = SkewMap(d, n, table)
        if check_fundamental_identity(phi, stop_at_first=True).passed:
            return phi, u_basis
    raise RuntimeError("no bracket found")
