"""Finite-dimensional spaces with a fixed basis, linear maps and functionals.

Vectors are plain tuples of scalars.  Also hosts the compatible-tuple
machinery: the two relations a trace and a family of twisting maps must
satisfy before a bracket can be induced, and the classification of
compatible tuples by how the maps move the kernel of the trace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .report import CheckReport
from .scalar import InexactDivision, Poly, try_divide

Vector = tuple


class DimensionError(ValueError):
    pass


class IncompatibleTuple(ValueError):
    def __init__(self, report: CheckReport):
        super().__init__(f"tuple is not compatible ({len(report.violations)} violations)")
        self.report = report


@dataclass(frozen=True)
class Space:
    """A vector space with an ordered, named basis."""

    basis: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("a space needs at least one basis vector")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"duplicate basis names in {self.basis}")

    @classmethod
    def standard(cls, dim: int, prefix: str = "x") -> "Space":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def zero(self) -> Vector:
        return (Fraction(0),) * self.dim

    def e(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def vector(self, coeffs: dict) -> Vector:
        """Vector from a ``{basis name: scalar}`` mapping."""
        v = [Fraction(0)] * self.dim
        for name, c in coeffs.items():
            v[self.basis.index(name)] = c
        return tuple(v)


# -- vector helpers --------------------------------------------------------


def zero_vector(d: int) -> Vector:
    return (Fraction(0),) * d


def basis_vector(d: int, i: int) -> Vector:
    if not 0 <= i < d:
        raise IndexError(f"basis index {i} out of range for dimension {d}")
    return tuple(Fraction(int(k == i)) for k in range(d))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v: Vector) -> Vector:
    return tuple(s * a for a in v)


def vaxpy(acc: list, s, v: Vector) -> None:
    """In place ``acc += s * v``."""
    for k, a in enumerate(v):
        if a:
            acc[k] = acc[k] + s * a


def is_zero(v) -> bool:
    return not any(v)


def support(v: Vector) -> list[tuple[int, object]]:
    return [(i, c) for i, c in enumerate(v) if c]


# -- maps ------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMap:
    """Endomorphism stored by columns: ``cols[j]`` is the image of basis ``j``."""

    cols: tuple[Vector, ...]

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.cols)
        object.__setattr__(self, "cols", cols)
        d = len(cols)
        if any(len(c) != d for c in cols):
            raise DimensionError("linear map must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinearMap":
        d = len(rows)
        return cls(tuple(tuple(rows[i][j] for i in range(d)) for j in range(d)))

    @classmethod
    def identity(cls, d: int) -> "LinearMap":
        return cls(tuple(basis_vector(d, j) for j in range(d)))

    @classmethod
    def zero(cls, d: int) -> "LinearMap":
        return cls(tuple(zero_vector(d) for _ in range(d)))

    @classmethod
    def constant(cls, d: int, image: Vector) -> "LinearMap":
        """The map sending every basis vector to ``image``."""
        return cls(tuple(tuple(image) for _ in range(d)))

    @property
    def dim(self) -> int:
        return len(self.cols)

    @property
    def rows(self) -> tuple[tuple, ...]:
        d = self.dim
        return tuple(tuple(self.cols[j][i] for j in range(d)) for i in range(d))

    def __call__(self, v: Vector) -> Vector:
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} for map of dimension {self.dim}")
        acc = [Fraction(0)] * self.dim
        for j, c in enumerate(v):
            if c:
                vaxpy(acc, c, self.cols[j])
        return tuple(acc)

    def scale(self, s) -> "LinearMap":
        return LinearMap(tuple(vscale(s, c) for c in self.cols))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(tuple(vadd(a, b) for a, b in zip(self.cols, other.cols)))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(tuple(vsub(a, b) for a, b in zip(self.cols, other.cols)))

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.cols)

    def fixes(self, v: Vector) -> bool:
        return self(v) == tuple(v)


@dataclass(frozen=True)
class TraceFunctional:
    """Linear functional ``x -> sum(coeffs[i] * x[i])``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, v: Vector):
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} for functional of dimension {self.dim}")
        total = Fraction(0)
        for a, b in zip(self.coeffs, v):
            if a and b:
                total = total + a * b
        return total

    def scale(self, s) -> "TraceFunctional":
        return TraceFunctional(tuple(s * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return is_zero(self.coeffs)


def as_covector(tau) -> TraceFunctional:
    """Accept a :class:`TraceFunctional` or anything with a ``covector()``."""
    if isinstance(tau, TraceFunctional):
        return tau
    if hasattr(tau, "covector"):
        return tau.covector()
    return TraceFunctional(tuple(tau))


# -- kernel ----------------------------------------------------------------


def kernel_basis(tau) -> list[Vector]:
    """Basis of ``ker tau``, pivoting on the last nonzero coefficient.

    Only constant (rational) coefficients are supported.
    """
    tau = as_covector(tau)
    if any(isinstance(c, Poly) for c in tau.coeffs):
        raise TypeError("kernel_basis needs constant coefficients")
    d = tau.dim
    nz = [i for i, c in enumerate(tau.coeffs) if c]
    if not nz:
        return [basis_vector(d, i) for i in range(d)]
    p = nz[-1]
    out = []
    for i in range(d):
        if i == p:
            continue
        v = [Fraction(0)] * d
        v[i] = Fraction(1)
        v[p] = -Fraction(tau.coeffs[i]) / Fraction(tau.coeffs[p])
        out.append(tuple(v))
    return out


# -- compatible tuples ------------------------------------------------------


def _check_dims(alphas, tau):
    d = tau.dim
    for k, a in enumerate(alphas, 1):
        if a.dim != d:
            raise DimensionError(f"alpha_{k} has dimension {a.dim}, trace has {d}")


def check_compatibility(alphas: Sequence[LinearMap], tau, stop_at_first=False) -> CheckReport:
    """Check both compatibility relations on all ordered basis pairs.

    relation 1: tau(a_i x) tau(y) = tau(x) tau(a_i y)
    relation 2: tau(a_i x) a_j(y) = a_i(x) tau(a_j y)
    """
    tau = as_covector(tau)
    _check_dims(alphas, tau)
    d = tau.dim
    rep = CheckReport("compat")
    # tau(alpha_i(e_x)) for every i, x
    ta = [[tau(a.cols[x]) for x in range(d)] for a in alphas]
    t = tau.coeffs
    for i in range(len(alphas)):
        for x in range(d):
            for y in range(d):
                rep.checked += 1
                defect = ta[i][x] * t[y] - t[x] * ta[i][y]
                if defect:
                    rep.add(defect, relation=1, i=i + 1, x=(x,), y=(y,))
                    if stop_at_first:
                        return rep.finalize()
    for i, ai in enumerate(alphas):
        for j, aj in enumerate(alphas):
            for x in range(d):
                for y in range(d):
                    rep.checked += 1
                    defect = vsub(vscale(ta[i][x], aj.cols[y]), vscale(ta[j][y], ai.cols[x]))
                    if not is_zero(defect):
                        rep.add(defect, relation=2, i=i + 1, j=j + 1, x=(x,), y=(y,))
                        if stop_at_first:
                            return rep.finalize()
    return rep.finalize()


class TupleClass(enum.Enum):
    DEGENERATE_KERNEL_V = "Degenerate-kernel-V"
    DEGENERATE_KERNEL_0 = "Degenerate-kernel-0"
    C1 = "C1"
    C2 = "C2"
    FORCED_ZERO_MAPS = "ForcedZeroMaps"
    INCOMPATIBLE = "Incompatible"


@dataclass(frozen=True)
class TupleClassification:
    kind: TupleClass
    witness: dict = field(default_factory=dict)

    def __str__(self):
        if not self.witness:
            return self.kind.value
        extra = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.kind.value} ({extra})"


def first_outside_kernel(tau) -> int | None:
    """Index of the first basis vector with ``tau(e_u) != 0``."""
    tau = as_covector(tau)
    for u, c in enumerate(tau.coeffs):
        if c:
            return u
    return None


def preserves_complement(alpha: LinearMap, tau, u: int | None = None) -> bool:
    """Whether ``alpha`` maps ``V \\ ker tau`` into itself.

    A single witness ``u`` outside the kernel decides this for compatible
    tuples: either ``tau(alpha(u)) != 0`` or ``alpha(V)`` lies in the kernel.
    """
    tau = as_covector(tau)
    if u is None:
        u = first_outside_kernel(tau)
    return bool(tau(alpha.cols[u]))


def classify_tuple(alphas: Sequence[LinearMap], tau) -> TupleClassification:
    """Classify a compatible tuple; raises :class:`IncompatibleTuple` otherwise."""
    tau = as_covector(tau)
    rep = check_compatibility(alphas, tau)
    if not rep.passed:
        raise IncompatibleTuple(rep)
    u = first_outside_kernel(tau)
    if u is None:
        return TupleClassification(TupleClass.DEGENERATE_KERNEL_V)
    if tau.dim == 1:
        return TupleClassification(TupleClass.DEGENERATE_KERNEL_0)
    into_u = [k for k, a in enumerate(alphas, 1) if preserves_complement(a, tau, u)]
    into_k = [k for k in range(1, len(alphas) + 1) if k not in into_u]
    if not into_k:
        return TupleClassification(TupleClass.C1, {"u": u})
    if not into_u:
        return TupleClassification(TupleClass.C2, {"u": u})
    return TupleClassification(TupleClass.FORCED_ZERO_MAPS,
                               {"u": u, "preserving": tuple(into_u), "zero": tuple(into_k)})


def proportionality(alpha_i: LinearMap, alpha_j: LinearMap, tau):
    """The scalar ``lam`` with ``alpha_i = lam * alpha_j`` for a C1 pair."""
    tau = as_covector(tau)
    cls = classify_tuple([alpha_i, alpha_j], tau)
    if cls.kind is not TupleClass.C1:
        raise ValueError(f"proportionality needs a C1 tuple, got {cls.kind.value}")
    lam = None
    for u, c in enumerate(tau.coeffs):
        if not c:
            continue
        q = try_divide(tau(alpha_i.cols[u]), tau(alpha_j.cols[u]))
        if lam is None:
            lam = q
        elif q != lam:
            raise ArithmeticError(f"ratio depends on witness: {lam} vs {q} at u={u}")
    if alpha_i != alpha_j.scale(lam):
        raise ArithmeticError("alpha_i is not lam * alpha_j entrywise")
    return lam


def collinear(a: LinearMap, b: LinearMap) -> bool:
    """Whether one map is a scalar multiple of the other (zero counts)."""
    if a.is_zero() or b.is_zero():
        return True
    pivot = next((j, i) for j, col in enumerate(b.cols) for i, c in enumerate(col) if c)
    j, i = pivot
    try:
        lam = try_divide(a.cols[j][i], b.cols[j][i])
    except InexactDivision:
        return False
    return a == b.scale(lam)
