"""Skew-symmetric multilinear maps and forms in canonical storage.

A map of arity ``n`` is a dict from strictly increasing ``n``-tuples of
0-based basis indices to its nonzero value on those basis vectors.  Every
other argument tuple is reached through the alternating sign rule, so skew
symmetry holds by construction.

Symmetrized constructions (wedge, interior product) are summed over
shuffles (ordered splits of an increasing tuple) rather than over the full
symmetric group; the ``1/(n! p!)`` normalizations cancel exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .space import (
    DimensionError,
    LinearMap,
    TraceFunctional,
    Vector,
    as_covector,
    is_zero,
    support,
    vaxpy,
    zero_vector,
)

__all__ = [
    "SkewMap",
    "PForm",
    "HomNambuAlgebra",
    "sort_sign",
    "shuffle_sign",
    "induce_phi_tau",
    "wedge",
    "interior",
    "contract_pform",
    "fix_args_pi",
    "det_pform",
    "compose_covector",
    "determinant",
]


def sort_sign(idx: Sequence[int]):
    """Return ``(sorted_tuple, sign)``; sign is 0 when an index repeats."""
    idx = list(idx)
    sign = 1
    # insertion sort counting transpositions; tuples are short
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and idx[j - 1] == idx[j]:
            return None, 0
    return tuple(idx), sign


def shuffle_sign(first: Sequence[int], rest: Sequence[int]) -> int:
    """Sign of the permutation putting increasing ``first`` before ``rest``.

    Both are increasing and disjoint; the count of inversions is the number
    of pairs ``(a, b)`` with ``a`` in ``first``, ``b`` in ``rest``, ``a > b``.
    """
    inv = 0
    j = 0
    for a in first:
        while j < len(rest) and rest[j] < a:
            j += 1
        inv += j
    return -1 if inv & 1 else 1


class _Alternating:
    """Shared canonical-table logic for :class:`SkewMap` and :class:`PForm`."""

    __slots__ = ("dim", "arity", "table")

    def __init__(self, dim: int, arity: int, table: dict | None = None):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.dim = dim
        self.arity = arity
        self.table = {}
        for key, val in (table or {}).items():
            key = tuple(key)
            if len(key) != arity:
                raise ValueError(f"key {key} does not have arity {arity}")
            if any(not 0 <= i < dim for i in key):
                raise IndexError(f"key {key} out of range for dimension {dim}")
            if any(key[k] >= key[k + 1] for k in range(arity - 1)):
                raise ValueError(f"key {key} is not strictly increasing")
            self._check_value(val)
            if self._nonzero(val):
                self.table[key] = val

    @classmethod
    def from_entries(cls, dim: int, arity: int, entries: Iterable):
        """Build from ``(index_tuple, value)`` pairs in any order.

        Keys are canonicalized with the alternating sign; entries on the
        same index set are summed and repeated indices are dropped.
        """
        acc: dict = {}
        zero = cls._zero(dim)
        for key, val in entries:
            skey, sign = sort_sign(key)
            if not sign:
                continue
            acc[skey] = cls._add(acc.get(skey, zero), cls._scale(sign, val))
        return cls(dim, arity, acc)

    @classmethod
    def zero_map(cls, dim: int, arity: int):
        return cls(dim, arity, {})

    # value-kind hooks, overridden below
    @staticmethod
    def _zero(dim):
        raise NotImplementedError

    @staticmethod
    def _add(a, b):
        raise NotImplementedError

    @staticmethod
    def _scale(s, a):
        raise NotImplementedError

    @staticmethod
    def _nonzero(a) -> bool:
        raise NotImplementedError

    def _check_value(self, val):
        pass

    def _same(self, other):
        return type(self) is type(other) and self.dim == other.dim and self.arity == other.arity

    # -- evaluation -----------------------------------------------------

    def eval_basis(self, indices: Sequence[int]):
        """Value on basis vectors ``e_{indices[0]}, ...`` (any order)."""
        if len(indices) != self.arity:
            raise ValueError(f"expected {self.arity} indices, got {len(indices)}")
        if any(not 0 <= i < self.dim for i in indices):
            raise IndexError(f"indices {tuple(indices)} out of range")
        key, sign = sort_sign(indices)
        if not sign:
            return self._zero(self.dim)
        val = self.table.get(key)
        if val is None:
            return self._zero(self.dim)
        return val if sign == 1 else self._scale(-1, val)

    def eval_vectors(self, args: Sequence[Vector]):
        """Full multilinear expansion over the basis supports of ``args``."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        for a in args:
            if len(a) != self.dim:
                raise DimensionError(f"argument of length {len(a)} in dimension {self.dim}")
        return self._expand([support(a) for a in args])

    def _expand(self, supports):
        total = self._zero(self.dim)
        if not self.table:
            return total
        acc = None
        for combo in itertools.product(*supports):
            idx = [i for i, _ in combo]
            key, sign = sort_sign(idx)
            if not sign:
                continue
            val = self.table.get(key)
            if val is None:
                continue
            c = sign
            for _, s in combo:
                c = c * s
            acc = self._accumulate(acc, c, val)
        return total if acc is None else self._finish(acc)

    # -- linear structure -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, _Alternating):
            return NotImplemented
        return self._same(other) and self.table == other.table

    def __hash__(self):
        return hash((type(self).__name__, self.dim, self.arity, frozenset(self.table)))

    def _combine(self, other, sign):
        if not self._same(other):
            raise DimensionError("maps differ in kind, dimension or arity")
        out = dict(self.table)
        zero = self._zero(self.dim)
        for k, v in other.table.items():
            out[k] = self._add(out.get(k, zero), self._scale(sign, v))
        return type(self)(self.dim, self.arity, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s):
        return type(self)(self.dim, self.arity,
                          {k: self._scale(s, v) for k, v in self.table.items()})

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.table

    def __len__(self):
        return len(self.table)

    def keys(self):
        return sorted(self.table)

    def items(self):
        return sorted(self.table.items())


class SkewMap(_Alternating):
    """Skew-symmetric ``n``-linear map ``V^n -> V``."""

    __slots__ = ()

    @staticmethod
    def _zero(dim):
        return zero_vector(dim)

    @staticmethod
    def _add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def _scale(s, a):
        return tuple(s * x for x in a)

    @staticmethod
    def _nonzero(a) -> bool:
        return not is_zero(a)

    def _check_value(self, val):
        if len(val) != self.dim:
            raise DimensionError(f"value of length {len(val)} in dimension {self.dim}")

    def _accumulate(self, acc, c, val):
        if acc is None:
            acc = [Fraction(0)] * self.dim
        vaxpy(acc, c, val)
        return acc

    @staticmethod
    def _finish(acc):
        return tuple(acc)

    def __init__(self, dim: int, arity: int, table: dict | None = None):
        super().__init__(dim, arity, {k: tuple(v) for k, v in (table or {}).items()})

    def __repr__(self):
        return f"SkewMap(dim={self.dim}, arity={self.arity}, table={dict(self.items())!r})"


class PForm(_Alternating):
    """Skew-symmetric ``p``-linear form ``V^p -> K``."""

    __slots__ = ()

    @staticmethod
    def _zero(dim):
        return Fraction(0)

    @staticmethod
    def _add(a, b):
        return a + b

    @staticmethod
    def _scale(s, a):
        return s * a

    @staticmethod
    def _nonzero(a) -> bool:
        return bool(a)

    def _accumulate(self, acc, c, val):
        return c * val if acc is None else acc + c * val

    @staticmethod
    def _finish(acc):
        return acc

    @classmethod
    def from_covector(cls, tau) -> "PForm":
        tau = as_covector(tau)
        return cls(tau.dim, 1, {(i,): c for i, c in enumerate(tau.coeffs)})

    def covector(self) -> TraceFunctional:
        if self.arity != 1:
            raise ValueError(f"covector() needs a 1-form, got arity {self.arity}")
        return TraceFunctional(tuple(self.table.get((i,), Fraction(0)) for i in range(self.dim)))

    def __repr__(self):
        return f"PForm(dim={self.dim}, arity={self.arity}, table={dict(self.items())!r})"


def _as_pform(tau) -> PForm:
    if isinstance(tau, PForm):
        return tau
    return PForm.from_covector(tau)


@dataclass(frozen=True)
class HomNambuAlgebra:
    """A skew bracket of arity ``n`` with ``n - 1`` twisting maps."""

    bracket: SkewMap
    twists: tuple[LinearMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        n = self.bracket.arity
        if len(self.twists) != max(n - 1, 0):
            raise ValueError(f"arity {n} bracket needs {n - 1} twisting maps, got {len(self.twists)}")
        for k, a in enumerate(self.twists, 1):
            if a.dim != self.bracket.dim:
                raise DimensionError(f"twist {k} has dimension {a.dim}, bracket has {self.bracket.dim}")

    @property
    def arity(self) -> int:
        return self.bracket.arity

    @property
    def dim(self) -> int:
        return self.bracket.dim

    @classmethod
    def untwisted(cls, bracket: SkewMap) -> "HomNambuAlgebra":
        """An ``n``-Lie candidate: all twisting maps are the identity."""
        return cls(bracket, tuple(LinearMap.identity(bracket.dim) for _ in range(bracket.arity - 1)))


# -- constructions ----------------------------------------------------------


def compose_covector(tau, phi: SkewMap) -> PForm:
    """The form ``tau o phi``."""
    tau = as_covector(tau)
    if tau.dim != phi.dim:
        raise DimensionError("trace and map dimensions differ")
    return PForm(phi.dim, phi.arity, {k: tau(v) for k, v in phi.table.items()})


def induce_phi_tau(phi: SkewMap, tau) -> SkewMap:
    """The trace-induced bracket of arity ``n + 1``.

    ``phi_tau(x_1..x_{n+1}) = sum_k (-1)^k tau(x_k) phi(x_1..^x_k..x_{n+1})``
    with ``k`` counted from 1.
    """
    tau = as_covector(tau)
    if tau.dim != phi.dim:
        raise DimensionError("trace and map dimensions differ")
    d, n = phi.dim, phi.arity
    acc: dict = {}
    for key, val in phi.table.items():
        for m, t in enumerate(tau.coeffs):
            if not t or m in key:
                continue
            pos = sum(1 for i in key if i < m)  # 0-based slot of m in the union
            new = key[:pos] + (m,) + key[pos:]
            coeff = t if pos % 2 else -t  # (-1)^(pos+1)
            row = acc.setdefault(new, [Fraction(0)] * d)
            vaxpy(row, coeff, val)
    return SkewMap(d, n + 1, {k: tuple(v) for k, v in acc.items()})


def wedge(tau: PForm, other):
    """Wedge of a ``p``-form with a form or vector-valued form.

    On an increasing tuple this is the sum over ``p``-subsets ``S`` of
    ``sign(S, rest) * tau(S) * other(rest)``, i.e. the normalized signed
    symmetrization.  For ``p = 1`` and a vector-valued ``other`` the result
    is ``-induce_phi_tau(other, tau)``.
    """
    tau = _as_pform(tau)
    if tau.dim != other.dim:
        raise DimensionError("wedge factors have different dimensions")
    cls = type(other)
    d = tau.dim
    acc: dict = {}
    zero = cls._zero(d)
    for s_key, t in tau.table.items():
        s_set = set(s_key)
        for c_key, val in other.table.items():
            if s_set.intersection(c_key):
                continue
            sign = shuffle_sign(s_key, c_key)
            key = tuple(sorted(s_key + c_key))
            acc[key] = cls._add(acc.get(key, zero), cls._scale(sign * t, val))
    return cls(d, tau.arity + other.arity, acc)


def interior(phi: SkewMap, psi):
    """Interior product ``i_phi psi`` of arity ``k + l``.

    ``phi`` has arity ``k``, ``psi`` arity ``l + 1`` (a form or a
    vector-valued form).  On an increasing tuple the value is the sum over
    ``k``-subsets ``S`` of ``sign(S, rest) * psi(phi(S), rest)``.
    """
    if phi.dim != psi.dim:
        raise DimensionError("interior product factors have different dimensions")
    if psi.arity < 1:
        raise ValueError("psi needs at least one slot")
    cls = type(psi)
    d, k, l = phi.dim, phi.arity, psi.arity - 1
    if k + l > d or not phi.table or not psi.table:
        return cls(d, k + l, {})
    # psi(e_m, e_C) for each increasing C, as rows over m
    slot_rows: dict = {}
    for c_key in itertools.combinations(range(d), l):
        row = [(m, psi.eval_basis((m,) + c_key)) for m in range(d) if m not in c_key]
        row = [(m, v) for m, v in row if cls._nonzero(v)]
        if row:
            slot_rows[c_key] = row
    acc: dict = {}
    zero = cls._zero(d)
    for s_key, vec in phi.table.items():
        s_set = set(s_key)
        for c_key, row in slot_rows.items():
            if s_set.intersection(c_key):
                continue
            total = zero
            for m, v in row:
                if vec[m]:
                    total = cls._add(total, cls._scale(vec[m], v))
            if not cls._nonzero(total):
                continue
            sign = shuffle_sign(s_key, c_key)
            key = tuple(sorted(s_key + c_key))
            acc[key] = cls._add(acc.get(key, zero), cls._scale(sign, total))
    return cls(d, k + l, acc)


def contract_pform(tau: PForm, fixed: Sequence[Vector]) -> PForm:
    """The 1-form ``y -> tau(fixed..., y)``."""
    tau = _as_pform(tau)
    if len(fixed) != tau.arity - 1:
        raise ValueError(f"a {tau.arity}-form needs {tau.arity - 1} fixed vectors, got {len(fixed)}")
    d = tau.dim
    sup = [support(v) for v in fixed]
    table = {}
    for y in range(d):
        val = tau._expand(sup + [[(y, Fraction(1))]])
        if val:
            table[(y,)] = val
    return PForm(d, 1, table)


def fix_args_pi(phi: SkewMap, a_list: Sequence[Vector]) -> SkewMap:
    """Fix the trailing ``k`` arguments: ``(x_1..x_{n-k}) -> phi(x.., a_1..a_k)``."""
    k = len(a_list)
    n, d = phi.arity, phi.dim
    if k >= n:
        raise ValueError(f"cannot fix {k} arguments of an arity-{n} map")
    for a in a_list:
        if len(a) != d:
            raise DimensionError(f"fixed vector of length {len(a)} in dimension {d}")
    if k == 0:
        return SkewMap(d, n, dict(phi.table))
    tail = [support(a) for a in a_list]
    acc: dict = {}
    for combo in itertools.product(*tail):
        j_idx = tuple(i for i, _ in combo)
        if len(set(j_idx)) < k:
            continue
        c = Fraction(1)
        for _, s in combo:
            c = c * s
        for head in itertools.combinations([i for i in range(d) if i not in j_idx], n - k):
            val = phi.eval_basis(head + j_idx)
            if is_zero(val):
                continue
            row = acc.setdefault(head, [Fraction(0)] * d)
            vaxpy(row, c, val)
    return SkewMap(d, n - k, {h: tuple(v) for h, v in acc.items()})


def determinant(rows: Sequence[Sequence]):
    """Exact determinant by cofactor expansion (no division)."""
    m = len(rows)
    if m == 0:
        return Fraction(1)
    if m == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(m):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_pform(dim: int, u_basis: Sequence[Vector]) -> PForm:
    """``tau(v_1..v_p) = det(v_1, .., v_p, u_1, .., u_{m-p})`` with ``p = dim - len(u_basis)``."""
    q = len(u_basis)
    p = dim - q
    if p < 1:
        raise ValueError(f"need fewer than {dim} vectors, got {q}")
    for u in u_basis:
        if len(u) != dim:
            raise DimensionError(f"vector of length {len(u)} in dimension {dim}")
    table = {}
    for key in itertools.combinations(range(dim), p):
        rest = [i for i in range(dim) if i not in key]
        # columns e_key then u's: the e columns pick rows ``key``; moving
        # them to the top costs sum(key) - sum(range(p)) transpositions
        minor = [[u[r] for u in u_basis] for r in rest]
        val = determinant(minor)
        if val:
            if (sum(key) - p * (p - 1) // 2) % 2:
                val = -val
            table[key] = val
    if not table:
        raise ValueError("u_basis is linearly dependent")
    return PForm(dim, p, table)
