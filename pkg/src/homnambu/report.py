"""Outcome records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .scalar import format_scalar


@dataclass(frozen=True)
class Violation:
    """One failing instance of an identity.

    ``where`` is an ordered tuple of ``(label, value)`` pairs.  A tuple value
    holds 0-based basis indices; an ``int`` value is a 1-based map index
    (the ``i``, ``j`` of the compatibility relations).
    """

    where: tuple[tuple[str, Any], ...]
    defect: Any  # Vector (tuple) or scalar

    def sort_key(self):
        return tuple((k, v if isinstance(v, tuple) else (v,)) for k, v in self.where)


@dataclass
class CheckReport:
    name: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    vacuous: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def add(self, defect, **where):
        self.violations.append(Violation(tuple(where.items()), defect))

    def finalize(self) -> "CheckReport":
        self.violations.sort(key=Violation.sort_key)
        return self

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    # -- rendering -------------------------------------------------------

    def format_text(self, basis=None) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = f"{self.name}: {status} ({self.checked} instances checked"
        if self.vacuous:
            head += ", vacuous"
        head += ")"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        for v in self.violations:
            lines.append(f"  {self.name} defect at {format_where(v.where, basis)}: "
                         f"{format_value(v.defect, basis)}")
        return "\n".join(lines)

    def to_dict(self, basis=None) -> dict:
        return {
            "identity": self.name,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "checked": self.checked,
            "notes": list(self.notes),
            "violations": [
                {
                    "where": {k: _where_json(v, basis) for k, v in viol.where},
                    "defect": _value_json(viol.defect, basis),
                }
                for viol in self.violations
            ],
        }


def _names(basis, n):
    return list(basis) if basis is not None else [f"x{i + 1}" for i in range(n)]


def format_where(where, basis=None) -> str:
    parts = []
    for k, v in where:
        if isinstance(v, tuple):
            names = _names(basis, max(v, default=-1) + 1)
            parts.append(f"{k}=({','.join(names[i] for i in v)})")
        else:
            parts.append(f"{k}={v}")
    return ", ".join(parts)


def format_value(value, basis=None) -> str:
    if not isinstance(value, tuple):
        return format_scalar(value)
    names = _names(basis, len(value))
    terms = []
    for name, c in zip(names, value):
        if not c:
            continue
        text = format_scalar(c)
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append(f"-{name}")
        else:
            if " " in text:
                text = f"({text})"
            terms.append(f"{text}·{name}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _where_json(v, basis):
    if isinstance(v, tuple):
        names = _names(basis, max(v, default=-1) + 1)
        return [names[i] for i in v]
    return v


def _value_json(value, basis):
    if not isinstance(value, tuple):
        return format_scalar(value)
    names = _names(basis, len(value))
    return {n: format_scalar(c) for n, c in zip(names, value) if c}
