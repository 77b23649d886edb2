"""Constraint language front end: parse, validate, and lower to gadget ops.

The language has four constraint forms over variables ranging in [-1, 1]:
``x + y = z``, ``h(x) = y``, ``x >= 0``, ``x = 1``, plus an optional header
declaring the Moebius map ``h := (a x + b)/(c x + d)``.  Lowering rewrites a
formula into slot-level ops (copy, add, curved, constant-one), inserting
copy chains so that no slot carries more attachments than its segment can
physically host and no add op repeats a slot.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .numbers import format_rational, parse_rational

__all__ = [
    "MobiusParams",
    "Admissibility",
    "check_h_admissible",
    "Add",
    "Curved",
    "GeqZero",
    "EqOne",
    "Constraint",
    "EtrFormula",
    "Slot",
    "CopyLE",
    "CopyGE",
    "AddLE",
    "AddGE",
    "CurvedLE",
    "CurvedGE",
    "ConstOne",
    "LoweredOp",
    "LoweredProgram",
    "FormulaSyntaxError",
    "UndeclaredVariableError",
    "InadmissibleHError",
    "parse_formula",
    "serialize_formula",
    "lower",
]


@dataclass(frozen=True)
class MobiusParams:
    """Coefficients of h(x) = (a x + b)/(c x + d), all exact rationals."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def pole(self) -> Fraction | None:
        """x where the denominator vanishes; None for affine maps."""
        if self.c == 0:
            return None
        return -self.d / self.c

    def evaluate(self, x: Fraction) -> Fraction:
        den = self.c * x + self.d
        if den == 0:
            raise ZeroDivisionError(f"h has a pole at x = {x}")
        return (self.a * x + self.b) / den

    def to_json(self) -> dict[str, str]:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "c": format_rational(self.c),
            "d": format_rational(self.d),
        }

    @staticmethod
    def from_json(data: dict[str, str]) -> "MobiusParams":
        return MobiusParams(*(parse_rational(data[k]) for k in ("a", "b", "c", "d")))


@dataclass(frozen=True)
class Admissibility:
    """Admissible when reason is None; otherwise names the failed condition."""

    reason: str | None = None

    @property
    def admissible(self) -> bool:
        return self.reason is None


def check_h_admissible(h: MobiusParams) -> Admissibility:
    """A usable h is nondegenerate, non-affine, with its pole outside [-1, 1]."""
    if h.determinant() == 0:
        return Admissibility("degenerate (ad-bc=0)")
    if h.c == 0:
        return Admissibility("affine (c=0)")
    pole = -h.d / h.c
    if -1 <= pole <= 1:
        return Admissibility("pole -d/c inside [-1,1]")
    return Admissibility()


@dataclass(frozen=True)
class Add:
    x: str
    y: str
    z: str


@dataclass(frozen=True)
class Curved:
    x: str
    y: str


@dataclass(frozen=True)
class GeqZero:
    x: str


@dataclass(frozen=True)
class EqOne:
    x: str


Constraint = Union[Add, Curved, GeqZero, EqOne]


@dataclass(frozen=True)
class EtrFormula:
    """Parsed formula: declared variables, constraints, optional Moebius map."""

    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    h: MobiusParams | None = None


class FormulaSyntaxError(ValueError):
    """Malformed statement; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredVariableError(FormulaSyntaxError):
    """A constraint references a name with no prior `var` statement."""


class InadmissibleHError(ValueError):
    """The declared h fails an admissibility condition, or is missing."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RATIONAL_TOKEN = r"-?\d+(?:/\d+)?"
_VAR_STMT = re.compile(r"var\s+([A-Za-z_][A-Za-z0-9_]*)\Z")
_HEADER_STMT = re.compile(
    r"h\s*:=\s*\(\s*(%(q)s)\s*x\s*\+\s*(%(q)s)\s*\)\s*/\s*"
    r"\(\s*(%(q)s)\s*x\s*\+\s*(%(q)s)\s*\)\Z" % {"q": _RATIONAL_TOKEN}
)
_ADD_STMT = re.compile(
    r"([A-Za-z_][A-Za-z0-9_]*)\s*\+\s*([A-Za-z_][A-Za-z0-9_]*)"
    r"\s*=\s*([A-Za-z_][A-Za-z0-9_]*)\Z"
)
_CURVED_STMT = re.compile(
    r"h\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*([A-Za-z_][A-Za-z0-9_]*)\Z"
)
_GEQ_STMT = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*>=\s*0\Z")
_EQONE_STMT = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*1\Z")

_RESERVED = {"var", "h"}


def _statements(text: str) -> Iterator[tuple[str, int, int]]:
    """Split on semicolons, yielding (body, line, column) of each statement."""
    line = 1
    col = 1
    start_line, start_col = line, col
    buf: list[str] = []
    saw_content = False
    for ch in text:
        if ch == ";":
            yield "".join(buf).strip(), start_line, start_col
            buf = []
            saw_content = False
            col += 1
            start_line, start_col = line, col
            continue
        if not saw_content and not ch.isspace():
            saw_content = True
            start_line, start_col = line, col
        buf.append(ch)
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1
    tail = "".join(buf).strip()
    if tail:
        raise FormulaSyntaxError("missing trailing ';'", start_line, start_col)


def parse_formula(text: str) -> EtrFormula:
    """Parse the statement language; see module docstring for the grammar."""
    variables: list[str] = []
    declared: set[str] = set()
    constraints: list[Constraint] = []
    h: MobiusParams | None = None

    def need_declared(name: str, line: int, col: int) -> None:
        if name not in declared:
            raise UndeclaredVariableError(f"undeclared variable {name!r}", line, col)

    for body, line, col in _statements(text):
        if not body:
            continue
        m = _VAR_STMT.fullmatch(body)
        if m:
            name = m.group(1)
            if name in _RESERVED:
                raise FormulaSyntaxError(f"reserved name {name!r}", line, col)
            if name in declared:
                raise FormulaSyntaxError(f"duplicate variable {name!r}", line, col)
            declared.add(name)
            variables.append(name)
            continue
        m = _HEADER_STMT.fullmatch(body)
        if m:
            if h is not None:
                raise FormulaSyntaxError("duplicate h header", line, col)
            try:
                h = MobiusParams(*(parse_rational(tok) for tok in m.groups()))
            except ValueError as err:
                raise FormulaSyntaxError(str(err), line, col) from None
            verdict = check_h_admissible(h)
            if not verdict.admissible:
                raise InadmissibleHError(verdict.reason)
            continue
        m = _CURVED_STMT.fullmatch(body)
        if m:
            x, y = m.groups()
            need_declared(x, line, col)
            need_declared(y, line, col)
            constraints.append(Curved(x, y))
            continue
        m = _ADD_STMT.fullmatch(body)
        if m:
            x, y, z = m.groups()
            for name in (x, y, z):
                need_declared(name, line, col)
            constraints.append(Add(x, y, z))
            continue
        m = _GEQ_STMT.fullmatch(body)
        if m:
            name = m.group(1)
            need_declared(name, line, col)
            constraints.append(GeqZero(name))
            continue
        m = _EQONE_STMT.fullmatch(body)
        if m:
            name = m.group(1)
            need_declared(name, line, col)
            constraints.append(EqOne(name))
            continue
        raise FormulaSyntaxError(f"unrecognized statement {body!r}", line, col)

    if h is None and any(isinstance(c, Curved) for c in constraints):
        raise InadmissibleHError("h used in a constraint but never declared")
    return EtrFormula(tuple(variables), tuple(constraints), h)


def serialize_formula(formula: EtrFormula) -> str:
    """Canonical text: header first, then declarations, then constraints."""
    lines: list[str] = []
    if formula.h is not None:
        a, b, c, d = (
            format_rational(v)
            for v in (formula.h.a, formula.h.b, formula.h.c, formula.h.d)
        )
        lines.append(f"h := ({a} x + {b})/({c} x + {d});")
    for name in formula.variables:
        lines.append(f"var {name};")
    for con in formula.constraints:
        if isinstance(con, Add):
            lines.append(f"{con.x} + {con.y} = {con.z};")
        elif isinstance(con, Curved):
            lines.append(f"h({con.x}) = {con.y};")
        elif isinstance(con, GeqZero):
            lines.append(f"{con.x} >= 0;")
        else:
            lines.append(f"{con.x} = 1;")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Slot:
    """One logical variable segment in the lowered program.

    origin is "variable" for declared variables, "copy" for fan-out copies,
    "fresh" for slack variables introduced by lowering, "const" for slots
    pinned by a ConstOne op.
    """

    name: str
    origin: str


@dataclass(frozen=True)
class CopyLE:
    x: str
    y: str
    alpha: Fraction = Fraction(1)


@dataclass(frozen=True)
class CopyGE:
    x: str
    y: str
    alpha: Fraction = Fraction(1)


@dataclass(frozen=True)
class AddLE:
    x: str
    y: str
    z: str


@dataclass(frozen=True)
class AddGE:
    x: str
    y: str
    z: str


@dataclass(frozen=True)
class CurvedLE:
    x: str
    y: str


@dataclass(frozen=True)
class CurvedGE:
    x: str
    y: str


@dataclass(frozen=True)
class ConstOne:
    v: str


LoweredOp = Union[CopyLE, CopyGE, AddLE, AddGE, CurvedLE, CurvedGE, ConstOne]


@dataclass(frozen=True)
class LoweredProgram:
    """Slot-level program: segments, ops, and which ops touch each slot."""

    segments: tuple[Slot, ...]
    ops: tuple[LoweredOp, ...]
    adjacency: tuple[tuple[str, tuple[int, ...]], ...] = field(default=())

    def slots_of(self, op: LoweredOp) -> tuple[str, ...]:
        return _op_slots(op)


def _op_slots(op: LoweredOp) -> tuple[str, ...]:
    if isinstance(op, (CopyLE, CopyGE, CurvedLE, CurvedGE)):
        return (op.x, op.y)
    if isinstance(op, (AddLE, AddGE)):
        return (op.x, op.y, op.z)
    return (op.v,)


@dataclass
class _Lowerer:
    formula: EtrFormula
    slots: list[Slot] = field(default_factory=list)
    ops: list[LoweredOp] = field(default_factory=list)
    fresh_counter: int = 0
    # fan-out state per declared variable: current chain tail, copies spawned
    chain_tail: dict[str, str] = field(default_factory=dict)
    copy_count: dict[str, int] = field(default_factory=dict)
    slot_used: dict[str, bool] = field(default_factory=dict)

    def add_slot(self, name: str, origin: str) -> str:
        self.slots.append(Slot(name, origin))
        return name

    def fresh(self, prefix: str, origin: str) -> str:
        self.fresh_counter += 1
        return self.add_slot(f"${prefix}{self.fresh_counter}", origin)

    def use(self, var: str) -> str:
        """Slot hosting one constraint-pair attachment of var.

        Every slot carries at most one constraint pair: n uses of a variable
        become a chain of n-1 copy pairs, so the declared segment holds one
        use plus one link and interior copies hold link-in, use, link-out.
        """
        tail = self.chain_tail[var]
        if not self.slot_used[tail]:
            self.slot_used[tail] = True
            return tail
        self.copy_count[var] += 1
        nxt = self.add_slot(f"{var}@{self.copy_count[var]}", "copy")
        self.ops.append(CopyLE(tail, nxt))
        self.ops.append(CopyGE(tail, nxt))
        self.chain_tail[var] = nxt
        self.slot_used[nxt] = True
        return nxt

    def run(self) -> LoweredProgram:
        for name in self.formula.variables:
            self.add_slot(name, "variable")
            self.chain_tail[name] = name
            self.copy_count[name] = 0
            self.slot_used[name] = False
        for con in self.formula.constraints:
            if isinstance(con, Add):
                x = self.use(con.x)
                y = self.use(con.y)
                z = self.use(con.z)
                self.ops.append(AddLE(x, y, z))
                self.ops.append(AddGE(x, y, z))
            elif isinstance(con, Curved):
                x = self.use(con.x)
                y = self.use(con.y)
                self.ops.append(CurvedLE(x, y))
                self.ops.append(CurvedGE(x, y))
            elif isinstance(con, EqOne):
                c1 = self.fresh("one", "const")
                self.ops.append(ConstOne(c1))
                x = self.use(con.x)
                self.ops.append(CopyLE(x, c1))
                self.ops.append(CopyGE(x, c1))
            else:
                # x >= 0 as x = (u + 1)/2: scale u and 1 by 1/2, then add.
                u = self.fresh("u", "fresh")
                c1 = self.fresh("one", "const")
                self.ops.append(ConstOne(c1))
                half = Fraction(1, 2)
                u2 = self.fresh("uhalf", "fresh")
                self.ops.append(CopyLE(u, u2, half))
                self.ops.append(CopyGE(u, u2, half))
                h2 = self.fresh("half", "fresh")
                self.ops.append(CopyLE(c1, h2, half))
                self.ops.append(CopyGE(c1, h2, half))
                x = self.use(con.x)
                self.ops.append(AddLE(u2, h2, x))
                self.ops.append(AddGE(u2, h2, x))
        adjacency = self.build_adjacency()
        return LoweredProgram(tuple(self.slots), tuple(self.ops), adjacency)

    def build_adjacency(self) -> tuple[tuple[str, tuple[int, ...]], ...]:
        touch: dict[str, list[int]] = {s.name: [] for s in self.slots}
        for i, op in enumerate(self.ops):
            for slot in _op_slots(op):
                touch[slot].append(i)
        return tuple((s.name, tuple(touch[s.name])) for s in self.slots)


def lower(formula: EtrFormula) -> LoweredProgram:
    """Rewrite a formula into slot ops; deterministic in the formula."""
    return _Lowerer(formula).run()
