"""Concrete syntax for programs, compiled artifacts and interpretations.

Program text::

    % comment
    pred Grey, Royal_elephant, Elephant, White.
    [0, 0.1] Grey(X) :- Royal_elephant(X).
    Elephant(X) :- Royal_elephant(X).
    Grey(X) :- ~White(X).
    Royal_elephant(clyde).

Complex predicates use ``~``, ``&`` and ``|`` (``&`` binds tighter) with
parentheses; ``(A & B)(X)`` and ``A(X) & B(X)`` mean the same.  Bounds are
decimals or fractions and are read exactly.  Compiled artifacts add
``derived [lo, hi] F(X) :- G(X).`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    FALSE,
    TRUE,
    And,
    Atom,
    ContextClause,
    EmpiricalClause,
    Formula,
    Interval,
    Literal,
    Not,
    Or,
    Program,
    ProgramError,
    fmt_fraction,
    is_variable,
    subformulas,
    validate,
)
from .compiler import CompiledProgram, compute_impl

RESERVED = {"pred", "derived", "true", "false"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<neck>:-|<-)
  | (?P<sym>[\[\](),.~&|])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def ident(self) -> Token:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def number(self) -> Fraction:
        tok = self.tok
        if tok.kind != "number":
            raise self.error(f"expected a probability, found {tok.text or 'end of input'!r}")
        self.i += 1
        return Fraction(tok.text)

    # -- formulas: returns (formula, variables applied inside it)

    def formula(self) -> tuple[Formula, set[str]]:
        f, vs = self.conjunction()
        while self.tok.text == "|":
            self.i += 1
            g, ws = self.conjunction()
            f, vs = Or(f, g), vs | ws
        return f, vs

    def conjunction(self) -> tuple[Formula, set[str]]:
        f, vs = self.unary()
        while self.tok.text == "&":
            self.i += 1
            g, ws = self.unary()
            f, vs = And(f, g), vs | ws
        return f, vs

    def unary(self) -> tuple[Formula, set[str]]:
        if self.accept("~"):
            f, vs = self.unary()
            return Not(f), vs
        if self.accept("("):
            f, vs = self.formula()
            self.expect(")")
        else:
            tok = self.ident()
            if tok.text == "true":
                f = TRUE
            elif tok.text == "false":
                f = FALSE
            elif tok.text in RESERVED:
                raise self.error(f"{tok.text!r} is reserved", tok)
            else:
                f = Atom(tok.text)
            vs = set()
        vs = vs | self.application()
        return f, vs

    def application(self) -> set[str]:
        if self.tok.text == "(" and self.peek().kind == "ident" and self.peek(2).text == ")":
            var = self.peek()
            if not is_variable(var.text):
                raise self.error(
                    f"empirical clauses range over a variable, found constant {var.text!r}", var
                )
            self.i += 3
            return {var.text}
        return set()

    def applied_formula(self) -> Formula:
        start = self.tok
        f, vs = self.formula()
        if len(vs) != 1:
            what = "no variable" if not vs else f"variables {sorted(vs)}"
            raise self.error(f"complex predicate must be applied to one variable, found {what}", start)
        return f, next(iter(vs))

    # -- statements

    def literal(self) -> Literal:
        positive = not self.accept("~")
        name = self.ident()
        if name.text in RESERVED:
            raise self.error(f"{name.text!r} is reserved", name)
        self.expect("(")
        term = self.ident()
        self.expect(")")
        return Literal(name.text, term.text, positive)

    def empirical(self) -> EmpiricalClause:
        self.expect("[")
        lo = self.number()
        self.expect(",")
        hi = self.number()
        self.expect("]")
        start = self.tok
        head, var = self.applied_formula()
        body = []
        if self.tok.kind == "neck":
            self.i += 1
            if self.tok.text != ".":
                while True:
                    f, v = self.applied_formula()
                    if v != var:
                        raise self.error(
                            f"body uses variable {v!r} but the head uses {var!r}", start
                        )
                    body.append(f)
                    if not self.accept(","):
                        break
        self.expect(".")
        return EmpiricalClause(Interval(lo, hi), head, tuple(body))

    def context(self) -> ContextClause:
        head = self.literal()
        body = []
        if self.tok.kind == "neck":
            self.i += 1
            if self.tok.text != ".":
                body.append(self.literal())
                while self.accept(","):
                    body.append(self.literal())
        self.expect(".")
        return ContextClause(head, tuple(body))


@dataclass
class ParsedSource:
    predicates: list[str]
    context: list[ContextClause]
    empirical: list[EmpiricalClause]
    derived: list[EmpiricalClause]
    locations: dict[int, tuple[int, int]]

    def program(self) -> Program:
        return Program(tuple(self.predicates), tuple(self.context), tuple(self.empirical))


def parse_source(text: str, *, allow_derived: bool = False) -> ParsedSource:
    p = _Parser(text)
    src = ParsedSource([], [], [], [], {})
    while p.tok.kind != "eof":
        tok = p.tok
        if tok.text == "pred" and p.peek().kind == "ident":
            p.i += 1
            src.predicates.append(p.ident().text)
            while p.accept(","):
                src.predicates.append(p.ident().text)
            p.expect(".")
        elif tok.text == "derived" and p.peek().text == "[":
            if not allow_derived:
                raise p.error("'derived' clauses only appear in compiled artifacts")
            p.i += 1
            src.derived.append(p.empirical())
        elif tok.text == "[":
            src.locations[id(cl := p.empirical())] = (tok.line, tok.col)
            src.empirical.append(cl)
        else:
            src.locations[id(cl := p.context())] = (tok.line, tok.col)
            src.context.append(cl)
    return src


def parse_program(text: str, *, check: bool = True) -> Program:
    """Parse program text; with ``check`` raise :class:`ProgramError` on violations."""
    src = parse_source(text)
    program = src.program()
    if check:
        _raise_violations(program, src)
    return program


def _raise_violations(program: Program, src: ParsedSource) -> None:
    violations = validate(program)
    if not violations:
        return
    where = {str(c): src.locations[id(c)] for c in (*src.context, *src.empirical)}
    located = []
    for v in violations:
        loc = next((f"{l}:{c}: " for text, (l, c) in where.items() if f"'{text}'" in v), "")
        located.append(loc + v)
    raise ProgramError(located)


def parse_formula(text: str) -> Formula:
    """Parse a bare complex predicate such as ``~(A & B)``."""
    p = _Parser(text)
    f, vs = p.formula()
    if vs:
        raise p.error("a bare formula takes no variable")
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return f


def parse_query(text: str) -> tuple[Formula, str]:
    """``"~White(clyde)"`` -> ``(Not(Atom('White')), 'clyde')``."""
    m = re.fullmatch(r"\s*(.*\S)\s*\(\s*([a-z0-9_][A-Za-z0-9_]*)\s*\)\s*", text)
    if not m:
        raise ParseError(f"query must look like Formula(constant), got {text!r}", 1, 1)
    return parse_formula(m.group(1)), m.group(2)


# -- writing -------------------------------------------------------------------


def format_interval(i: Interval) -> str:
    return f"[{fmt_fraction(i.lo)}, {fmt_fraction(i.hi)}]"


def format_program(program: Program) -> str:
    lines = []
    if program.predicates:
        lines.append(f"pred {', '.join(program.predicates)}.")
    lines.extend(str(c) for c in program.context)
    lines.extend(str(c) for c in program.empirical)
    return "\n".join(lines) + "\n"


# -- compiled artifacts -----------------------------------------------------------


def format_compiled(comp: CompiledProgram) -> str:
    """The source program followed by one ``derived`` line per chained clause."""
    lines = [format_program(comp.source).rstrip("\n")]
    if comp.history:
        lines.append(f"% clauses per iteration: {' '.join(map(str, comp.history))}")
    lines.extend(f"derived {cl}" for cl in comp.derived)
    return "\n".join(lines) + "\n"


def parse_compiled(text: str, *, check: bool = True) -> CompiledProgram:
    """Load a compiled artifact.  Plain program text loads with no derived clauses."""
    src = parse_source(text, allow_derived=True)
    program = src.program()
    if check:
        _raise_violations(program, src)
    clauses = program.empirical + tuple(src.derived)
    scope = [f for r in program.unary_rules for lit in r.literals() for f in subformulas(lit.formula())]
    scope += [f for cl in clauses for f in (cl.head, cl.body_formula)]
    impl = compute_impl(program.context, scope, program.predicates)
    return CompiledProgram(program, clauses, impl)
