"""Concept and axiom syntax.

The concept language is ALC extended with a typicality operator ``T(...)``
and singleton nominals ``{a}``.  Concepts are immutable trees built from:

* ``Top`` and ``Bottom``
* concept names,
* ``not C``, ``C and D``, ``C or D``,
* ``exists r.C`` and ``forall r.C``,
* ``T(C)`` (the typical instances of C),
* ``{a}`` (the singleton of individual a).

Concrete syntax is plain ASCII, one expression per string::

    not Employee and exists has_boss.(Employee or Student)

Operator binding, loosest to tightest: ``or``, ``and``, ``not``, then the
quantifier prefixes; parentheses override.  ``[=`` writes subsumption in
axiom strings, ``@`` attaches a weight, and ``>= <= > <`` attach degree
bounds.  Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``; the words ``and``,
``or``, ``not``, ``exists``, ``forall``, ``Top``, ``Bottom``, and ``T`` are
reserved.

Parsing is total: any input yields either a tree or a :class:`ParseError`
carrying a line and column, never an unpositioned crash.  The serializer
emits minimally parenthesized text, and serialize-then-parse returns a
structurally equal tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError

__all__ = [
    "Concept",
    "Top",
    "Bottom",
    "Name",
    "Not",
    "And",
    "Or",
    "Exists",
    "Forall",
    "Typ",
    "Nominal",
    "TOP",
    "BOTTOM",
    "Signature",
    "StrictInclusion",
    "DefeasibleInclusion",
    "FuzzyInclusion",
    "Assertion",
    "RoleAssertion",
    "FuzzyAssertion",
    "ConditionalConstraint",
    "ProbAssertion",
    "THETAS",
    "parse_concept",
    "parse_query_axiom",
    "concept_to_text",
    "axiom_to_text",
    "format_number",
    "walk",
    "concept_names_in",
    "role_names_in",
    "individual_names_in",
    "is_el_concept",
    "is_rolefree_concept",
    "contains_typ",
]


# ---------------------------------------------------------------------------
# Abstract syntax


class Concept:
    """Base class for concept expressions."""

    __slots__ = ()

    def __str__(self) -> str:
        return concept_to_text(self)


@dataclass(frozen=True, slots=True)
class Top(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Name(Concept):
    name: str


@dataclass(frozen=True, slots=True)
class Not(Concept):
    arg: Concept


@dataclass(frozen=True, slots=True)
class And(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True, slots=True)
class Or(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True, slots=True)
class Exists(Concept):
    role: str
    arg: Concept


@dataclass(frozen=True, slots=True)
class Forall(Concept):
    role: str
    arg: Concept


@dataclass(frozen=True, slots=True)
class Typ(Concept):
    """The typical instances of the argument concept."""

    arg: Concept


@dataclass(frozen=True, slots=True)
class Nominal(Concept):
    """Singleton concept containing exactly one named individual."""

    individual: str


TOP = Top()
BOTTOM = Bottom()


def walk(concept: Concept) -> Iterator[Concept]:
    """Yield the concept and all of its subconcepts, preorder."""
    stack = [concept]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Exists, Forall, Typ)):
            stack.append(node.arg)


def concept_names_in(concept: Concept) -> set[str]:
    return {n.name for n in walk(concept) if isinstance(n, Name)}


def role_names_in(concept: Concept) -> set[str]:
    return {n.role for n in walk(concept) if isinstance(n, (Exists, Forall))}


def individual_names_in(concept: Concept) -> set[str]:
    return {n.individual for n in walk(concept) if isinstance(n, Nominal)}


def is_el_concept(concept: Concept) -> bool:
    """True when the concept uses only Top, names, conjunction, and exists."""
    return all(isinstance(n, (Top, Name, And, Exists)) for n in walk(concept))


def is_rolefree_concept(concept: Concept) -> bool:
    """True when the concept mentions no roles and no nominals."""
    return not any(isinstance(n, (Exists, Forall, Nominal)) for n in walk(concept))


def contains_typ(concept: Concept) -> bool:
    return any(isinstance(n, Typ) for n in walk(concept))


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class Signature:
    """The named vocabulary: concept, role, and individual identifiers.

    The three sets are separate namespaces; an identifier may belong to at
    most one of them.
    """

    concept_names: frozenset[str] = frozenset()
    role_names: frozenset[str] = frozenset()
    individual_names: frozenset[str] = frozenset()

    def conflicts(self) -> set[str]:
        """Identifiers claimed by more than one namespace."""
        return (
            (self.concept_names & self.role_names)
            | (self.concept_names & self.individual_names)
            | (self.role_names & self.individual_names)
        )

    def kind_of(self, ident: str) -> str | None:
        if ident in self.concept_names:
            return "concept"
        if ident in self.role_names:
            return "role"
        if ident in self.individual_names:
            return "individual"
        return None


# ---------------------------------------------------------------------------
# Axioms

THETAS = (">=", "<=", ">", "<")


@dataclass(frozen=True)
class StrictInclusion:
    """C [= D, required to hold without exception."""

    left: Concept
    right: Concept


@dataclass(frozen=True)
class DefeasibleInclusion:
    """T(subject) [= consequent, carrying a real-valued weight.

    The subject is a distinguished concept name; positive weights mark
    expected properties of typical instances, negative weights mark
    penalized ones.
    """

    subject: str
    consequent: Concept
    weight: float


@dataclass(frozen=True)
class FuzzyInclusion:
    """C [= D with a degree bound, e.g. ``C [= D >= 0.7``."""

    left: Concept
    right: Concept
    theta: str
    degree: float


@dataclass(frozen=True)
class Assertion:
    """C(a): the individual a is an instance of C."""

    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion:
    """r(a, b): a is related to b through role r."""

    role: str
    subject: str
    target: str


@dataclass(frozen=True)
class FuzzyAssertion:
    """C(a) with a degree bound, e.g. ``C(a) >= 0.4``."""

    concept: Concept
    individual: str
    theta: str
    degree: float


@dataclass(frozen=True)
class ConditionalConstraint:
    """(C | D)[l, u]: the conditional probability of C given D lies in [l, u]."""

    left: Concept
    given: Concept
    lower: float
    upper: float


@dataclass(frozen=True)
class ProbAssertion:
    """P(C(a))[p]: the probability that a is an instance of C equals p."""

    concept: Concept
    individual: str
    prob: float


# ---------------------------------------------------------------------------
# Tokenizer

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")

RESERVED = {"and", "or", "not", "exists", "forall", "Top", "Bottom", "T"}

IDENT_PATTERN = re.compile(r"\A[A-Za-z_][A-Za-z0-9_]*\Z")


def is_identifier(text: str) -> bool:
    """True for a lexically valid, non-reserved identifier."""
    return bool(IDENT_PATTERN.match(text)) and text not in RESERVED


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str, line: int = 1, col_offset: int = 0) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    cur_line = line
    cur_col = col_offset + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            cur_line += 1
            cur_col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            cur_col += 1
            continue
        start_line, start_col = cur_line, cur_col
        m = _NUMBER_RE.match(text, i)
        if m is not None:
            tokens.append(_Token("NUMBER", m.group(), start_line, start_col))
            cur_col += m.end() - i
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m is not None:
            tokens.append(_Token("IDENT", m.group(), start_line, start_col))
            cur_col += m.end() - i
            i = m.end()
            continue
        two = text[i : i + 2]
        if two == "[=":
            tokens.append(_Token("SUBSUMES", two, start_line, start_col))
            i += 2
            cur_col += 2
            continue
        if two in (">=", "<="):
            tokens.append(_Token("THETA", two, start_line, start_col))
            i += 2
            cur_col += 2
            continue
        if ch in "><":
            tokens.append(_Token("THETA", ch, start_line, start_col))
            i += 1
            cur_col += 1
            continue
        simple = {
            "(": "LPAREN",
            ")": "RPAREN",
            "{": "LBRACE",
            "}": "RBRACE",
            "[": "LBRACKET",
            "]": "RBRACKET",
            ",": "COMMA",
            ".": "DOT",
            "|": "PIPE",
            "@": "AT",
        }
        if ch in simple:
            tokens.append(_Token(simple[ch], ch, start_line, start_col))
            i += 1
            cur_col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("EOF", "", cur_line, cur_col))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _UsageSink:
    """Collects which namespace each identifier was used in."""

    def __init__(self) -> None:
        self.concepts: set[str] = set()
        self.roles: set[str] = set()
        self.individuals: set[str] = set()

    def concept(self, name: str) -> None:
        self.concepts.add(name)

    def role(self, name: str) -> None:
        self.roles.add(name)

    def individual(self, name: str) -> None:
        self.individuals.add(name)


class _Parser:
    """Recursive-descent parser over a token list.

    When a signature is supplied every identifier is validated against the
    namespace its position demands; when a usage sink is supplied instead,
    identifiers are recorded by position for later signature inference.
    """

    def __init__(
        self,
        tokens: list[_Token],
        sig: Signature | None = None,
        sink: _UsageSink | None = None,
        allow_typ: bool = True,
    ):
        self.tokens = tokens
        self.pos = 0
        self.sig = sig
        self.sink = sink
        self.allow_typ = allow_typ

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = what or kind
            found = tok.value or "end of input"
            raise ParseError(f"expected {shown}, found {found!r}", tok.line, tok.col)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "EOF"

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"unexpected trailing input {tok.value!r}", tok.line, tok.col)

    # -- namespace handling

    def _note_concept(self, tok: _Token) -> None:
        if self.sink is not None:
            self.sink.concept(tok.value)
        if self.sig is not None:
            self._validate(tok, "concept")

    def _note_role(self, tok: _Token) -> None:
        if self.sink is not None:
            self.sink.role(tok.value)
        if self.sig is not None:
            self._validate(tok, "role")

    def _note_individual(self, tok: _Token) -> None:
        if self.sink is not None:
            self.sink.individual(tok.value)
        if self.sig is not None:
            self._validate(tok, "individual")

    def _validate(self, tok: _Token, want: str) -> None:
        assert self.sig is not None
        kind = self.sig.kind_of(tok.value)
        if kind == want:
            return
        if kind is None:
            raise ParseError(f"unknown {want} name {tok.value!r}", tok.line, tok.col)
        raise ParseError(
            f"{tok.value!r} is a {kind} name; expected a {want} name", tok.line, tok.col
        )

    # -- grammar

    def parse_or(self) -> Concept:
        node = self.parse_and()
        while self.peek().kind == "IDENT" and self.peek().value == "or":
            self.next()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Concept:
        node = self.parse_not()
        while self.peek().kind == "IDENT" and self.peek().value == "and":
            self.next()
            node = And(node, self.parse_not())
        return node

    def parse_not(self) -> Concept:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.value == "not":
            self.next()
            return Not(self.parse_not())
        return self.parse_quant()

    def parse_quant(self) -> Concept:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.value in ("exists", "forall"):
            self.next()
            role_tok = self.expect("IDENT", "a role name")
            if role_tok.value in RESERVED:
                raise ParseError(
                    f"reserved word {role_tok.value!r} cannot name a role",
                    role_tok.line,
                    role_tok.col,
                )
            self._note_role(role_tok)
            self.expect("DOT", "'.'")
            arg = self.parse_not()
            cls = Exists if tok.value == "exists" else Forall
            return cls(role_tok.value, arg)
        return self.parse_atom()

    def parse_atom(self) -> Concept:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.next()
            node = self.parse_or()
            self.expect("RPAREN", "')'")
            return node
        if tok.kind == "LBRACE":
            self.next()
            ind = self.expect("IDENT", "an individual name")
            if ind.value in RESERVED:
                raise ParseError(
                    f"reserved word {ind.value!r} cannot name an individual",
                    ind.line,
                    ind.col,
                )
            self._note_individual(ind)
            self.expect("RBRACE", "'}'")
            return Nominal(ind.value)
        if tok.kind == "IDENT":
            if tok.value == "Top":
                self.next()
                return TOP
            if tok.value == "Bottom":
                self.next()
                return BOTTOM
            if tok.value == "T":
                self.next()
                if not self.allow_typ:
                    raise ParseError(
                        "typicality operator is not allowed here", tok.line, tok.col
                    )
                self.expect("LPAREN", "'(' after T")
                arg = self.parse_or()
                self.expect("RPAREN", "')'")
                if contains_typ(arg):
                    raise ParseError("nested typicality operator", tok.line, tok.col)
                return Typ(arg)
            if tok.value in RESERVED:
                raise ParseError(
                    f"unexpected reserved word {tok.value!r}", tok.line, tok.col
                )
            self.next()
            self._note_concept(tok)
            return Name(tok.value)
        found = tok.value or "end of input"
        raise ParseError(f"expected a concept, found {found!r}", tok.line, tok.col)

    # -- numbers

    def parse_number(self, what: str = "a number") -> float:
        tok = self.expect("NUMBER", what)
        return float(tok.value)

    def parse_degree(self, what: str = "a degree in [0,1]") -> float:
        tok = self.expect("NUMBER", what)
        value = float(tok.value)
        if not 0.0 <= value <= 1.0:
            raise ParseError(f"degree {tok.value} is outside [0,1]", tok.line, tok.col)
        return value


def parse_concept(
    text: str,
    sig: Signature | None = None,
    *,
    allow_typ: bool = True,
) -> Concept:
    """Parse a concept expression.

    With a signature, identifiers are resolved against it and a positioned
    error names the expected namespace on a mismatch; without one, any
    well-placed identifier is accepted.
    """
    parser = _Parser(_tokenize(text), sig=sig, allow_typ=allow_typ)
    node = parser.parse_or()
    parser.expect_end()
    return node


def parse_query_axiom(
    text: str,
    sig: Signature | None = None,
) -> StrictInclusion | FuzzyInclusion | Assertion | FuzzyAssertion:
    """Parse a query axiom: an inclusion or an assertion, optionally bounded.

    Accepted shapes::

        C [= D                  C [= D >= 0.7
        C(a)                    C(a) > 0.5

    The left side of an inclusion may be ``T(C)``.
    """
    parser = _Parser(_tokenize(text), sig=sig, allow_typ=True)
    left = parser.parse_or()
    tok = parser.peek()
    if tok.kind == "SUBSUMES":
        parser.next()
        right = parser.parse_or()
        if contains_typ(right):
            raise ParseError(
                "typicality operator is only allowed on the left side", tok.line, tok.col
            )
        if parser.peek().kind == "THETA":
            theta = parser.next().value
            degree = parser.parse_degree()
            parser.expect_end()
            return FuzzyInclusion(left, right, theta, degree)
        parser.expect_end()
        return StrictInclusion(left, right)
    if tok.kind == "LPAREN":
        if contains_typ(left):
            raise ParseError(
                "typicality operator is not allowed in assertions", tok.line, tok.col
            )
        parser.next()
        ind = parser.expect("IDENT", "an individual name")
        parser._note_individual(ind)
        parser.expect("RPAREN", "')'")
        if parser.peek().kind == "THETA":
            theta = parser.next().value
            degree = parser.parse_degree()
            parser.expect_end()
            return FuzzyAssertion(left, ind.value, theta, degree)
        parser.expect_end()
        return Assertion(left, ind.value)
    found = tok.value or "end of input"
    raise ParseError(f"expected '[=' or '(', found {found!r}", tok.line, tok.col)


# ---------------------------------------------------------------------------
# Serializer

_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_PREFIX = 3
_LEVEL_ATOM = 4


def _level(concept: Concept) -> int:
    if isinstance(concept, Or):
        return _LEVEL_OR
    if isinstance(concept, And):
        return _LEVEL_AND
    if isinstance(concept, (Not, Exists, Forall)):
        return _LEVEL_PREFIX
    return _LEVEL_ATOM


def _wrap(concept: Concept, need: int) -> str:
    text = concept_to_text(concept)
    if _level(concept) < need:
        return f"({text})"
    return text


def concept_to_text(concept: Concept) -> str:
    """Serialize a concept with minimal parenthesization."""
    if isinstance(concept, Top):
        return "Top"
    if isinstance(concept, Bottom):
        return "Bottom"
    if isinstance(concept, Name):
        return concept.name
    if isinstance(concept, Nominal):
        return "{" + concept.individual + "}"
    if isinstance(concept, Not):
        return f"not {_wrap(concept.arg, _LEVEL_PREFIX)}"
    if isinstance(concept, And):
        return f"{_wrap(concept.left, _LEVEL_AND)} and {_wrap(concept.right, _LEVEL_PREFIX)}"
    if isinstance(concept, Or):
        return f"{_wrap(concept.left, _LEVEL_OR)} or {_wrap(concept.right, _LEVEL_AND)}"
    if isinstance(concept, Exists):
        return f"exists {concept.role}.{_wrap(concept.arg, _LEVEL_PREFIX)}"
    if isinstance(concept, Forall):
        return f"forall {concept.role}.{_wrap(concept.arg, _LEVEL_PREFIX)}"
    if isinstance(concept, Typ):
        return f"T({concept_to_text(concept.arg)})"
    raise TypeError(f"not a concept: {concept!r}")


def format_number(value: float) -> str:
    """Shortest faithful decimal form; integers drop the trailing '.0'."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _applied_concept(concept: Concept) -> str:
    if isinstance(concept, (Name, Top, Bottom, Nominal)):
        return concept_to_text(concept)
    return f"({concept_to_text(concept)})"


def axiom_to_text(axiom: object) -> str:
    """Serialize an axiom in query syntax (no statement keyword)."""
    if isinstance(axiom, StrictInclusion):
        return f"{concept_to_text(axiom.left)} [= {concept_to_text(axiom.right)}"
    if isinstance(axiom, DefeasibleInclusion):
        return (
            f"T({axiom.subject}) [= {concept_to_text(axiom.consequent)}"
            f" @ {format_number(axiom.weight)}"
        )
    if isinstance(axiom, FuzzyInclusion):
        return (
            f"{concept_to_text(axiom.left)} [= {concept_to_text(axiom.right)}"
            f" {axiom.theta} {format_number(axiom.degree)}"
        )
    if isinstance(axiom, Assertion):
        return f"{_applied_concept(axiom.concept)}({axiom.individual})"
    if isinstance(axiom, RoleAssertion):
        return f"{axiom.role}({axiom.subject},{axiom.target})"
    if isinstance(axiom, FuzzyAssertion):
        return (
            f"{_applied_concept(axiom.concept)}({axiom.individual})"
            f" {axiom.theta} {format_number(axiom.degree)}"
        )
    if isinstance(axiom, ConditionalConstraint):
        return (
            f"({concept_to_text(axiom.left)} | {concept_to_text(axiom.given)})"
            f"[{format_number(axiom.lower)},{format_number(axiom.upper)}]"
        )
    if isinstance(axiom, ProbAssertion):
        return (
            f"P({_applied_concept(axiom.concept)}({axiom.individual}))"
            f"[{format_number(axiom.prob)}]"
        )
    raise TypeError(f"not an axiom: {axiom!r}")
