"""TBox abstract syntax, concrete syntax, DNF and validation.

Concrete syntax (``#`` starts a comment)::

    domain rcc8.
    C1 := some(g1,g2).EC and some(g1,g3).TPP and exists o . C2 .
    C2 := p and not q or exists <[0,0],(0,+inf),(-inf,0),[0,0]> . C2 .

Defined concept names start with an uppercase letter, primitive concept names
with a lowercase letter, and concrete features with ``g``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from .allen import ALLEN_NAMES, AllenAtom, EndpointRole, translate_atom
from .domains import ConcreteDomain, registry_lookup
from .intervals import ZERO, format_convex, interval, parse_value


class TBoxError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Primitive:
    name: str


@dataclass(frozen=True)
class NegPrimitive:
    name: str


@dataclass(frozen=True)
class PredicateConcept:
    features: Tuple[str, ...]
    predicate: frozenset


@dataclass(frozen=True)
class ExistsRole:
    role: EndpointRole
    target: str
    # Allen atom the role was written as, kept for printing
    allen: Optional[AllenAtom] = field(default=None, compare=True)


@dataclass(frozen=True)
class And:
    items: Tuple["Concept", ...]


@dataclass(frozen=True)
class Or:
    items: Tuple["Concept", ...]


Concept = Union[Top, Bottom, Primitive, NegPrimitive, PredicateConcept, ExistsRole, And, Or]
Leaf = Union[Primitive, NegPrimitive, PredicateConcept, ExistsRole]


@dataclass(frozen=True)
class Axiom:
    lhs: str
    rhs: Concept


@dataclass(frozen=True)
class TBox:
    domain: str
    axioms: Tuple[Axiom, ...]

    @property
    def defined(self) -> List[str]:
        seen = []
        for ax in self.axioms:
            if ax.lhs not in seen:
                seen.append(ax.lhs)
        return seen

    def definition(self, name: str) -> Concept:
        for ax in self.axioms:
            if ax.lhs == name:
                return ax.rhs
        raise KeyError(name)

    @property
    def concrete_domain(self) -> ConcreteDomain:
        return registry_lookup(self.domain)


@dataclass(frozen=True)
class NormalizedAxiom:
    lhs: str
    disjuncts: Tuple[Tuple[Leaf, ...], ...]  # empty: the axiom can never hold


# -- lexer ------------------------------------------------------------------

class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<assign>:=)
  | (?P<num>[+-]inf\b|[+-]?\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
  | (?P<punct>[.,()\[\]{}<>])
""", re.VERBOSE)

KEYWORDS = {"domain", "top", "bottom", "not", "and", "or", "some", "exists"}


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise TBoxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.domain: Optional[ConcreteDomain] = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise TBoxError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def ident(self, what: str) -> Token:
        if self.tok.kind != "ident" or self.tok.text in KEYWORDS:
            self.error(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def parse_tbox(self) -> TBox:
        self.expect("domain")
        name_tok = self.ident("domain name")
        try:
            self.domain = registry_lookup(name_tok.text)
        except KeyError as exc:
            self.error(exc.args[0], name_tok)
        self.expect(".")
        axioms = []
        seen: Dict[str, Token] = {}
        while self.tok.kind != "eof":
            start = self.tok
            ax = self.parse_axiom()
            if ax.lhs in seen:
                self.error(f"duplicate definition {ax.lhs}", start)
            seen[ax.lhs] = start
            axioms.append(ax)
        return TBox(self.domain.name, tuple(axioms))

    def parse_axiom(self) -> Axiom:
        tok = self.ident("defined concept name")
        if not tok.text[0].isupper():
            self.error(f"defined concept names start with an uppercase letter: {tok.text!r}", tok)
        self.expect(":=")
        rhs = self.parse_concept()
        self.expect(".")
        return Axiom(tok.text, rhs)

    def parse_concept(self) -> Concept:
        items = [self.parse_conj()]
        while self.at("or"):
            self.advance()
            items.append(self.parse_conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def parse_conj(self) -> Concept:
        items = [self.parse_unit()]
        while self.at("and"):
            self.advance()
            items.append(self.parse_unit())
        return items[0] if len(items) == 1 else And(tuple(items))

    def parse_unit(self) -> Concept:
        t = self.tok
        if self.at("top"):
            self.advance()
            return Top()
        if self.at("bottom"):
            self.advance()
            return Bottom()
        if self.at("not"):
            self.advance()
            return NegPrimitive(self.primitive_name())
        if self.at("some"):
            return self.parse_predicate_concept()
        if self.at("exists"):
            self.advance()
            role, atom = self.parse_role()
            self.expect(".")
            target = self.ident("defined concept name")
            if not target.text[0].isupper():
                self.error(f"exists needs a defined concept, found {target.text!r}", target)
            return ExistsRole(role, target.text, atom)
        if self.at("("):
            self.advance()
            c = self.parse_concept()
            self.expect(")")
            return c
        if t.kind == "ident" and t.text not in KEYWORDS:
            if t.text[0].isupper():
                self.error(f"defined concept {t.text} may only appear as the target of exists")
            return Primitive(self.primitive_name())
        self.error(f"expected a concept, found {t.text or 'end of input'!r}")

    def primitive_name(self) -> str:
        tok = self.ident("primitive concept name")
        if not tok.text[0].islower():
            self.error(f"primitive concept names start with a lowercase letter: {tok.text!r}", tok)
        return tok.text

    def parse_predicate_concept(self) -> PredicateConcept:
        start = self.expect("some")
        self.expect("(")
        feats = [self.feature()]
        while self.at(","):
            self.advance()
            feats.append(self.feature())
        self.expect(")")
        self.expect(".")
        pred_tok = self.tok
        atoms = self.parse_pred()
        if len(feats) != self.domain.arity:
            self.error(f"{self.domain.name} predicates take {self.domain.arity} features, "
                       f"got {len(feats)}", start)
        try:
            pred = self.domain.check(atoms)
        except ValueError as exc:
            self.error(str(exc), pred_tok)
        return PredicateConcept(tuple(feats), pred)

    def feature(self) -> str:
        tok = self.ident("concrete feature")
        if not tok.text.startswith("g"):
            self.error(f"concrete features start with 'g': {tok.text!r}", tok)
        return tok.text

    def parse_pred(self) -> List[str]:
        if self.at("{"):
            self.advance()
            atoms = []
            if not self.at("}"):
                atoms.append(self.ident("atom").text)
                while self.at(","):
                    self.advance()
                    atoms.append(self.ident("atom").text)
            self.expect("}")
            return atoms
        return [self.ident("atom").text]

    def parse_role(self) -> Tuple[EndpointRole, Optional[AllenAtom]]:
        t = self.tok
        if t.text == "<" and self.peek().text in ("[", "(", "{"):
            self.advance()
            comps = [self.parse_ival()]
            for _ in range(3):
                self.expect(",")
                comps.append(self.parse_ival())
            self.expect(">")
            return EndpointRole(*comps), None
        if t.kind in ("ident", "punct") and t.text in ALLEN_NAMES:
            self.advance()
            atom = ALLEN_NAMES[t.text]
            return translate_atom(atom), atom
        self.error(f"expected a role, found {t.text or 'end of input'!r}")

    def parse_ival(self):
        if self.at("{"):
            self.advance()
            tok = self.advance()
            if tok.text not in ("0", "+0", "-0"):
                self.error("only {0} is accepted as a singleton set", tok)
            self.expect("}")
            return ZERO
        if not (self.at("[") or self.at("(")):
            self.error(f"expected '[' or '(', found {self.tok.text!r}")
        lo_strict = self.advance().text == "("
        lo = self.bound()
        self.expect(",")
        hi = self.bound()
        if not (self.at("]") or self.at(")")):
            self.error(f"expected ']' or ')', found {self.tok.text!r}")
        hi_strict = self.advance().text == ")"
        return interval(lo, hi, lo_strict, hi_strict)

    def bound(self):
        tok = self.tok
        if tok.kind != "num":
            self.error(f"expected a rational or +/-inf, found {tok.text!r}")
        self.advance()
        try:
            return parse_value(tok.text)
        except ValueError as exc:
            self.error(str(exc), tok)


def parse_tbox(text: str) -> TBox:
    return _Parser(text).parse_tbox()


def parse_concept(text: str, domain: str = "rcc8") -> Concept:
    p = _Parser(text)
    p.domain = registry_lookup(domain)
    c = p.parse_concept()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return c


# -- printer ----------------------------------------------------------------

def _atom_order(domain: ConcreteDomain, atoms) -> List[str]:
    return sorted(atoms, key=domain.atoms.index)


def format_concept(c: Concept, domain: str = "rcc8", _ctx: str = "top") -> str:
    dom = registry_lookup(domain)
    if isinstance(c, Top):
        return "top"
    if isinstance(c, Bottom):
        return "bottom"
    if isinstance(c, Primitive):
        return c.name
    if isinstance(c, NegPrimitive):
        return f"not {c.name}"
    if isinstance(c, PredicateConcept):
        atoms = _atom_order(dom, c.predicate)
        pred = atoms[0] if len(atoms) == 1 else "{" + ",".join(atoms) + "}"
        return f"some({','.join(c.features)}).{pred}"
    if isinstance(c, ExistsRole):
        role = str(c.allen) if c.allen is not None else str(c.role)
        return f"exists {role} . {c.target}"
    if isinstance(c, And):
        body = " and ".join(format_concept(x, domain, "and") for x in c.items)
        return f"({body})" if _ctx == "and" else body
    if isinstance(c, Or):
        body = " or ".join(format_concept(x, domain, "or") for x in c.items)
        return f"({body})" if _ctx in ("and", "or") else body
    raise TypeError(f"not a concept: {c!r}")


def format_tbox(t: TBox) -> str:
    lines = [f"domain {t.domain}."]
    for ax in t.axioms:
        lines.append(f"{ax.lhs} := {format_concept(ax.rhs, t.domain)} .")
    return "\n".join(lines) + "\n"


# -- DNF --------------------------------------------------------------------

def to_dnf(c: Concept) -> List[Tuple[Leaf, ...]]:
    """Flat conjunctions of leaves; Top dropped, Bottom disjuncts removed."""
    if isinstance(c, Top):
        return [()]
    if isinstance(c, Bottom):
        return []
    if isinstance(c, (Primitive, NegPrimitive, PredicateConcept, ExistsRole)):
        return [(c,)]
    if isinstance(c, Or):
        return [d for item in c.items for d in to_dnf(item)]
    if isinstance(c, And):
        parts = [to_dnf(item) for item in c.items]
        return [tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*parts)]
    raise TypeError(f"not a concept: {c!r}")


def from_dnf(disjuncts: Iterable[Tuple[Leaf, ...]]) -> Concept:
    disjuncts = list(disjuncts)
    if not disjuncts:
        return Bottom()
    conj = [And(d) if len(d) > 1 else (d[0] if d else Top()) for d in disjuncts]
    return conj[0] if len(conj) == 1 else Or(tuple(conj))


def normalize(t: TBox) -> List[NormalizedAxiom]:
    return [NormalizedAxiom(ax.lhs, tuple(to_dnf(ax.rhs))) for ax in t.axioms]


# -- validation -------------------------------------------------------------

def _walk(c: Concept):
    yield c
    if isinstance(c, (And, Or)):
        for item in c.items:
            yield from _walk(item)


def validate(t: TBox) -> List[str]:
    """Human-readable diagnostics; empty when the TBox is well formed."""
    diags = []
    try:
        dom = registry_lookup(t.domain)
    except KeyError:
        return [f"unknown domain {t.domain}"]
    defined = set()
    for ax in t.axioms:
        if ax.lhs in defined:
            diags.append(f"duplicate definition {ax.lhs}")
        defined.add(ax.lhs)
    primitives = set()
    for ax in t.axioms:
        for c in _walk(ax.rhs):
            if isinstance(c, (Primitive, NegPrimitive)):
                primitives.add(c.name)
            elif isinstance(c, ExistsRole):
                if c.target not in defined:
                    diags.append(f"undefined target {c.target} in {ax.lhs}")
                if not c.role.usable:
                    diags.append(f"empty role component in {ax.lhs}: {c.role}")
            elif isinstance(c, PredicateConcept):
                if len(c.features) != dom.arity:
                    diags.append(f"arity mismatch in {ax.lhs}: {dom.name} needs {dom.arity} "
                                 f"features, got {len(c.features)}")
                bad = set(c.predicate) - dom.universal
                if bad:
                    diags.append(f"unknown atom(s) {', '.join(sorted(bad))} in {ax.lhs}")
    for name in sorted(primitives & defined):
        diags.append(f"name {name} used as both primitive and defined concept")
    return diags
