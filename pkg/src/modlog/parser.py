"""Concrete syntax for programs and fact files.

Rules read ``R(?x,?y), R(?y,?z) -> R(?x,?z).``; negated body atoms are
prefixed with ``not``; ``%`` starts a comment.  Fact files hold one ground
atom per line, ``R(a,b).``.
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass

from .datalog import Atom, DatalogError, Program, Rule, Var
from .factstore import FactSet


class ParseError(DatalogError):
    def __init__(self, message, line, column):
        self.line, self.column = line, column
        super().__init__(f"{line}:{column}: {message}")


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>%[^\n]*)
  | (?P<arrow>->) | (?P<var>\?[A-Za-z0-9_]+) | (?P<ident>[A-Za-z0-9_]+)
  | (?P<punct>[(),.])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str):
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            if kind == "punct" or kind == "arrow":
                kind = m.group()
            yield Token(kind, m.group(), line, pos - line_start + 1)
        pos = m.end()
    yield Token("eof", "", line, pos - line_start + 1)


class _Parser:
    def __init__(self, text):
        self.toks = list(tokenize(text))
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def expect(self, kind):
        t = self.tok
        if t.kind != kind:
            want = "identifier" if kind == "ident" else repr(kind)
            got = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {want}, got {got}", t.line, t.col)
        self.i += 1
        return t

    def term(self):
        t = self.tok
        if t.kind == "var":
            self.i += 1
            return Var(sys.intern(t.text[1:]))
        return sys.intern(self.expect("ident").text)

    def atom(self):
        name = self.expect("ident")
        self.expect("(")
        args = [self.term()]
        while self.tok.kind == ",":
            self.i += 1
            args.append(self.term())
        self.expect(")")
        return Atom(sys.intern(name.text), tuple(args)), name

    def rule(self):
        start = self.tok
        pos, neg = [], []
        if self.tok.kind != "->":
            self.body_atom(pos, neg)
            while self.tok.kind == ",":
                self.i += 1
                self.body_atom(pos, neg)
        self.expect("->")
        head, _ = self.atom()
        self.expect(".")
        return Rule(head, tuple(pos), tuple(neg)), start

    def body_atom(self, pos, neg):
        if self.tok.kind == "ident" and self.tok.text == "not" and self.toks[self.i + 1].kind == "ident":
            self.i += 1
            neg.append(self.atom()[0])
        else:
            pos.append(self.atom()[0])


@dataclass
class SourceProgram:
    text: str
    program: Program
    positions: list  # (line, column) of each parsed rule, before deduplication


def parse_source(text: str) -> SourceProgram:
    p = _Parser(text)
    rules, positions = [], []
    while p.tok.kind != "eof":
        r, start = p.rule()
        rules.append(r)
        positions.append((start.line, start.col))
    return SourceProgram(text, Program.from_rules(rules), positions)


def parse_program(text: str) -> Program:
    return parse_source(text).program


def parse_rule(text: str) -> Rule:
    rules = parse_program(text).rules
    if len(rules) != 1:
        raise ValueError(f"expected exactly one rule, got {len(rules)}")
    return rules[0]


def parse_facts(text: str) -> FactSet:
    p = _Parser(text)
    out = FactSet()
    while p.tok.kind != "eof":
        a, name = p.atom()
        p.expect(".")
        if not a.is_ground():
            raise ParseError(f"fact {a} contains a variable", name.line, name.col)
        out.insert(a)
    return out


def parse_atom(text: str) -> Atom:
    p = _Parser(text)
    a, _ = p.atom()
    p.expect("eof")
    return a


def serialise_dataset(facts) -> str:
    return "".join(f"{f}.\n" for f in sorted(facts))


def serialise_program(program) -> str:
    return "".join(f"{r}\n" for r in program)
