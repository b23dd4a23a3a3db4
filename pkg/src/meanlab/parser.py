"""Recursive-descent parser for the field / radius / grid mini-language.

Grammar (whitespace insignificant, numbers are decimal literals):

    expr  := NAME
           | NAME '(' kwargs ')'              -- builtin with parameters
           | 'min' '(' expr ',' expr ')'
           | 'max' '(' expr ',' expr ')'
           | 'add' '(' expr ',' expr ')'
           | 'scale' '(' expr ',' number-arg ')'
           | 'shift' '(' expr ',' number-arg [',' number-arg] ')'
           | 'clamp' '(' expr ',' number-arg ')'
           | 'neg' '(' expr ')'

Combinator numeric arguments may be bare numbers or key=value; builtin
parameters are always key=value.  The language is closed: only registered
builtins evaluate, because every builtin carries the non-smoothness
metadata the quadrature relies on.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .exprs import (Add, Clamp, Expr, FIELD_BUILTINS, FieldSpec, Max, Min,
                    Neg, RADIUS_BUILTINS, RadiusSpec, Scale, Shift)
from .grids import CartesianGrid, GridSpec, LineGrid, PolarGrid

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<equals>=)
""", re.VERBOSE)


class _Token:
    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"{self.kind}({self.text!r})@{self.pos}"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, builtins: dict):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.builtins = builtins

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.pos)
        self.i += 1
        return tok

    def accept(self, kind: str) -> _Token | None:
        if self.tokens[self.i].kind == kind:
            tok = self.tokens[self.i]
            self.i += 1
            return tok
        return None

    # -- grammar ------------------------------------------------------------

    def parse(self) -> Expr:
        expr = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)
        return expr

    def expr(self) -> Expr:
        tok = self.take("name")
        name = tok.text
        if name in ("min", "max", "add"):
            self.take("lparen")
            left = self.expr()
            self.take("comma")
            right = self.expr()
            self.take("rparen")
            cls = {"min": Min, "max": Max, "add": Add}[name]
            return cls(left, right)
        if name == "scale":
            self.take("lparen")
            child = self.expr()
            self.take("comma")
            k = self.number_arg("k")
            self.take("rparen")
            return Scale(child, k)
        if name == "shift":
            self.take("lparen")
            child = self.expr()
            self.take("comma")
            x0 = self.number_arg("x0")
            offset = [x0]
            if self.accept("comma"):
                offset.append(self.number_arg("y0"))
            self.take("rparen")
            return Shift(child, tuple(offset))
        if name == "clamp":
            self.take("lparen")
            child = self.expr()
            self.take("comma")
            n = self.number_arg("n")
            self.take("rparen")
            return Clamp(child, n)
        if name == "neg":
            self.take("lparen")
            child = self.expr()
            self.take("rparen")
            return Neg(child)
        return self.builtin(name, tok.pos)

    def builtin(self, name: str, pos: int) -> Expr:
        if name not in self.builtins:
            raise ParseError(f"unknown name {name!r}", pos)
        ctor, required, optional = self.builtins[name]
        kwargs = {}
        if self.accept("lparen"):
            while True:
                key_tok = self.take("name")
                self.take("equals")
                val = self.number()
                if key_tok.text in kwargs:
                    raise ParseError(f"duplicate parameter {key_tok.text!r}",
                                     key_tok.pos)
                if key_tok.text not in required and key_tok.text not in optional:
                    raise ParseError(
                        f"unknown parameter {key_tok.text!r} for {name}",
                        key_tok.pos)
                kwargs[key_tok.text] = val
                if not self.accept("comma"):
                    break
            self.take("rparen")
        missing = [k for k in required if k not in kwargs]
        if missing:
            raise ParseError(
                f"{name} is missing parameter(s) {', '.join(missing)}", pos)
        for key, default in optional.items():
            kwargs.setdefault(key, default)
        if "axis" in kwargs and kwargs["axis"] is not None:
            axis = kwargs["axis"]
            if axis != int(axis) or int(axis) < 1:
                raise ParseError("axis must be a positive integer", pos)
            kwargs["axis"] = int(axis)
        return ctor(**kwargs)

    def number_arg(self, key: str) -> float:
        """A bare number, or key=value with the given key."""
        tok = self.peek()
        if tok.kind == "name":
            self.take("name")
            if tok.text != key:
                raise ParseError(f"expected argument {key!r}", tok.pos)
            self.take("equals")
        return self.number()

    def number(self) -> float:
        tok = self.take("number")
        try:
            return float(tok.text)
        except ValueError:
            raise ParseError(f"bad number {tok.text!r}", tok.pos)


def parse_field(text: str, dim: int) -> FieldSpec:
    root = _Parser(text, FIELD_BUILTINS).parse()
    return FieldSpec(root, dim)


def parse_radius(text: str, dim: int) -> RadiusSpec:
    root = _Parser(text, RADIUS_BUILTINS).parse()
    return RadiusSpec(root, dim)


_GRID_KINDS = {
    "cartesian": (("xlo", "xhi", "ylo", "yhi", "n"), {}),
    "polar": (("rmin", "rmax", "nr", "na"), {"log": 1.0}),
    "line": (("lo", "hi", "n"), {"log": 0.0}),
}


def parse_grid(text: str) -> GridSpec:
    """Grid mini-language: cartesian(...), polar(...), or line(...).

    Examples: ``polar(rmin=1e-3,rmax=1e4,nr=100,na=100,log=1)``,
    ``line(lo=1,hi=1e8,n=1000,log=1)``,
    ``cartesian(xlo=-1,xhi=1,ylo=-1,yhi=1,n=10)``.
    """
    tokens = _tokenize(text)
    parser = _Parser.__new__(_Parser)
    parser.text = text
    parser.tokens = tokens
    parser.i = 0
    name_tok = parser.take("name")
    kind = name_tok.text
    if kind not in _GRID_KINDS:
        raise ParseError(
            f"unknown grid kind {kind!r}; expected cartesian, polar, or line",
            name_tok.pos)
    required, optional = _GRID_KINDS[kind]
    kwargs: dict[str, float] = {}
    parser.take("lparen")
    while True:
        key_tok = parser.take("name")
        parser.take("equals")
        val = parser.number()
        if key_tok.text not in required and key_tok.text not in optional:
            raise ParseError(f"unknown parameter {key_tok.text!r} for {kind}",
                             key_tok.pos)
        kwargs[key_tok.text] = val
        if not parser.accept("comma"):
            break
    parser.take("rparen")
    parser.take("end")
    missing = [k for k in required if k not in kwargs]
    if missing:
        raise ParseError(
            f"{kind} is missing parameter(s) {', '.join(missing)}",
            name_tok.pos)
    for key, default in optional.items():
        kwargs.setdefault(key, default)

    if kind == "cartesian":
        return CartesianGrid(x_range=(kwargs["xlo"], kwargs["xhi"]),
                             y_range=(kwargs["ylo"], kwargs["yhi"]),
                             n_per_axis=int(kwargs["n"]))
    if kind == "polar":
        return PolarGrid(r_min=kwargs["rmin"], r_max=kwargs["rmax"],
                         n_radial=int(kwargs["nr"]),
                         n_angular=int(kwargs["na"]),
                         log_spacing=bool(kwargs["log"]))
    return LineGrid(lo=kwargs["lo"], hi=kwargs["hi"], n=int(kwargs["n"]),
                    log_spacing=bool(kwargs["log"]))
