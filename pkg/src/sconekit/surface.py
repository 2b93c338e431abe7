"""Named surface syntax: lexer, parser, scope resolution, pretty-printer.

The surface language mirrors the core term language with names instead
of indices.  Identifiers in type position that are not type formers are
wrapped in El during resolution, so `(A : U0) -> A -> A` means
`(A : U0) -> El A -> El A`.  The printer keeps El explicit, which makes
print-then-parse a syntactic fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    App,
    Bool,
    Code,
    El,
    ElimBool,
    FalseTm,
    Lam,
    Lift,
    LiftTm,
    Pi,
    Term,
    TrueTm,
    U,
    UnliftTm,
    Var,
)


class SurfaceError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class Token:
    kind: str  # ident, keyword, symbol, eof
    text: str
    line: int
    col: int


KEYWORDS = {"fun", "elim", "at", "Bool", "true", "false", "El", "code", "Lift", "lift", "unlift"}
SYMBOLS = ("->", "=>", "(", ")", ":", "|")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i : i + 2]
        if two in ("->", "=>"):
            tokens.append(Token("symbol", two, line, col))
            i += 2
            col += 2
            continue
        if c in "():|":
            tokens.append(Token("symbol", c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise SurfaceError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Surface trees


@dataclass(frozen=True)
class SurfaceTerm:
    line: int
    col: int


@dataclass(frozen=True)
class SVar(SurfaceTerm):
    name: str


@dataclass(frozen=True)
class SLam(SurfaceTerm):
    name: str
    body: SurfaceTerm


@dataclass(frozen=True)
class SApp(SurfaceTerm):
    fn: SurfaceTerm
    arg: SurfaceTerm


@dataclass(frozen=True)
class SPi(SurfaceTerm):
    name: Optional[str]  # None for the A -> B sugar
    dom: SurfaceTerm
    cod: SurfaceTerm


@dataclass(frozen=True)
class SBool(SurfaceTerm):
    pass


@dataclass(frozen=True)
class STrue(SurfaceTerm):
    pass


@dataclass(frozen=True)
class SFalse(SurfaceTerm):
    pass


@dataclass(frozen=True)
class SElim(SurfaceTerm):
    scrut: SurfaceTerm
    motive_name: str
    motive: SurfaceTerm
    tcase: SurfaceTerm
    fcase: SurfaceTerm


@dataclass(frozen=True)
class SUniv(SurfaceTerm):
    level: int


@dataclass(frozen=True)
class SEl(SurfaceTerm):
    code: SurfaceTerm


@dataclass(frozen=True)
class SCode(SurfaceTerm):
    ty: SurfaceTerm


@dataclass(frozen=True)
class SLift(SurfaceTerm):
    ty: SurfaceTerm


@dataclass(frozen=True)
class SLiftTm(SurfaceTerm):
    tm: SurfaceTerm


@dataclass(frozen=True)
class SUnlift(SurfaceTerm):
    tm: SurfaceTerm


# ---------------------------------------------------------------------------
# Parser (recursive descent)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "ident":
            raise SurfaceError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise SurfaceError(f"expected an identifier, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.text == text and tok.kind in ("symbol", "keyword")

    # term := fun / elim / arrow
    def term(self) -> SurfaceTerm:
        tok = self.peek()
        if self.at("fun"):
            self.next()
            name = self.expect_ident()
            self.expect("=>")
            return SLam(tok.line, tok.col, name.text, self.term())
        if self.at("elim"):
            self.next()
            scrut = self.app()
            self.expect("at")
            name = self.expect_ident()
            self.expect("=>")
            motive = self.arrow()
            self.expect("|")
            tcase = self.arrow()
            self.expect("|")
            fcase = self.term()
            return SElim(tok.line, tok.col, scrut, name.text, motive, tcase, fcase)
        return self.arrow()

    # arrow := app ('->' arrow)?  |  '(' x ':' term ')' '->' arrow
    def arrow(self) -> SurfaceTerm:
        tok = self.peek()
        if (
            self.at("(")
            and self.peek(1).kind == "ident"
            and self.peek(2).text == ":"
        ):
            self.next()
            name = self.expect_ident()
            self.expect(":")
            dom = self.term()
            self.expect(")")
            self.expect("->")
            return SPi(tok.line, tok.col, name.text, dom, self.arrow())
        left = self.app()
        if self.at("->"):
            self.next()
            return SPi(tok.line, tok.col, None, left, self.arrow())
        return left

    # app := prefix | atom+
    def app(self) -> SurfaceTerm:
        tok = self.peek()
        prefixes = {"El": SEl, "code": SCode, "Lift": SLift, "lift": SLiftTm, "unlift": SUnlift}
        if tok.kind == "keyword" and tok.text in prefixes:
            self.next()
            return prefixes[tok.text](tok.line, tok.col, self.app())
        t = self.atom()
        while self._starts_atom():
            arg = self.atom()
            t = SApp(t.line, t.col, t, arg)
        return t

    def _starts_atom(self) -> bool:
        tok = self.peek()
        if tok.kind == "ident":
            return True
        if tok.kind == "keyword" and tok.text in ("Bool", "true", "false"):
            return True
        return tok.text == "(" and tok.kind == "symbol"

    def atom(self) -> SurfaceTerm:
        tok = self.peek()
        if tok.text == "(" and tok.kind == "symbol":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        if self.at("Bool"):
            self.next()
            return SBool(tok.line, tok.col)
        if self.at("true"):
            self.next()
            return STrue(tok.line, tok.col)
        if self.at("false"):
            self.next()
            return SFalse(tok.line, tok.col)
        if tok.kind == "ident":
            self.next()
            if tok.text.startswith("U") and tok.text[1:].isdigit():
                return SUniv(tok.line, tok.col, int(tok.text[1:]))
            return SVar(tok.line, tok.col, tok.text)
        raise SurfaceError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)


def parse(text: str) -> SurfaceTerm:
    p = _Parser(tokenize(text))
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise SurfaceError(f"trailing input starting at {tok.text!r}", tok.line, tok.col)
    return t


def parse_file_contents(text: str) -> tuple[SurfaceTerm, Optional[SurfaceTerm]]:
    """One term, with an optional top-level `term : type` ascription."""
    p = _Parser(tokenize(text))
    t = p.term()
    ann: Optional[SurfaceTerm] = None
    if p.at(":"):
        p.next()
        ann = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise SurfaceError(f"trailing input starting at {tok.text!r}", tok.line, tok.col)
    return t, ann


# ---------------------------------------------------------------------------
# Scope resolution


_TYPE_FORMERS = (SPi, SBool, SUniv, SEl, SLift)


def resolve_type(s: SurfaceTerm, scope: tuple[str, ...] = ()) -> Term:
    """Resolve in type position: code-valued expressions get El inserted."""
    match s:
        case SBool():
            return Bool()
        case SUniv(_, _, level):
            return U(level)
        case SPi(_, _, name, dom, cod):
            binder = name if name is not None else "_"
            return Pi(resolve_type(dom, scope), resolve_type(cod, (binder,) + scope))
        case SEl(_, _, code):
            return El(resolve_term(code, scope))
        case SLift(_, _, ty):
            return Lift(resolve_type(ty, scope))
        case _:
            return El(resolve_term(s, scope))


def resolve_term(s: SurfaceTerm, scope: tuple[str, ...] = ()) -> Term:
    match s:
        case SVar(line, col, name):
            if name not in scope:
                raise SurfaceError(f"unknown identifier {name!r}", line, col)
            return Var(scope.index(name))
        case SLam(_, _, name, body):
            return Lam(resolve_term(body, (name,) + scope))
        case SApp(_, _, fn, arg):
            return App(resolve_term(fn, scope), resolve_term(arg, scope))
        case STrue():
            return TrueTm()
        case SFalse():
            return FalseTm()
        case SElim(_, _, scrut, mname, motive, tcase, fcase):
            return ElimBool(
                resolve_type(motive, (mname,) + scope),
                resolve_term(tcase, scope),
                resolve_term(fcase, scope),
                resolve_term(scrut, scope),
            )
        case SCode(_, _, ty):
            return Code(resolve_type(ty, scope))
        case SLiftTm(_, _, tm):
            return LiftTm(resolve_term(tm, scope))
        case SUnlift(_, _, tm):
            return UnliftTm(resolve_term(tm, scope))
        case SPi(line, col, _, _, _) | SBool(line, col) | SUniv(line, col, _) | SEl(line, col, _) | SLift(line, col, _):
            raise SurfaceError("type former in term position; wrap it with `code`", line, col)
    raise SurfaceError(f"unresolvable node {s!r}", s.line, s.col)


# ---------------------------------------------------------------------------
# Pretty-printer; binder at depth d is named x<d>


def pretty(t: Term, depth: int = 0) -> str:
    return _pp(t, depth, 0)


_PREC_ATOM = 3
_PREC_APP = 2
_PREC_ARROW = 1
_PREC_LOW = 0


def _name(depth: int) -> str:
    return f"x{depth}"


def _pp(t: Term, depth: int, prec: int) -> str:
    match t:
        case Var(ix):
            return _name(depth - 1 - ix)
        case Bool():
            return "Bool"
        case TrueTm():
            return "true"
        case FalseTm():
            return "false"
        case U(level):
            return f"U{level}"
        case Lam(b):
            s = f"fun {_name(depth)} => {_pp(b, depth + 1, _PREC_LOW)}"
            return _paren(s, prec > _PREC_LOW)
        case App(f, a):
            s = f"{_pp(f, depth, _PREC_APP)} {_pp(a, depth, _PREC_ATOM)}"
            return _paren(s, prec > _PREC_APP)
        case Pi(dom, cod):
            if _uses_var0(cod):
                s = f"({_name(depth)} : {_pp(dom, depth, _PREC_LOW)}) -> {_pp(cod, depth + 1, _PREC_ARROW)}"
            else:
                s = f"{_pp(dom, depth, _PREC_APP)} -> {_pp(cod, depth + 1, _PREC_ARROW)}"
            return _paren(s, prec > _PREC_ARROW)
        case ElimBool(m, t1, t2, s0):
            s = (
                f"elim {_pp(s0, depth, _PREC_APP)} at {_name(depth)} => "
                f"{_pp(m, depth + 1, _PREC_ARROW)} | {_pp(t1, depth, _PREC_ARROW)} | {_pp(t2, depth, _PREC_LOW)}"
            )
            return _paren(s, prec > _PREC_LOW)
        # prefix forms parse only where a whole application may appear, so
        # they take parentheses in function/argument position
        case El(c):
            return _paren(f"El {_pp(c, depth, _PREC_APP)}", prec >= _PREC_APP)
        case Code(a):
            return _paren(f"code {_pp(a, depth, _PREC_APP)}", prec >= _PREC_APP)
        case Lift(a):
            return _paren(f"Lift {_pp(a, depth, _PREC_APP)}", prec >= _PREC_APP)
        case LiftTm(x):
            return _paren(f"lift {_pp(x, depth, _PREC_APP)}", prec >= _PREC_APP)
        case UnliftTm(x):
            return _paren(f"unlift {_pp(x, depth, _PREC_APP)}", prec >= _PREC_APP)
    raise TypeError(f"unknown term {t!r}")


def _paren(s: str, needed: bool) -> str:
    return f"({s})" if needed else s


def _uses_var0(t: Term, depth: int = 0) -> bool:
    from .syntax import _map_vars

    found = False

    def spot(d: int, ix: int) -> Term:
        nonlocal found
        if ix == d + depth:
            found = True
        return Var(ix)

    _map_vars(t, 0, spot)
    return found
