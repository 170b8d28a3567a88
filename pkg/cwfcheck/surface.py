"""
Surface Syntax

Parenthesized prefix notation for the explicit-substitution core, used by
`.cwf` files and by the printer behind str(expr).

Grammar:
    contexts       empty | (ext Γ A)
    substitutions  (id Γ) | (comp σ δ) | (eps Γ) | (p Γ A) | (pair σ t [A])
    types          (subT A σ) | unit | bool | (pi A B) | (sigma A B) | u | (el t)
    terms          (subt t σ) | (q Γ A) | tt | true | false | (boolrec P t f b)
                   | (lam A B t) | (app A B t u) | (mkpair A B t u)
                   | (fst A B t) | (snd A B t) | unit-code | bool-code
    definitions    (def name expr)

A `;` starts a comment running to the end of the line.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import ParseError
from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, El, Empty, Eps, Expr, Ext, FalseC,
    Fst, Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sort, SubT, SubTm,
    TrueC, TT, UnitCode, UnitT, Univ, children,
)

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")

ATOMS: Dict[str, Expr] = {
    "empty": Empty(),
    "unit": UnitT(),
    "bool": BoolT(),
    "u": Univ(),
    "tt": TT(),
    "true": TrueC(),
    "false": FalseC(),
    "unit-code": UnitCode(),
    "bool-code": BoolCode(),
}

S, T, A, C = Sort.SUB, Sort.TM, Sort.TY, Sort.CON

# keyword -> (node class, argument sorts)
FORMS: Dict[str, Tuple[type, Tuple[Sort, ...]]] = {
    "ext": (Ext, (C, A)),
    "id": (Id, (C,)),
    "comp": (Comp, (S, S)),
    "eps": (Eps, (C,)),
    "p": (P, (C, A)),
    "pair": (Pair, (S, T, A)),
    "subT": (SubT, (A, S)),
    "pi": (Pi, (A, A)),
    "sigma": (Sigma, (A, A)),
    "el": (El, (T,)),
    "subt": (SubTm, (T, S)),
    "q": (Q, (C, A)),
    "boolrec": (BoolRec, (A, T, T, T)),
    "lam": (Lam, (A, A, T)),
    "app": (App, (A, A, T, T)),
    "mkpair": (PairTm, (A, A, T, T)),
    "fst": (Fst, (A, A, T)),
    "snd": (Snd, (A, A, T)),
}

KEYWORDS = {cls: name for name, (cls, _) in FORMS.items()}
ATOM_NAMES = {type(node): name for name, node in ATOMS.items()}


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN.finditer(text):
        lexeme = match.group()
        if not lexeme.isspace() and not lexeme.startswith(";"):
            tokens.append(Token(lexeme, line, match.start() - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = match.start() + lexeme.rindex("\n") + 1
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        lines = text.split("\n")
        self.end = (len(lines), len(lines[-1]) + 1)
        self.defs: Dict[str, Expr] = {}

    def fail(self, message: str, token: Optional[Token] = None) -> ParseError:
        if token is None:
            return ParseError(f"{message}: unexpected end of input", *self.end)
        return ParseError(message, token.line, token.column)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, what: str) -> Token:
        token = self.peek()
        if token is None:
            raise self.fail(f"expected {what}")
        self.pos += 1
        return token

    def expect_close(self, keyword: str) -> None:
        token = self.take(f"')' closing {keyword}")
        if token.text != ")":
            raise self.fail(f"too many arguments to {keyword}", token)

    def form(self) -> Tuple[Optional[str], Expr]:
        """One top-level form: a definition (name, value) or an expression (None, expr)"""
        token = self.peek()
        if token is not None and token.text == "(":
            after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if after is not None and after.text == "def":
                self.pos += 2
                name = self.take("definition name")
                if name.text in ("(", ")") or name.text in ATOMS or name.text in FORMS or name.text == "def":
                    raise self.fail(f"invalid definition name {name.text!r}", name)
                value = self.expr()
                self.expect_close("def")
                self.defs[name.text] = value
                logger.debug(f"Defined {name.text} : {value.sort.value}")
                return name.text, value
        return None, self.expr()

    def expr(self, sort: Optional[Sort] = None) -> Expr:
        token = self.take("an expression")
        if token.text == ")":
            raise self.fail("unexpected ')'", token)
        if token.text != "(":
            node = self.atom(token)
        else:
            head = self.take("a keyword")
            if head.text not in FORMS:
                raise self.fail(f"unknown form {head.text!r}", head)
            cls, sorts = FORMS[head.text]
            args = []
            for i, arg_sort in enumerate(sorts):
                nxt = self.peek()
                # the pair annotation is optional
                if cls is Pair and i == 2 and nxt is not None and nxt.text == ")":
                    break
                args.append(self.expr(arg_sort))
            self.expect_close(head.text)
            node = cls(*args)
        if sort is not None and node.sort != sort:
            raise self.fail(f"expected a {sort.value}, found a {node.sort.value}", token)
        return node

    def atom(self, token: Token) -> Expr:
        if token.text in ATOMS:
            return ATOMS[token.text]
        if token.text in self.defs:
            return self.defs[token.text]
        if token.text in FORMS:
            raise self.fail(f"{token.text!r} must be applied", token)
        raise self.fail(f"unknown name {token.text!r}", token)


def parse_program(text: str) -> Tuple[Dict[str, Expr], Expr]:
    """
    Parse a sequence of forms.

    Returns the definitions and the main expression: the last form that is
    not a definition, or the last definition when every form is one.
    """
    parser = _Parser(text)
    main: Optional[Expr] = None
    last_def: Optional[Expr] = None
    while parser.peek() is not None:
        name, value = parser.form()
        if name is None:
            main = value
        else:
            last_def = value
    result = main if main is not None else last_def
    if result is None:
        raise parser.fail("expected an expression")
    return parser.defs, result


def parse_surface(text: str) -> Expr:
    return parse_program(text)[1]


def print_expr(expr: Expr) -> str:
    """Inverse of parse_surface on single expressions"""
    if type(expr) in ATOM_NAMES:
        return ATOM_NAMES[type(expr)]
    keyword = KEYWORDS.get(type(expr))
    if keyword is None:
        raise TypeError(f"not a syntax node: {expr!r}")
    return "(" + " ".join([keyword] + [print_expr(c) for c in children(expr)]) + ")"
