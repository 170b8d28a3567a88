"""
Raw Syntax

Fully annotated explicit-substitution syntax for the four sorts of a
category with families:

1. Contexts: Empty, Ext
2. Substitutions: Id, Comp, Eps, P, Pair
3. Types: SubT, UnitT, BoolT, Pi, Sigma, Univ, El
4. Terms: SubTm, Q, TT, TrueC, FalseC, BoolRec, Lam, App, PairTm, Fst, Snd,
   BoolCode, UnitCode

Every node is an immutable, hashable dataclass. Substitutions carry enough
annotation to compute their source and target without a context; types and
terms are checked against an explicit context.
"""

from dataclasses import dataclass, fields
from enum import Enum
from typing import Iterator, List, Optional, Tuple


class Sort(str, Enum):
    CON = "con"
    SUB = "sub"
    TY = "ty"
    TM = "tm"


class Expr:
    """Common base of all syntax nodes"""

    sort: Sort

    def __str__(self) -> str:
        from .surface import print_expr

        return print_expr(self)


class Con(Expr):
    sort = Sort.CON


class Sub(Expr):
    sort = Sort.SUB


class Ty(Expr):
    sort = Sort.TY


class Tm(Expr):
    sort = Sort.TM


# =============================================================================
# CONTEXTS
# =============================================================================

@dataclass(frozen=True)
class Empty(Con):
    pass


@dataclass(frozen=True)
class Ext(Con):
    con: Con
    ty: Ty


# =============================================================================
# SUBSTITUTIONS
# =============================================================================

@dataclass(frozen=True)
class Id(Sub):
    con: Con


@dataclass(frozen=True)
class Comp(Sub):
    """sigma ∘ delta"""
    sigma: Sub
    delta: Sub


@dataclass(frozen=True)
class Eps(Sub):
    con: Con


@dataclass(frozen=True)
class P(Sub):
    con: Con
    ty: Ty


@dataclass(frozen=True)
class Pair(Sub):
    """
    (sigma, tm) : Γ -> Δ ▷ ty for sigma : Γ -> Δ and tm : ty[sigma].

    ty may be omitted when the type of tm normalizes to a closed type.
    """
    sigma: Sub
    tm: "Tm"
    ty: Optional[Ty] = None


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True)
class SubT(Ty):
    ty: Ty
    sub: Sub


@dataclass(frozen=True)
class UnitT(Ty):
    pass


@dataclass(frozen=True)
class BoolT(Ty):
    pass


@dataclass(frozen=True)
class Pi(Ty):
    dom: Ty
    cod: Ty


@dataclass(frozen=True)
class Sigma(Ty):
    dom: Ty
    cod: Ty


@dataclass(frozen=True)
class Univ(Ty):
    pass


@dataclass(frozen=True)
class El(Ty):
    tm: "Tm"


# =============================================================================
# TERMS
# =============================================================================

@dataclass(frozen=True)
class SubTm(Tm):
    tm: Tm
    sub: Sub


@dataclass(frozen=True)
class Q(Tm):
    """The last variable: q : Tm (con ▷ ty) (ty[p])"""
    con: Con
    ty: Ty


@dataclass(frozen=True)
class TT(Tm):
    pass


@dataclass(frozen=True)
class TrueC(Tm):
    pass


@dataclass(frozen=True)
class FalseC(Tm):
    pass


@dataclass(frozen=True)
class BoolRec(Tm):
    """Dependent eliminator; motive is a type over Γ ▷ Bool"""
    motive: Ty
    if_true: Tm
    if_false: Tm
    scrut: Tm


@dataclass(frozen=True)
class Lam(Tm):
    dom: Ty
    cod: Ty
    body: Tm


@dataclass(frozen=True)
class App(Tm):
    dom: Ty
    cod: Ty
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class PairTm(Tm):
    dom: Ty
    cod: Ty
    fst: Tm
    snd: Tm


@dataclass(frozen=True)
class Fst(Tm):
    dom: Ty
    cod: Ty
    pair: Tm


@dataclass(frozen=True)
class Snd(Tm):
    dom: Ty
    cod: Ty
    pair: Tm


@dataclass(frozen=True)
class BoolCode(Tm):
    pass


@dataclass(frozen=True)
class UnitCode(Tm):
    pass


# =============================================================================
# TREE UTILITIES
# =============================================================================

def children(expr: Expr) -> List[Expr]:
    """Direct subexpressions in field order (absent annotations skipped)"""
    return [
        value for value in (getattr(expr, f.name) for f in fields(expr))
        if isinstance(value, Expr)
    ]


def child_fields(expr: Expr) -> List[str]:
    return [f.name for f in fields(expr) if isinstance(getattr(expr, f.name), Expr)]


def replace_child(expr: Expr, index: int, new: Expr) -> Expr:
    """Copy of expr with its index-th child replaced"""
    names = child_fields(expr)
    values = {f.name: getattr(expr, f.name) for f in fields(expr)}
    values[names[index]] = new
    return type(expr)(**values)


def subterm(expr: Expr, position: Tuple[int, ...]) -> Expr:
    for index in position:
        expr = children(expr)[index]
    return expr


def positions(expr: Expr, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
    """All child-index paths, preorder"""
    yield prefix
    for i, child in enumerate(children(expr)):
        yield from positions(child, prefix + (i,))


def size(expr: Expr) -> int:
    return 1 + sum(size(child) for child in children(expr))


def con_types(con: Con) -> List[Ty]:
    """Entry types of a context, leftmost first"""
    entries: List[Ty] = []
    while isinstance(con, Ext):
        entries.append(con.ty)
        con = con.con
    entries.reverse()
    return entries


def con_length(con: Con) -> int:
    return len(con_types(con))


def con_from_types(types: List[Ty]) -> Con:
    con: Con = Empty()
    for ty in types:
        con = Ext(con, ty)
    return con


def lift(sub: Sub, source: Con, ty: Ty) -> Sub:
    """
    The weakened substitution (sub ∘ p, q) : source ▷ ty[sub] -> target ▷ ty,
    for sub : source -> target.
    """
    moved = SubT(ty, sub)
    return Pair(Comp(sub, P(source, moved)), Q(source, moved), ty)


def single(con: Con, tm: Tm, ty: Ty) -> Sub:
    """(id, tm) : con -> con ▷ ty"""
    return Pair(Id(con), tm, ty)
