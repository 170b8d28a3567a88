"""
Well-Formedness and Conversion

Syntax-directed checking for the explicit-substitution calculus:

1. check_con / check_ty / check_sub / check_tm and infer_tm
2. normalize for every sort, via nbe
3. convertible: structural equality of normal forms

Errors carry the path of field names from the root to the offending node.
Type mismatches show both sides in normal form.
"""

import logging
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterator, Optional, Tuple, Union

from .errors import IllFormedError, TypeMismatchError
from .nbe import context_values, eval_ty, mentions_below, nf_con, nf_sub, nf_tm, nf_ty, read_ty, rebase_ty
from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, Con, El, Empty, Eps, Expr, Ext, FalseC,
    Fst, Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sort, Sub, SubT, SubTm,
    TrueC, TT, Tm, Ty, UnitCode, UnitT, Univ, single,
)

logger = logging.getLogger(__name__)


@contextmanager
def _at(label: str) -> Iterator[None]:
    try:
        yield
    except IllFormedError as e:
        raise e.with_prefix(label) from None


def _same_con(expected: Con, actual: Con, what: str) -> None:
    if nf_con(expected) != nf_con(actual):
        raise IllFormedError(f"{what}: expected context {nf_con(expected)}, got {nf_con(actual)}")


def _same_ty(con: Con, expected: Ty, actual: Ty) -> None:
    expected_nf, actual_nf = nf_ty(con, expected), nf_ty(con, actual)
    if expected_nf != actual_nf:
        raise TypeMismatchError(expected_nf, actual_nf)


# =============================================================================
# CHECKING (contexts are assumed well-formed below the public entry points)
# =============================================================================

@lru_cache(maxsize=65536)
def _con(con: Con) -> None:
    if isinstance(con, Empty):
        return
    if isinstance(con, Ext):
        with _at("Ext.con"):
            _con(con.con)
        with _at("Ext.ty"):
            _ty(con.con, con.ty)
        return
    raise IllFormedError(f"not a context: {type(con).__name__}")


@lru_cache(maxsize=65536)
def _ty(con: Con, ty: Ty) -> None:
    match ty:
        case SubT(inner, sub):
            with _at("SubT.sub"):
                source, target = _sub(sub)
                _same_con(con, source, "substitution source")
            with _at("SubT.ty"):
                _ty(target, inner)
        case UnitT() | BoolT() | Univ():
            return
        case Pi(dom, cod) | Sigma(dom, cod):
            label = type(ty).__name__
            with _at(f"{label}.dom"):
                _ty(con, dom)
            with _at(f"{label}.cod"):
                _ty(Ext(con, dom), cod)
        case El(tm):
            with _at("El.tm"):
                _check(con, Univ(), tm)
        case _:
            raise IllFormedError(f"not a type: {type(ty).__name__}")


@lru_cache(maxsize=65536)
def _sub(sub: Sub) -> Tuple[Con, Con]:
    match sub:
        case Id(con):
            with _at("Id.con"):
                _con(con)
            return con, con
        case Comp(sigma, delta):
            with _at("Comp.sigma"):
                sigma_source, sigma_target = _sub(sigma)
            with _at("Comp.delta"):
                delta_source, delta_target = _sub(delta)
                _same_con(sigma_source, delta_target, "composite middle")
            return delta_source, sigma_target
        case Eps(con):
            with _at("Eps.con"):
                _con(con)
            return con, Empty()
        case P(con, ty):
            with _at("P.con"):
                _con(con)
            with _at("P.ty"):
                _ty(con, ty)
            return Ext(con, ty), con
        case Pair(sigma, tm, None):
            with _at("Pair.sigma"):
                source, target = _sub(sigma)
            with _at("Pair.tm"):
                ty = _infer(source, tm)
                return source, Ext(target, closed_target_type(source, ty, target))
        case Pair(sigma, tm, ty):
            with _at("Pair.sigma"):
                source, target = _sub(sigma)
            with _at("Pair.ty"):
                _ty(target, ty)
            with _at("Pair.tm"):
                _check(source, SubT(ty, sigma), tm)
            return source, Ext(target, ty)
    raise IllFormedError(f"not a substitution: {type(sub).__name__}")


def closed_target_type(source: Con, ty: Ty, target: Con) -> Ty:
    """The annotation an unannotated pair stands for, if its term's type is closed"""
    ctx, env = context_values(source)
    ty_nf = read_ty(ctx, eval_ty(ty, env))
    if mentions_below(ty_nf, len(ctx)):
        raise IllFormedError(
            f"pair needs a type annotation: the type {ty_nf} of its term depends on the context"
        )
    return rebase_ty(source, ty, target)


@lru_cache(maxsize=65536)
def _infer(con: Con, tm: Tm) -> Ty:
    match tm:
        case SubTm(inner, sub):
            with _at("SubTm.sub"):
                source, target = _sub(sub)
                _same_con(con, source, "substitution source")
            with _at("SubTm.tm"):
                return SubT(_infer(target, inner), sub)
        case Q(prefix, ty):
            with _at("Q.con"):
                _con(prefix)
            with _at("Q.ty"):
                _ty(prefix, ty)
            _same_con(con, Ext(prefix, ty), "variable context")
            return SubT(ty, P(prefix, ty))
        case TT():
            return UnitT()
        case TrueC() | FalseC():
            return BoolT()
        case UnitCode() | BoolCode():
            return Univ()
        case BoolRec(motive, if_true, if_false, scrut):
            with _at("BoolRec.motive"):
                _ty(Ext(con, BoolT()), motive)
            with _at("BoolRec.if_true"):
                _check(con, SubT(motive, single(con, TrueC(), BoolT())), if_true)
            with _at("BoolRec.if_false"):
                _check(con, SubT(motive, single(con, FalseC(), BoolT())), if_false)
            with _at("BoolRec.scrut"):
                _check(con, BoolT(), scrut)
            return SubT(motive, single(con, scrut, BoolT()))
        case Lam(dom, cod, body):
            _binder_types(con, "Lam", dom, cod)
            with _at("Lam.body"):
                _check(Ext(con, dom), cod, body)
            return Pi(dom, cod)
        case App(dom, cod, fn, arg):
            _binder_types(con, "App", dom, cod)
            with _at("App.fn"):
                _check(con, Pi(dom, cod), fn)
            with _at("App.arg"):
                _check(con, dom, arg)
            return SubT(cod, single(con, arg, dom))
        case PairTm(dom, cod, first, second):
            _binder_types(con, "PairTm", dom, cod)
            with _at("PairTm.fst"):
                _check(con, dom, first)
            with _at("PairTm.snd"):
                _check(con, SubT(cod, single(con, first, dom)), second)
            return Sigma(dom, cod)
        case Fst(dom, cod, pair):
            _binder_types(con, "Fst", dom, cod)
            with _at("Fst.pair"):
                _check(con, Sigma(dom, cod), pair)
            return dom
        case Snd(dom, cod, pair):
            _binder_types(con, "Snd", dom, cod)
            with _at("Snd.pair"):
                _check(con, Sigma(dom, cod), pair)
            return SubT(cod, single(con, Fst(dom, cod, pair), dom))
    raise IllFormedError(f"not a term: {type(tm).__name__}")


def _binder_types(con: Con, label: str, dom: Ty, cod: Ty) -> None:
    with _at(f"{label}.dom"):
        _ty(con, dom)
    with _at(f"{label}.cod"):
        _ty(Ext(con, dom), cod)


def _check(con: Con, ty: Ty, tm: Tm) -> None:
    _same_ty(con, ty, _infer(con, tm))


# =============================================================================
# PUBLIC CHECKS
# =============================================================================

def check_con(con: Con) -> None:
    _con(con)


def check_ty(con: Con, ty: Ty) -> None:
    with _at("context"):
        _con(con)
    _ty(con, ty)


def check_sub(sub: Sub) -> Tuple[Con, Con]:
    """Source and target of a well-formed substitution"""
    return _sub(sub)


def infer_tm(con: Con, tm: Tm) -> Ty:
    with _at("context"):
        _con(con)
    return _infer(con, tm)


def check_tm(con: Con, ty: Ty, tm: Tm) -> None:
    check_ty(con, ty)
    _check(con, ty, tm)


def check(sort: Sort, expr: Expr, context: Optional[Con] = None) -> Union[None, Ty, Tuple[Con, Con]]:
    """
    Well-formedness of any expression; returns what the check computes
    (the inferred type of a term, source and target of a substitution).
    """
    context = context if context is not None else Empty()
    if sort == Sort.CON:
        return check_con(expr)
    if sort == Sort.SUB:
        return check_sub(expr)
    if sort == Sort.TY:
        return check_ty(context, expr)
    return infer_tm(context, expr)


# =============================================================================
# NORMALIZATION AND CONVERSION
# =============================================================================

def normalize_con(con: Con) -> Con:
    check_con(con)
    return nf_con(con)


def normalize_ty(con: Con, ty: Ty) -> Ty:
    check_ty(con, ty)
    return nf_ty(con, ty)


def normalize_sub(sub: Sub) -> Sub:
    source, target = check_sub(sub)
    return nf_sub(sub, source, target)


def normalize_tm(con: Con, tm: Tm) -> Tm:
    return nf_tm(con, infer_tm(con, tm), tm)


def normalize(sort: Sort, expr: Expr, context: Optional[Con] = None) -> Expr:
    context = context if context is not None else Empty()
    if sort == Sort.CON:
        return normalize_con(expr)
    if sort == Sort.SUB:
        return normalize_sub(expr)
    if sort == Sort.TY:
        return normalize_ty(context, expr)
    return normalize_tm(context, expr)


def convertible(sort: Sort, left: Expr, right: Expr, context: Optional[Con] = None) -> bool:
    """Decide equality in the theory; both sides must live over the same indices"""
    context = context if context is not None else Empty()
    if sort == Sort.CON:
        return normalize_con(left) == normalize_con(right)
    if sort == Sort.SUB:
        left_source, left_target = check_sub(left)
        right_source, right_target = check_sub(right)
        with _at("index"):
            _same_con(left_source, right_source, "index mismatch on source")
            _same_con(left_target, right_target, "index mismatch on target")
        return nf_sub(left, left_source, left_target) == nf_sub(right, left_source, left_target)
    if sort == Sort.TY:
        return normalize_ty(context, left) == normalize_ty(context, right)
    left_ty = infer_tm(context, left)
    right_ty = infer_tm(context, right)
    with _at("index"):
        _same_ty(context, left_ty, right_ty)
    return nf_tm(context, left_ty, left) == nf_tm(context, left_ty, right)


def convertible_con(left: Con, right: Con) -> bool:
    return nf_con(left) == nf_con(right)


def is_empty_con(con: Con) -> bool:
    return isinstance(nf_con(con), Empty)
