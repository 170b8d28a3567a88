"""
Finite Standard Model

The meta-circular interpretation of the calculus at finite scale: contexts
are finite lists of environments, types are families of finite semantic
types, terms are families of values. Substitutions act by environment
manipulation (p drops the last entry, q reads it, pairing appends).

Because every semantic type has finitely many values, "equal on every
environment" is decided by enumeration (semantic_equal).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from .checker import check_sub, infer_tm
from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, Con, El, Empty, Eps, Expr, FalseC,
    Fst, Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sort, Sub, SubT, SubTm,
    TrueC, TT, Tm, Ty, UnitCode, UnitT, Univ,
)

logger = logging.getLogger(__name__)


# =============================================================================
# VALUES AND SEMANTIC TYPES
# =============================================================================

class Star(Enum):
    """The single inhabitant of Unit"""
    STAR = "tt"


STAR = Star.STAR


class Code(str, Enum):
    UNIT = "unit-code"
    BOOL = "bool-code"


@dataclass(frozen=True)
class FunValue:
    """A function as its graph, in the enumeration order of its domain"""
    graph: Tuple[Tuple[Any, Any], ...]

    @cached_property
    def _lookup(self) -> Dict[Any, Any]:
        return dict(self.graph)

    def __call__(self, arg: Any) -> Any:
        return self._lookup[arg]


@dataclass(frozen=True)
class PairValue:
    fst: Any
    snd: Any


Env = Tuple[Any, ...]


class SemTy:
    """A finite semantic type"""


@dataclass(frozen=True)
class UnitType(SemTy):
    pass


@dataclass(frozen=True)
class BoolType(SemTy):
    pass


@dataclass(frozen=True)
class UnivType(SemTy):
    pass


@dataclass(frozen=True)
class PiType(SemTy):
    dom: SemTy
    cod: Tuple[Tuple[Any, SemTy], ...]


@dataclass(frozen=True)
class SigmaType(SemTy):
    dom: SemTy
    cod: Tuple[Tuple[Any, SemTy], ...]


@lru_cache(maxsize=4096)
def values(ty: SemTy) -> Tuple[Any, ...]:
    """All values of a semantic type, in a fixed order"""
    match ty:
        case UnitType():
            return (STAR,)
        case BoolType():
            return (False, True)
        case UnivType():
            return (Code.UNIT, Code.BOOL)
        case PiType(dom, cod):
            domain = values(dom)
            fibres = [values(fibre) for _, fibre in cod]
            return tuple(FunValue(tuple(zip(domain, choice))) for choice in product(*fibres))
        case SigmaType(dom, cod):
            return tuple(PairValue(x, y) for x, fibre in cod for y in values(fibre))
    raise TypeError(f"not a semantic type: {ty!r}")


def _family(env: Env, dom: SemTy, body: Ty) -> Tuple[Tuple[Any, SemTy], ...]:
    return tuple((x, eval_ty(body, env + (x,))) for x in values(dom))


# =============================================================================
# EVALUATION
# =============================================================================

def eval_con(con: Con) -> List[Env]:
    """Every environment of a context; the empty context has exactly one"""
    if isinstance(con, Empty):
        return [()]
    return [
        env + (v,)
        for env in eval_con(con.con)
        for v in values(eval_ty(con.ty, env))
    ]


def eval_sub(sub: Sub, env: Env) -> Env:
    match sub:
        case Id():
            return env
        case Comp(sigma, delta):
            return eval_sub(sigma, eval_sub(delta, env))
        case Eps():
            return ()
        case P():
            return env[:-1]
        case Pair(sigma, tm, _):
            return eval_sub(sigma, env) + (eval_tm(tm, env),)
    raise TypeError(f"not a substitution: {sub!r}")


def eval_ty(ty: Ty, env: Env) -> SemTy:
    match ty:
        case SubT(inner, sub):
            return eval_ty(inner, eval_sub(sub, env))
        case UnitT():
            return UnitType()
        case BoolT():
            return BoolType()
        case Univ():
            return UnivType()
        case Pi(dom, cod):
            dom_ty = eval_ty(dom, env)
            return PiType(dom_ty, _family(env, dom_ty, cod))
        case Sigma(dom, cod):
            dom_ty = eval_ty(dom, env)
            return SigmaType(dom_ty, _family(env, dom_ty, cod))
        case El(tm):
            return UnitType() if eval_tm(tm, env) == Code.UNIT else BoolType()
    raise TypeError(f"not a type: {ty!r}")


def eval_tm(tm: Tm, env: Env) -> Any:
    match tm:
        case SubTm(inner, sub):
            return eval_tm(inner, eval_sub(sub, env))
        case Q():
            return env[-1]
        case TT():
            return STAR
        case TrueC():
            return True
        case FalseC():
            return False
        case UnitCode():
            return Code.UNIT
        case BoolCode():
            return Code.BOOL
        case BoolRec(_, if_true, if_false, scrut):
            return eval_tm(if_true if eval_tm(scrut, env) else if_false, env)
        case Lam(dom, _, body):
            return FunValue(tuple((x, eval_tm(body, env + (x,))) for x in values(eval_ty(dom, env))))
        case App(_, _, fn, arg):
            return eval_tm(fn, env)(eval_tm(arg, env))
        case PairTm(_, _, first, second):
            return PairValue(eval_tm(first, env), eval_tm(second, env))
        case Fst(_, _, pair):
            return eval_tm(pair, env).fst
        case Snd(_, _, pair):
            return eval_tm(pair, env).snd
    raise TypeError(f"not a term: {tm!r}")


def semantic_equal(sort: Sort, left: Expr, right: Expr, context: Optional[Con] = None) -> bool:
    """Whether both expressions evaluate identically on every environment"""
    context = context if context is not None else Empty()
    if sort == Sort.CON:
        return eval_con(left) == eval_con(right)
    if sort == Sort.SUB:
        source = check_sub(left)[0]
        return all(eval_sub(left, env) == eval_sub(right, env) for env in eval_con(source))
    if sort == Sort.TY:
        return all(eval_ty(left, env) == eval_ty(right, env) for env in eval_con(context))
    return all(eval_tm(left, env) == eval_tm(right, env) for env in eval_con(context))


# =============================================================================
# DISPLAY
# =============================================================================

def show_value(value: Any) -> str:
    if value is STAR:
        return "tt"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Code):
        return value.value
    if isinstance(value, FunValue):
        return "{" + ", ".join(f"{show_value(x)} ↦ {show_value(y)}" for x, y in value.graph) + "}"
    if isinstance(value, PairValue):
        return f"({show_value(value.fst)}, {show_value(value.snd)})"
    return repr(value)


def show_env(env: Env) -> str:
    return "[" + ", ".join(show_value(v) for v in env) + "]"


def value_table(sort: Sort, expr: Expr, context: Optional[Con] = None) -> List[Dict[str, str]]:
    """Rows of (environment, value) for the eval command"""
    context = context if context is not None else Empty()
    if sort == Sort.CON:
        return [{"env": show_env(env)} for env in eval_con(expr)]
    if sort == Sort.SUB:
        source = check_sub(expr)[0]
        return [{"env": show_env(env), "value": show_env(eval_sub(expr, env))} for env in eval_con(source)]
    if sort == Sort.TY:
        return [
            {"env": show_env(env), "value": f"{len(values(eval_ty(expr, env)))} values"}
            for env in eval_con(context)
        ]
    infer_tm(context, expr)
    return [{"env": show_env(env), "value": show_value(eval_tm(expr, env))} for env in eval_con(context)]
