"""
Normalization by Evaluation

Evaluates well-formed syntax into a semantic domain of values, closures
and typed neutrals, then reads values back into β-normal, η-long,
substitution-free normal forms.

Variables are de Bruijn levels at runtime and are read back as the spine
q[p ∘ ... ∘ p] with every annotation in normal form, so two expressions are
convertible exactly when their normal forms are structurally equal.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, Con, El, Empty, Eps, Expr, FalseC, Fst,
    Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sub, SubT, SubTm, TrueC, TT,
    Tm, Ty, UnitCode, UnitT, Univ, children, con_from_types, con_types,
)

logger = logging.getLogger(__name__)


# =============================================================================
# SEMANTIC DOMAIN
# =============================================================================

class Value:
    """Semantic types and terms share one domain"""


class Neutral:
    """A stuck eliminator spine headed by a variable"""


Env = Tuple[Value, ...]


@dataclass(frozen=True)
class Closure:
    env: Env
    body: Expr

    def ty(self, arg: Value) -> Value:
        return eval_ty(self.body, self.env + (arg,))

    def tm(self, arg: Value) -> Value:
        return eval_tm(self.body, self.env + (arg,))


@dataclass(frozen=True)
class VUnit(Value):
    pass


@dataclass(frozen=True)
class VBool(Value):
    pass


@dataclass(frozen=True)
class VUniv(Value):
    pass


@dataclass(frozen=True)
class VPi(Value):
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class VSigma(Value):
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class VEl(Value):
    code: Neutral


@dataclass(frozen=True)
class VTT(Value):
    pass


@dataclass(frozen=True)
class VTrue(Value):
    pass


@dataclass(frozen=True)
class VFalse(Value):
    pass


@dataclass(frozen=True)
class VUnitCode(Value):
    pass


@dataclass(frozen=True)
class VBoolCode(Value):
    pass


@dataclass(frozen=True)
class VLam(Value):
    body: Closure


@dataclass(frozen=True)
class VPair(Value):
    fst: Value
    snd: Value


@dataclass(frozen=True)
class VNe(Value):
    ne: Neutral


@dataclass(frozen=True)
class NVar(Neutral):
    level: int


@dataclass(frozen=True)
class NApp(Neutral):
    head: Neutral
    arg: Value
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class NFst(Neutral):
    head: Neutral
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class NSnd(Neutral):
    head: Neutral
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class NBoolRec(Neutral):
    motive: Closure
    if_true: Value
    if_false: Value
    head: Neutral


# =============================================================================
# EVALUATION
# =============================================================================

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


def eval_ty(ty: Ty, env: Env) -> Value:
    match ty:
        case SubT(inner, sub):
            return eval_ty(inner, eval_sub(sub, env))
        case UnitT():
            return VUnit()
        case BoolT():
            return VBool()
        case Univ():
            return VUniv()
        case Pi(dom, cod):
            return VPi(eval_ty(dom, env), Closure(env, cod))
        case Sigma(dom, cod):
            return VSigma(eval_ty(dom, env), Closure(env, cod))
        case El(tm):
            return decode(eval_tm(tm, env))
    raise TypeError(f"not a type: {ty!r}")


def decode(code: Value) -> Value:
    """El on a code value"""
    match code:
        case VUnitCode():
            return VUnit()
        case VBoolCode():
            return VBool()
        case VNe(ne):
            return VEl(ne)
    raise TypeError(f"not a code: {code!r}")


def eval_tm(tm: Tm, env: Env) -> Value:
    match tm:
        case SubTm(inner, sub):
            return eval_tm(inner, eval_sub(sub, env))
        case Q():
            return env[-1]
        case TT():
            return VTT()
        case TrueC():
            return VTrue()
        case FalseC():
            return VFalse()
        case UnitCode():
            return VUnitCode()
        case BoolCode():
            return VBoolCode()
        case BoolRec(motive, if_true, if_false, scrut):
            return do_bool_rec(
                Closure(env, motive), eval_tm(if_true, env), eval_tm(if_false, env), eval_tm(scrut, env)
            )
        case Lam(_, _, body):
            return VLam(Closure(env, body))
        case App(dom, cod, fn, arg):
            fn_value = eval_tm(fn, env)
            if isinstance(fn_value, VLam):
                return fn_value.body.tm(eval_tm(arg, env))
            return do_app(fn_value, eval_tm(arg, env), eval_ty(dom, env), Closure(env, cod))
        case PairTm(_, _, first, second):
            return VPair(eval_tm(first, env), eval_tm(second, env))
        case Fst(dom, cod, pair):
            value = eval_tm(pair, env)
            if isinstance(value, VPair):
                return value.fst
            return do_fst(value, eval_ty(dom, env), Closure(env, cod))
        case Snd(dom, cod, pair):
            value = eval_tm(pair, env)
            if isinstance(value, VPair):
                return value.snd
            return do_snd(value, eval_ty(dom, env), Closure(env, cod))
    raise TypeError(f"not a term: {tm!r}")


def do_app(fn: Value, arg: Value, dom: Value, cod: Closure) -> Value:
    if isinstance(fn, VLam):
        return fn.body.tm(arg)
    if isinstance(fn, VNe):
        return VNe(NApp(fn.ne, arg, dom, cod))
    raise TypeError(f"cannot apply {fn!r}")


def do_fst(pair: Value, dom: Value, cod: Closure) -> Value:
    if isinstance(pair, VPair):
        return pair.fst
    if isinstance(pair, VNe):
        return VNe(NFst(pair.ne, dom, cod))
    raise TypeError(f"cannot project from {pair!r}")


def do_snd(pair: Value, dom: Value, cod: Closure) -> Value:
    if isinstance(pair, VPair):
        return pair.snd
    if isinstance(pair, VNe):
        return VNe(NSnd(pair.ne, dom, cod))
    raise TypeError(f"cannot project from {pair!r}")


def do_bool_rec(motive: Closure, if_true: Value, if_false: Value, scrut: Value) -> Value:
    match scrut:
        case VTrue():
            return if_true
        case VFalse():
            return if_false
        case VNe(ne):
            return VNe(NBoolRec(motive, if_true, if_false, ne))
    raise TypeError(f"cannot eliminate {scrut!r} as a boolean")


# =============================================================================
# READ-BACK
# =============================================================================

# Normal entry types of the context being read back into, leftmost first
ReadCtx = Tuple[Ty, ...]


def fresh(ctx: ReadCtx) -> Value:
    return VNe(NVar(len(ctx)))


def var_term(ctx: ReadCtx, level: int) -> Tm:
    """q[p ∘ (p ∘ ...)] for the variable at the given level, annotations normal"""
    q = Q(con_from_types(list(ctx[:level])), ctx[level])
    weakening: Optional[Sub] = None
    for j in range(len(ctx) - 1, level, -1):
        p = P(con_from_types(list(ctx[:j])), ctx[j])
        weakening = p if weakening is None else Comp(p, weakening)
    return q if weakening is None else SubTm(q, weakening)


def read_ty(ctx: ReadCtx, ty: Value) -> Ty:
    match ty:
        case VUnit():
            return UnitT()
        case VBool():
            return BoolT()
        case VUniv():
            return Univ()
        case VPi(dom, cod):
            dom_nf = read_ty(ctx, dom)
            return Pi(dom_nf, read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))))
        case VSigma(dom, cod):
            dom_nf = read_ty(ctx, dom)
            return Sigma(dom_nf, read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))))
        case VEl(code):
            return El(read_ne(ctx, code))
    raise TypeError(f"not a semantic type: {ty!r}")


def read_tm(ctx: ReadCtx, ty: Value, value: Value) -> Tm:
    """Type-directed, η-long read-back"""
    match ty:
        case VPi(dom, cod):
            x = fresh(ctx)
            dom_nf = read_ty(ctx, dom)
            inner = ctx + (dom_nf,)
            cod_value = cod.ty(x)
            return Lam(dom_nf, read_ty(inner, cod_value), read_tm(inner, cod_value, do_app(value, x, dom, cod)))
        case VSigma(dom, cod):
            first = do_fst(value, dom, cod)
            second = do_snd(value, dom, cod)
            dom_nf = read_ty(ctx, dom)
            return PairTm(
                dom_nf,
                read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))),
                read_tm(ctx, dom, first),
                read_tm(ctx, cod.ty(first), second),
            )
        case VUnit():
            return TT()
    match value:
        case VTrue():
            return TrueC()
        case VFalse():
            return FalseC()
        case VUnitCode():
            return UnitCode()
        case VBoolCode():
            return BoolCode()
        case VNe(ne):
            return read_ne(ctx, ne)
    raise TypeError(f"cannot read back {value!r} at {ty!r}")


def read_ne(ctx: ReadCtx, ne: Neutral) -> Tm:
    match ne:
        case NVar(level):
            return var_term(ctx, level)
        case NApp(head, arg, dom, cod):
            dom_nf = read_ty(ctx, dom)
            return App(
                dom_nf,
                read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))),
                read_ne(ctx, head),
                read_tm(ctx, dom, arg),
            )
        case NFst(head, dom, cod):
            dom_nf = read_ty(ctx, dom)
            return Fst(dom_nf, read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))), read_ne(ctx, head))
        case NSnd(head, dom, cod):
            dom_nf = read_ty(ctx, dom)
            return Snd(dom_nf, read_ty(ctx + (dom_nf,), cod.ty(fresh(ctx))), read_ne(ctx, head))
        case NBoolRec(motive, if_true, if_false, head):
            return BoolRec(
                read_ty(ctx + (BoolT(),), motive.ty(fresh(ctx))),
                read_tm(ctx, motive.ty(VTrue()), if_true),
                read_tm(ctx, motive.ty(VFalse()), if_false),
                read_ne(ctx, head),
            )
    raise TypeError(f"not a neutral: {ne!r}")


# =============================================================================
# NORMAL FORMS OF WELL-FORMED EXPRESSIONS
# =============================================================================

@lru_cache(maxsize=4096)
def context_values(con: Con) -> Tuple[ReadCtx, Env]:
    """Normal entry types and the generic environment of a well-formed context"""
    ctx: ReadCtx = ()
    env: Env = ()
    for ty in con_types(con):
        ctx = ctx + (read_ty(ctx, eval_ty(ty, env)),)
        env = env + (VNe(NVar(len(env))),)
    return ctx, env


def nf_con(con: Con) -> Con:
    ctx, _ = context_values(con)
    return con_from_types(list(ctx))


def nf_ty(con: Con, ty: Ty) -> Ty:
    ctx, env = context_values(con)
    return read_ty(ctx, eval_ty(ty, env))


def nf_tm(con: Con, ty: Ty, tm: Tm) -> Tm:
    ctx, env = context_values(con)
    return read_tm(ctx, eval_ty(ty, env), eval_tm(tm, env))


def nf_sub(sub: Sub, source: Con, target: Con) -> Sub:
    """Iterated pairs over ε, one normal entry per target variable"""
    ctx, env = context_values(source)
    image = eval_sub(sub, env)
    target_ctx, _ = context_values(target)
    result: Sub = Eps(con_from_types(list(ctx)))
    for i, (ty, ty_nf) in enumerate(zip(con_types(target), target_ctx)):
        result = Pair(result, read_tm(ctx, eval_ty(ty, image[:i]), image[i]), ty_nf)
    return result


def rebase_ty(source: Con, ty: Ty, target: Con) -> Ty:
    """
    Read a type of the source context back in the target context.

    Only meaningful when the type does not mention source variables.
    """
    _, env = context_values(source)
    target_ctx, _ = context_values(target)
    return read_ty(target_ctx, eval_ty(ty, env))


def mentions_below(expr: Expr, length: int) -> bool:
    """Whether a normal form refers to a variable at a level below length"""
    if isinstance(expr, Q):
        return len(con_types(expr.con)) < length
    if isinstance(expr, (P, Con)):
        return False
    if isinstance(expr, SubTm):
        return mentions_below(expr.tm, length)
    return any(mentions_below(child, length) for child in children(expr))


def is_empty_nf(con: Con) -> bool:
    return isinstance(nf_con(con), Empty)
