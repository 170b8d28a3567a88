"""
Equation Rewriting

A provable-equality oracle: every rule rewrites one subexpression to a
provably equal one, so both ends of any rewrite chain must be convertible.

1. The twelve category-with-families equations (assoc ... pair-comp)
2. Substitution commutation for every type and term former
3. β for Π, Σ, Bool and El; η for Π, Σ (both ways) and Unit (contraction)

Rules apply at a position (a tuple of child indices, see syntax.positions)
in a direction, "ltr" or "rtl". Rules that need the ambient context (for
example introducing an identity substitution) receive the context of the
rewritten node, computed while walking down to it.
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .checker import check_sub, infer_tm
from .errors import CwfCheckError, RewriteError
from .nbe import nf_con, nf_ty
from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, Con, El, Empty, Eps, Expr, Ext, FalseC,
    Fst, Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sub, SubT, SubTm, TrueC,
    TT, Tm, Ty, UnitCode, UnitT, Univ, children, lift, positions, replace_child,
    single, subterm,
)

logger = logging.getLogger(__name__)

Rule = Callable[[Expr, Con], Optional[Expr]]
Position = Tuple[int, ...]


@dataclass(frozen=True)
class Equation:
    id: str
    description: str
    ltr: Rule
    rtl: Optional[Rule] = None
    core: bool = False


# =============================================================================
# THE TWELVE EQUATIONS
# =============================================================================

def _assoc_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(Comp(sigma, delta), nu):
            return Comp(sigma, Comp(delta, nu))
    return None


def _assoc_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(sigma, Comp(delta, nu)):
            return Comp(Comp(sigma, delta), nu)
    return None


def _idl_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(Id(), sigma):
            return sigma
    return None


def _idl_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    if isinstance(e, Sub):
        return Comp(Id(check_sub(e)[1]), e)
    return None


def _idr_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(sigma, Id()):
            return sigma
    return None


def _idr_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    if isinstance(e, Sub):
        return Comp(e, Id(check_sub(e)[0]))
    return None


def _eps_eta(e: Expr, ctx: Con) -> Optional[Expr]:
    if not isinstance(e, Sub) or isinstance(e, Eps):
        return None
    source, target = check_sub(e)
    if isinstance(nf_con(target), Empty):
        return Eps(source)
    return None


def _ty_id_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubT(ty, Id()):
            return ty
    return None


def _ty_id_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    return SubT(e, Id(ctx)) if isinstance(e, Ty) else None


def _ty_comp_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubT(SubT(ty, sigma), delta):
            return SubT(ty, Comp(sigma, delta))
    return None


def _ty_comp_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubT(ty, Comp(sigma, delta)):
            return SubT(SubT(ty, sigma), delta)
    return None


def _tm_id_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubTm(tm, Id()):
            return tm
    return None


def _tm_id_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    return SubTm(e, Id(ctx)) if isinstance(e, Tm) else None


def _tm_comp_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubTm(SubTm(tm, sigma), delta):
            return SubTm(tm, Comp(sigma, delta))
    return None


def _tm_comp_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubTm(tm, Comp(sigma, delta)):
            return SubTm(SubTm(tm, sigma), delta)
    return None


def _p_beta(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(P(), Pair(sigma, _, _)):
            return sigma
    return None


def _q_beta(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case SubTm(Q(), Pair(_, tm, _)):
            return tm
    return None


def _ext_eta_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Pair(P(con, ty), Q(con2, ty2), annotation) if (con, ty) == (con2, ty2) and annotation in (None, ty):
            return Id(Ext(con, ty))
    return None


def _ext_eta_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Id(Ext(con, ty)):
            return Pair(P(con, ty), Q(con, ty), ty)
    return None


def _pair_comp_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Comp(Pair(sigma, tm, ty), nu):
            return Pair(Comp(sigma, nu), SubTm(tm, nu), ty)
    return None


def _pair_comp_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Pair(Comp(sigma, nu), SubTm(tm, nu2), ty) if nu == nu2:
            return Comp(Pair(sigma, tm, ty), nu)
    return None


# =============================================================================
# TYPE FORMERS
# =============================================================================

def _ty_sub(e: Expr, ctx: Con) -> Optional[Expr]:
    if not isinstance(e, SubT):
        return None
    sub = e.sub
    match e.ty:
        case UnitT() | BoolT() | Univ():
            return e.ty
        case Pi(dom, cod):
            source = check_sub(sub)[0]
            return Pi(SubT(dom, sub), SubT(cod, lift(sub, source, dom)))
        case Sigma(dom, cod):
            source = check_sub(sub)[0]
            return Sigma(SubT(dom, sub), SubT(cod, lift(sub, source, dom)))
        case El(tm):
            return El(SubTm(tm, sub))
    return None


def _tm_sub(e: Expr, ctx: Con) -> Optional[Expr]:
    if not isinstance(e, SubTm):
        return None
    sub = e.sub

    def binder(dom: Ty, cod: Ty) -> Tuple[Ty, Ty, Sub]:
        lifted = lift(sub, check_sub(sub)[0], dom)
        return SubT(dom, sub), SubT(cod, lifted), lifted

    match e.tm:
        case TT() | TrueC() | FalseC() | UnitCode() | BoolCode():
            return e.tm
        case Lam(dom, cod, body):
            dom2, cod2, lifted = binder(dom, cod)
            return Lam(dom2, cod2, SubTm(body, lifted))
        case App(dom, cod, fn, arg):
            dom2, cod2, _ = binder(dom, cod)
            return App(dom2, cod2, SubTm(fn, sub), SubTm(arg, sub))
        case PairTm(dom, cod, first, second):
            dom2, cod2, _ = binder(dom, cod)
            return PairTm(dom2, cod2, SubTm(first, sub), SubTm(second, sub))
        case Fst(dom, cod, pair):
            dom2, cod2, _ = binder(dom, cod)
            return Fst(dom2, cod2, SubTm(pair, sub))
        case Snd(dom, cod, pair):
            dom2, cod2, _ = binder(dom, cod)
            return Snd(dom2, cod2, SubTm(pair, sub))
        case BoolRec(motive, if_true, if_false, scrut):
            lifted = lift(sub, check_sub(sub)[0], BoolT())
            return BoolRec(
                SubT(motive, lifted), SubTm(if_true, sub), SubTm(if_false, sub), SubTm(scrut, sub)
            )
    return None


def _pi_beta(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case App(dom, _, Lam(_, _, body), arg):
            return SubTm(body, single(ctx, arg, dom))
    return None


def _sigma_beta(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Fst(_, _, PairTm(_, _, first, _)):
            return first
        case Snd(_, _, PairTm(_, _, _, second)):
            return second
    return None


def _bool_beta(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case BoolRec(_, if_true, _, TrueC()):
            return if_true
        case BoolRec(_, _, if_false, FalseC()):
            return if_false
    return None


def _el_beta_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case El(UnitCode()):
            return UnitT()
        case El(BoolCode()):
            return BoolT()
    return None


def _el_beta_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case UnitT():
            return El(UnitCode())
        case BoolT():
            return El(BoolCode())
    return None


def _pi_eta_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case Lam(_, _, App(_, _, SubTm(fn, P(con, ty)), Q(con2, ty2))) if (con, ty) == (con2, ty2):
            return fn
    return None


def _normal_type(e: Expr, ctx: Con) -> Optional[Ty]:
    if not isinstance(e, Tm):
        return None
    return nf_ty(ctx, infer_tm(ctx, e))


def _pi_eta_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    ty = _normal_type(e, ctx)
    if not isinstance(ty, Pi) or isinstance(e, Lam):
        return None
    weaken = P(ctx, ty.dom)
    return Lam(
        ty.dom,
        ty.cod,
        App(
            SubT(ty.dom, weaken),
            SubT(ty.cod, lift(weaken, Ext(ctx, ty.dom), ty.dom)),
            SubTm(e, weaken),
            Q(ctx, ty.dom),
        ),
    )


def _sigma_eta_ltr(e: Expr, ctx: Con) -> Optional[Expr]:
    match e:
        case PairTm(_, _, Fst(_, _, pair), Snd(_, _, pair2)) if pair == pair2:
            return pair
    return None


def _sigma_eta_rtl(e: Expr, ctx: Con) -> Optional[Expr]:
    ty = _normal_type(e, ctx)
    if not isinstance(ty, Sigma) or isinstance(e, PairTm):
        return None
    return PairTm(ty.dom, ty.cod, Fst(ty.dom, ty.cod, e), Snd(ty.dom, ty.cod, e))


def _unit_eta(e: Expr, ctx: Con) -> Optional[Expr]:
    if isinstance(e, TT):
        return None
    return TT() if isinstance(_normal_type(e, ctx), UnitT) else None


EQUATIONS: Dict[str, Equation] = {
    eq.id: eq
    for eq in [
        Equation("assoc", "(σ∘δ)∘ν = σ∘(δ∘ν)", _assoc_ltr, _assoc_rtl, core=True),
        Equation("idl", "id∘σ = σ", _idl_ltr, _idl_rtl, core=True),
        Equation("idr", "σ∘id = σ", _idr_ltr, _idr_rtl, core=True),
        Equation("eps-eta", "σ = ε for σ into the empty context", _eps_eta, core=True),
        Equation("ty-id", "A[id] = A", _ty_id_ltr, _ty_id_rtl, core=True),
        Equation("ty-comp", "A[σ][δ] = A[σ∘δ]", _ty_comp_ltr, _ty_comp_rtl, core=True),
        Equation("tm-id", "t[id] = t", _tm_id_ltr, _tm_id_rtl, core=True),
        Equation("tm-comp", "t[σ][δ] = t[σ∘δ]", _tm_comp_ltr, _tm_comp_rtl, core=True),
        Equation("p-beta", "p∘(σ, t) = σ", _p_beta, core=True),
        Equation("q-beta", "q[σ, t] = t", _q_beta, core=True),
        Equation("ext-eta", "(p, q) = id", _ext_eta_ltr, _ext_eta_rtl, core=True),
        Equation("pair-comp", "(σ, t)∘ν = (σ∘ν, t[ν])", _pair_comp_ltr, _pair_comp_rtl, core=True),
        Equation("ty-sub", "type formers commute with substitution", _ty_sub),
        Equation("tm-sub", "term formers commute with substitution", _tm_sub),
        Equation("pi-beta", "app (lam t) u = t[id, u]", _pi_beta),
        Equation("sigma-beta", "fst (a, b) = a and snd (a, b) = b", _sigma_beta),
        Equation("bool-beta", "boolrec on a literal picks its branch", _bool_beta),
        Equation("el-beta", "El unit-code = Unit and El bool-code = Bool", _el_beta_ltr, _el_beta_rtl),
        Equation("pi-eta", "lam (app t[p] q) = t", _pi_eta_ltr, _pi_eta_rtl),
        Equation("sigma-eta", "(fst t, snd t) = t", _sigma_eta_ltr, _sigma_eta_rtl),
        Equation("unit-eta", "t = tt at Unit", _unit_eta),
    ]
}

CORE_EQUATIONS = [eq_id for eq_id, eq in EQUATIONS.items() if eq.core]


# =============================================================================
# NAVIGATION
# =============================================================================

def _child_context(expr: Expr, index: int, ctx: Con) -> Con:
    """Context of the index-th child of expr, given the context of expr"""
    match expr:
        case Ext(con, _) | P(con, _) | Q(con, _):
            return con
        case Pair(sigma, _, _):
            source, target = check_sub(sigma)
            return source if index == 1 else target
        case SubT(_, sub) | SubTm(_, sub):
            return check_sub(sub)[1] if index == 0 else ctx
        case Pi(dom, _) | Sigma(dom, _):
            return Ext(ctx, dom) if index == 1 else ctx
        case Lam(dom, _, _):
            return Ext(ctx, dom) if index >= 1 else ctx
        case App(dom, _, _, _) | PairTm(dom, _, _, _) | Fst(dom, _, _) | Snd(dom, _, _):
            return Ext(ctx, dom) if index == 1 else ctx
        case BoolRec():
            return Ext(ctx, BoolT()) if index == 0 else ctx
    return ctx


def context_at(expr: Expr, position: Position, context: Optional[Con] = None) -> Con:
    ctx = context if context is not None else Empty()
    for index in position:
        ctx = _child_context(expr, index, ctx)
        expr = children(expr)[index]
    return ctx


def rewrite_step(
    expr: Expr,
    eq_id: str,
    position: Position = (),
    direction: str = "ltr",
    context: Optional[Con] = None,
) -> Expr:
    """Apply one equation at position; raises RewriteError when it does not match"""
    equation = EQUATIONS.get(eq_id)
    if equation is None:
        raise RewriteError(f"unknown equation {eq_id!r}")
    if direction not in ("ltr", "rtl"):
        raise RewriteError(f"direction must be 'ltr' or 'rtl', got {direction!r}")
    rule = equation.ltr if direction == "ltr" else equation.rtl
    if rule is None:
        raise RewriteError(f"equation {eq_id} has no right-to-left rule")
    try:
        target = subterm(expr, position)
    except IndexError:
        raise RewriteError(f"no subexpression at position {list(position)}")
    rewritten = rule(target, context_at(expr, position, context))
    if rewritten is None:
        raise RewriteError(
            f"{eq_id} ({direction}) does not match at position {list(position)}",
            {"equation": eq_id, "position": list(position)},
        )
    return _replace_at(expr, position, rewritten)


def _replace_at(expr: Expr, position: Position, new: Expr) -> Expr:
    if not position:
        return new
    head, rest = position[0], position[1:]
    return replace_child(expr, head, _replace_at(children(expr)[head], rest, new))


# =============================================================================
# RANDOM CHAINS
# =============================================================================

@dataclass(frozen=True)
class RewriteStep:
    equation: str
    position: Position
    direction: str

    def to_dict(self) -> Dict[str, object]:
        return {"equation": self.equation, "position": list(self.position), "direction": self.direction}


def _rules() -> List[Tuple[str, str]]:
    rules = []
    for eq_id, eq in EQUATIONS.items():
        rules.append((eq_id, "ltr"))
        if eq.rtl is not None:
            rules.append((eq_id, "rtl"))
    return rules


def random_rewrite_chain(
    expr: Expr,
    length: int,
    rng: random.Random,
    context: Optional[Con] = None,
) -> Tuple[Expr, List[RewriteStep]]:
    """
    Up to length random rewrites; stops early when nothing applies.

    Each step picks a random position, then tries the rules in random order.
    """
    steps: List[RewriteStep] = []
    rules = _rules()
    for _ in range(length):
        candidates = list(positions(expr))
        rng.shuffle(candidates)
        applied = False
        for position in candidates:
            order = rules[:]
            rng.shuffle(order)
            for eq_id, direction in order:
                try:
                    expr = rewrite_step(expr, eq_id, position, direction, context)
                except RewriteError:
                    continue
                except CwfCheckError as e:
                    # a rule needing a type could not infer one at this node
                    logger.debug(f"{eq_id} skipped at {list(position)}: {e}")
                    continue
                steps.append(RewriteStep(eq_id, position, direction))
                applied = True
                break
            if applied:
                break
        if not applied:
            break
    return expr, steps
