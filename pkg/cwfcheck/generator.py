"""
Random Well-Formed Syntax

Seeded generation of well-formed contexts, substitutions, types and terms.
Constructor choice is weighted towards explicit substitutions (SubT, SubTm,
Comp, Pair, P) so the equations that mention them are exercised.

Every candidate term is confirmed by the checker before it is returned, and
every semantic type stays small (at most 16 values, and no more environments
per context than Settings.max_context_environments) so the finite standard
model can evaluate the output exhaustively.
"""

import logging
import random
from typing import List, Optional, Tuple

from .checker import check_tm
from .config import Settings, get_settings
from .errors import CwfCheckError
from .nbe import context_values, mentions_below, nf_ty, rebase_ty
from .syntax import (
    App, BoolCode, BoolRec, BoolT, Comp, Con, El, Empty, Eps, Expr, Ext, FalseC,
    Fst, Id, Lam, P, Pair, PairTm, Pi, Q, Sigma, Snd, Sort, Sub, SubT, SubTm,
    TrueC, TT, Tm, Ty, UnitCode, UnitT, Univ, con_types, single,
)

logger = logging.getLogger(__name__)

MAX_CONTEXT_LENGTH = 3
MAX_TYPE_VALUES = 16


class NoInhabitant(Exception):
    """The generator found no term of the requested type"""


def value_bound(ty_nf: Ty) -> int:
    """Upper bound on the number of values of a normal type in any environment"""
    match ty_nf:
        case UnitT():
            return 1
        case BoolT() | Univ() | El():
            return 2
        case Pi(dom, cod):
            return value_bound(cod) ** value_bound(dom)
        case Sigma(dom, cod):
            return value_bound(dom) * value_bound(cod)
    return MAX_TYPE_VALUES + 1


def environment_bound(con: Con) -> int:
    ctx, _ = context_values(con)
    total = 1
    for ty in ctx:
        total *= value_bound(ty)
    return total


def variable_term(con: Con, level: int) -> Tm:
    """The variable at level as q weakened by a chain of p, annotations taken from con"""
    prefixes = []
    current = con
    while isinstance(current, Ext):
        prefixes.append(current)
        current = current.con
    prefixes.reverse()
    entry = prefixes[level]
    term: Tm = Q(entry.con, entry.ty)
    weakening: Optional[Sub] = None
    for ext in prefixes[level + 1:]:
        p = P(ext.con, ext.ty)
        weakening = p if weakening is None else Comp(weakening, p)
    return term if weakening is None else SubTm(term, weakening)


class Generator:
    """A budgeted random walk over the well-formed fragment"""

    def __init__(self, rng: random.Random, budget: int, settings: Optional[Settings] = None):
        self.rng = rng
        self.fuel = budget
        self.max_environments = (settings or get_settings()).max_context_environments

    def spend(self, amount: int = 1) -> bool:
        if self.fuel < amount:
            return False
        self.fuel -= amount
        return True

    # -------------------------------------------------------------------------
    # Contexts
    # -------------------------------------------------------------------------

    def gen_con(self, length: Optional[int] = None) -> Con:
        length = self.rng.randint(0, MAX_CONTEXT_LENGTH) if length is None else length
        con: Con = Empty()
        for _ in range(length):
            for _attempt in range(4):
                ty = self.gen_ty(con)
                extended = Ext(con, ty)
                if environment_bound(extended) <= self.max_environments:
                    con = extended
                    break
        return con

    # -------------------------------------------------------------------------
    # Types
    # -------------------------------------------------------------------------

    def base_ty(self, con: Con) -> Ty:
        choice = self.rng.choice(["unit", "bool", "bool", "univ", "el"])
        if choice == "unit":
            return UnitT()
        if choice == "univ":
            return Univ()
        if choice == "el":
            code = self._term_or_none(con, Univ())
            if code is not None:
                return El(code)
        return BoolT()

    def gen_ty(self, con: Con) -> Ty:
        if not self.spend() or self.fuel < 3:
            return self.base_ty(con)
        choice = self.rng.choice(["base", "pi", "sigma", "subst", "subst"])
        try:
            if choice == "pi" or choice == "sigma":
                dom = self.gen_ty(con)
                cod = self.gen_ty(Ext(con, dom))
                ty = Pi(dom, cod) if choice == "pi" else Sigma(dom, cod)
            elif choice == "subst":
                sub, target = self.gen_sub_from(con)
                ty = SubT(self.gen_ty(target), sub)
            else:
                return self.base_ty(con)
        except NoInhabitant:
            return self.base_ty(con)
        if value_bound(nf_ty(con, ty)) > MAX_TYPE_VALUES:
            return self.base_ty(con)
        return ty

    # -------------------------------------------------------------------------
    # Substitutions
    # -------------------------------------------------------------------------

    def gen_sub_from(self, source: Con) -> Tuple[Sub, Con]:
        """A substitution out of source and its target"""
        choices = ["id", "eps"]
        if isinstance(source, Ext):
            choices += ["p", "p"]
        if self.fuel >= 2:
            choices += ["comp", "pair", "pair"]
        choice = self.rng.choice(choices)
        if choice == "id" or not self.spend():
            return Id(source), source
        if choice == "eps":
            return Eps(source), Empty()
        if choice == "p":
            return P(source.con, source.ty), source.con
        if choice == "comp":
            delta, middle = self.gen_sub_from(source)
            sigma, target = self.gen_sub_from(middle)
            return Comp(sigma, delta), target
        sigma, target = self.gen_sub_from(source)
        if len(con_types(target)) >= MAX_CONTEXT_LENGTH:
            return sigma, target
        ty = self.gen_ty(target)
        extended = Ext(target, ty)
        if environment_bound(extended) > self.max_environments:
            return sigma, target
        tm = self.gen_tm(source, SubT(ty, sigma))
        return self.pair(sigma, tm, ty), extended

    def gen_sub_into(self, source: Con, target: Con) -> Sub:
        """A substitution source -> target, built along the entries of target"""
        if target == source and self.rng.random() < 0.25:
            return Id(source)
        if isinstance(target, Empty):
            if isinstance(source, Ext) and self.spend() and self.rng.random() < 0.3:
                return Comp(Eps(source.con), P(source.con, source.ty))
            return Eps(source)
        sigma = self.gen_sub_into(source, target.con)
        tm = self.gen_tm(source, SubT(target.ty, sigma))
        sub = self.pair(sigma, tm, target.ty)
        if self.spend() and self.rng.random() < 0.3:
            return Comp(Id(target), sub) if self.rng.random() < 0.5 else Comp(sub, Id(source))
        return sub

    def pair(self, sigma: Sub, tm: Tm, ty: Ty) -> Sub:
        # the annotation is optional for closed base types
        if isinstance(ty, (UnitT, BoolT, Univ)) and self.rng.random() < 0.3:
            return Pair(sigma, tm)
        return Pair(sigma, tm, ty)

    # -------------------------------------------------------------------------
    # Terms
    # -------------------------------------------------------------------------

    def _term_or_none(self, con: Con, goal: Ty) -> Optional[Tm]:
        try:
            return self.gen_tm(con, goal)
        except NoInhabitant:
            return None

    def variables(self, con: Con, goal_nf: Ty) -> List[Tm]:
        found = []
        for level in range(len(con_types(con))):
            term = variable_term(con, level)
            if _accepts(con, goal_nf, term):
                found.append(term)
        return found

    def introduction(self, con: Con, goal_nf: Ty) -> Optional[Tm]:
        match goal_nf:
            case UnitT():
                return TT()
            case BoolT():
                return self.rng.choice([TrueC(), FalseC()])
            case Univ():
                return self.rng.choice([UnitCode(), BoolCode()])
            case Pi(dom, cod):
                body = self.gen_tm(Ext(con, dom), cod)
                return Lam(dom, cod, body)
            case Sigma(dom, cod):
                first = self.gen_tm(con, dom)
                second = self.gen_tm(con, SubT(cod, single(con, first, dom)))
                return PairTm(dom, cod, first, second)
        return None

    def elimination(self, con: Con, goal: Ty, goal_nf: Ty) -> Optional[Tm]:
        choice = self.rng.choice(["app", "fst", "snd", "boolrec", "let", "subst"])
        if choice == "app":
            dom = self.base_ty(con)
            cod = SubT(goal, P(con, dom))
            fn = self.gen_tm(con, Pi(dom, cod))
            return App(dom, cod, fn, self.gen_tm(con, dom))
        if choice == "fst":
            cod = SubT(self.base_ty(con), P(con, goal))
            return Fst(goal, cod, self.gen_tm(con, Sigma(goal, cod)))
        if choice == "snd":
            dom = self.base_ty(con)
            cod = SubT(goal, P(con, dom))
            return Snd(dom, cod, self.gen_tm(con, Sigma(dom, cod)))
        if choice == "boolrec":
            motive = SubT(goal, P(con, BoolT()))
            return BoolRec(
                motive,
                self.gen_tm(con, goal),
                self.gen_tm(con, goal),
                self.gen_tm(con, BoolT()),
            )
        if choice == "let":
            ty = self.base_ty(con)
            extended = Ext(con, ty)
            if len(con_types(extended)) > MAX_CONTEXT_LENGTH + 1:
                return None
            bound = self.gen_tm(con, ty)
            body = self.gen_tm(extended, SubT(goal, P(con, ty)))
            return SubTm(body, Pair(Id(con), bound, ty))
        ctx, _ = context_values(con)
        if mentions_below(goal_nf, len(ctx)):
            return None
        sub, target = self.gen_sub_from(con)
        inner = self.gen_tm(target, rebase_ty(con, goal, target))
        return SubTm(inner, sub)

    def gen_tm(self, con: Con, goal: Ty) -> Tm:
        """A term of type goal in con; raises NoInhabitant when none is found"""
        goal_nf = nf_ty(con, goal)
        if self.spend() and self.fuel >= 2 and self.rng.random() < 0.5:
            try:
                term = self.elimination(con, goal, goal_nf)
                if term is not None and _accepts(con, goal, term):
                    return term
            except NoInhabitant:
                pass
        candidates = self.variables(con, goal_nf)
        # out of fuel, Π and Σ goals still get their canonical inhabitant
        try:
            intro = self.introduction(con, goal_nf)
        except NoInhabitant:
            intro = None
        if intro is not None:
            candidates.append(intro)
        if not candidates:
            raise NoInhabitant(f"no term of type {goal_nf}")
        return self.rng.choice(candidates)


def _accepts(con: Con, goal: Ty, tm: Tm) -> bool:
    try:
        check_tm(con, goal, tm)
    except CwfCheckError:
        return False
    return True


def random_wellformed(
    seed: int,
    budget: int,
    sort: Sort,
    context: Optional[Con] = None,
    settings: Optional[Settings] = None,
) -> Expr:
    """
    A well-formed expression of the given sort, deterministic in seed.

    Types and terms live in context (a random one when omitted); a
    substitution starts at context. Falls back to the smallest well-formed
    expression when generation runs dry.
    """
    rng = random.Random(seed)
    gen = Generator(rng, max(budget, 1), settings)
    if sort == Sort.CON:
        return gen.gen_con()
    con = context if context is not None else gen.gen_con(rng.randint(0, 2))
    if sort == Sort.SUB:
        try:
            return gen.gen_sub_from(con)[0]
        except NoInhabitant:
            return Id(con)
    if sort == Sort.TY:
        return gen.gen_ty(con)
    try:
        return gen.gen_tm(con, gen.gen_ty(con))
    except NoInhabitant:
        logger.debug(f"random_wellformed: seed {seed} fell back to tt")
        return TT()
