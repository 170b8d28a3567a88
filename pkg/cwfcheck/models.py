"""
Models of the Calculus

An abstract signature for categories with families and its instances:

1. SyntacticModel: expressions, equality is convertibility
2. StandardModel: finite environments and value tables
3. CorruptedStandardModel: pairing prepends instead of appends
4. SliceModel: contexts over a fixed base context

Each model comes with a sampler producing well-typed components for the
law harness. Samplers work backwards (a substitution is sampled into a
given target), so the commuting triangles of a slice hold by construction.
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Dict, Generic, List, Optional, Tuple, TypeVar

from .checker import convertible
from .config import Settings, get_settings
from .errors import ConsistencyError, PreconditionError
from .generator import Generator
from .rewrite import random_rewrite_chain
from .standard_model import Env, SemTy, eval_con, eval_sub, eval_tm, eval_ty, show_env, show_value, values
from .syntax import (
    Comp, Con, Empty, Eps, Ext, Id, P, Pair, Q, Sort, Sub, SubT, SubTm, Tm, Ty,
)

logger = logging.getLogger(__name__)

C = TypeVar("C")
S = TypeVar("S")
T = TypeVar("T")
M = TypeVar("M")


@dataclass
class RepresentabilityResult:
    """How many γ satisfy p∘γ = σ and q[γ] = t; set-level contractible means exactly one"""
    count: int
    method: str
    checked: int = 0
    witnesses: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"count": self.count, "method": self.method, "checked": self.checked, "witnesses": self.witnesses}


# =============================================================================
# SIGNATURE
# =============================================================================

class ModelSignature(ABC, Generic[C, S, T, M]):
    """
    Carriers C (contexts), S (substitutions), T (types) and M (terms) with
    the structure of a category with families. Equations are not enforced
    here; law_harness checks them through the equality methods.
    """

    name: str = "model"

    @abstractmethod
    def empty(self) -> C: ...

    @abstractmethod
    def ext(self, con: C, ty: T) -> C: ...

    @abstractmethod
    def id(self, con: C) -> S: ...

    @abstractmethod
    def comp(self, sigma: S, delta: S) -> S: ...

    @abstractmethod
    def eps(self, con: C) -> S: ...

    @abstractmethod
    def p(self, con: C, ty: T) -> S: ...

    @abstractmethod
    def q(self, con: C, ty: T) -> M: ...

    @abstractmethod
    def pair(self, sigma: S, tm: M, ty: T) -> S: ...

    @abstractmethod
    def sub_ty(self, ty: T, sub: S) -> T: ...

    @abstractmethod
    def sub_tm(self, tm: M, sub: S) -> M: ...

    @abstractmethod
    def con_eq(self, left: C, right: C) -> bool: ...

    @abstractmethod
    def sub_eq(self, left: S, right: S) -> bool: ...

    @abstractmethod
    def ty_eq(self, con: C, left: T, right: T) -> bool: ...

    @abstractmethod
    def tm_eq(self, con: C, left: M, right: M) -> bool: ...

    @abstractmethod
    def representability(
        self, con: C, target: C, ty: T, sigma: S, tm: M, rng: random.Random
    ) -> RepresentabilityResult: ...

    def describe(self, element: Any) -> str:
        return str(element)


class Sampler(ABC, Generic[C, S, T, M]):
    """Random well-typed components; may raise generator.NoInhabitant"""

    @abstractmethod
    def sample_con(self, rng: random.Random) -> C: ...

    @abstractmethod
    def sample_sub_into(self, target: C, rng: random.Random) -> Tuple[C, S]: ...

    @abstractmethod
    def sample_ty(self, con: C, rng: random.Random) -> T: ...

    @abstractmethod
    def sample_tm(self, con: C, ty: T, rng: random.Random) -> M: ...


# =============================================================================
# SYNTACTIC MODEL
# =============================================================================

class SyntacticModel(ModelSignature[Con, Sub, Ty, Tm]):
    """The initial model: expressions up to convertibility"""

    name = "syntax"

    def __init__(self, chains: int = 3, chain_length: int = 4):
        self.chains = chains
        self.chain_length = chain_length

    def empty(self) -> Con:
        return Empty()

    def ext(self, con: Con, ty: Ty) -> Con:
        return Ext(con, ty)

    def id(self, con: Con) -> Sub:
        return Id(con)

    def comp(self, sigma: Sub, delta: Sub) -> Sub:
        return Comp(sigma, delta)

    def eps(self, con: Con) -> Sub:
        return Eps(con)

    def p(self, con: Con, ty: Ty) -> Sub:
        return P(con, ty)

    def q(self, con: Con, ty: Ty) -> Tm:
        return Q(con, ty)

    def pair(self, sigma: Sub, tm: Tm, ty: Ty) -> Sub:
        return Pair(sigma, tm, ty)

    def sub_ty(self, ty: Ty, sub: Sub) -> Ty:
        return SubT(ty, sub)

    def sub_tm(self, tm: Tm, sub: Sub) -> Tm:
        return SubTm(tm, sub)

    def con_eq(self, left: Con, right: Con) -> bool:
        return convertible(Sort.CON, left, right)

    def sub_eq(self, left: Sub, right: Sub) -> bool:
        return convertible(Sort.SUB, left, right)

    def ty_eq(self, con: Con, left: Ty, right: Ty) -> bool:
        return convertible(Sort.TY, left, right, con)

    def tm_eq(self, con: Con, left: Tm, right: Tm) -> bool:
        return convertible(Sort.TM, left, right, con)

    def competitors(self, target: Con, ty: Ty, sigma: Sub, tm: Tm, rng: random.Random) -> List[Sub]:
        """
        Substitutions derived from (σ, t) by the uniqueness argument (id∘γ,
        then (p, q)∘γ, then (p∘γ, q[γ])) and by random rewriting.
        """
        gamma = Pair(sigma, tm, ty)
        p, q = P(target, ty), Q(target, ty)
        derived = [
            Comp(Id(Ext(target, ty)), gamma),
            Comp(Pair(p, q, ty), gamma),
            Pair(Comp(p, gamma), SubTm(q, gamma), ty),
        ]
        for _ in range(self.chains):
            rewritten, _steps = random_rewrite_chain(gamma, rng.randint(1, self.chain_length), rng)
            derived.append(rewritten)
        return derived

    def representability(
        self, con: Con, target: Con, ty: Ty, sigma: Sub, tm: Tm, rng: random.Random
    ) -> RepresentabilityResult:
        gamma = Pair(sigma, tm, ty)
        result = RepresentabilityResult(count=1, method="derivation")
        classes = [gamma]
        for tau in self.competitors(target, ty, sigma, tm, rng):
            if not (
                self.sub_eq(Comp(P(target, ty), tau), sigma)
                and self.tm_eq(con, SubTm(Q(target, ty), tau), tm)
            ):
                continue
            result.checked += 1
            if not any(self.sub_eq(tau, other) for other in classes):
                classes.append(tau)
                result.witnesses.append(str(tau))
        result.count = len(classes)
        return result


class SyntaxSampler(Sampler[Con, Sub, Ty, Tm]):
    def __init__(self, size: int = 12):
        self.size = size

    def _gen(self, rng: random.Random) -> Generator:
        return Generator(rng, self.size)

    def sample_con(self, rng: random.Random) -> Con:
        return self._gen(rng).gen_con()

    def sample_sub_into(self, target: Con, rng: random.Random) -> Tuple[Con, Sub]:
        gen = self._gen(rng)
        source = gen.gen_con()
        return source, gen.gen_sub_into(source, target)

    def sample_ty(self, con: Con, rng: random.Random) -> Ty:
        return self._gen(rng).gen_ty(con)

    def sample_tm(self, con: Con, ty: Ty, rng: random.Random) -> Tm:
        return self._gen(rng).gen_tm(con, ty)


# =============================================================================
# FINITE STANDARD MODEL
# =============================================================================

@dataclass(frozen=True)
class SemCon:
    """A context as its list of environments"""
    envs: Tuple[Env, ...]
    syntax: Optional[Con] = field(default=None, compare=False)

    @cached_property
    def position(self) -> Dict[Env, int]:
        return {env: i for i, env in enumerate(self.envs)}

    def locate(self, env: Env) -> int:
        try:
            return self.position[env]
        except KeyError:
            raise PreconditionError(f"environment {show_env(env)} is not in the context")


@dataclass(frozen=True)
class SemSub:
    """A substitution as the image of each source environment"""
    source: SemCon
    target: SemCon
    table: Tuple[Env, ...]
    syntax: Optional[Sub] = field(default=None, compare=False)

    def __call__(self, env: Env) -> Env:
        return self.table[self.source.locate(env)]


@dataclass(frozen=True)
class SemFamily:
    """A type as a semantic type per environment"""
    con: SemCon
    table: Tuple[SemTy, ...]
    syntax: Optional[Ty] = field(default=None, compare=False)

    def __call__(self, env: Env) -> SemTy:
        return self.table[self.con.locate(env)]


@dataclass(frozen=True)
class SemTerm:
    """A term as a value per environment"""
    con: SemCon
    table: Tuple[Any, ...]
    syntax: Optional[Tm] = field(default=None, compare=False)

    def __call__(self, env: Env) -> Any:
        return self.table[self.con.locate(env)]


def _syntax(build, *parts):
    if any(part is None for part in parts):
        return None
    return build(*parts)


class StandardModel(ModelSignature[SemCon, SemSub, SemFamily, SemTerm]):
    """Contexts are sets of environments, types are families of finite types"""

    name = "standard"

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    # Interpreting syntax

    def con_of(self, con: Con) -> SemCon:
        envs = eval_con(con)
        if len(envs) > self.settings.max_context_environments:
            raise PreconditionError(
                f"context has {len(envs)} environments, the limit is "
                f"{self.settings.max_context_environments}"
            )
        return SemCon(tuple(envs), con)

    def sub_of(self, sub: Sub, source: SemCon, target: SemCon) -> SemSub:
        return SemSub(source, target, tuple(eval_sub(sub, env) for env in source.envs), sub)

    def ty_of(self, con: SemCon, ty: Ty) -> SemFamily:
        return SemFamily(con, tuple(eval_ty(ty, env) for env in con.envs), ty)

    def tm_of(self, con: SemCon, tm: Tm) -> SemTerm:
        return SemTerm(con, tuple(eval_tm(tm, env) for env in con.envs), tm)

    # Structure

    def empty(self) -> SemCon:
        return SemCon(((),), Empty())

    def ext(self, con: SemCon, ty: SemFamily) -> SemCon:
        if len(ty.table) != len(con.envs):
            raise PreconditionError("type family is not over the given context")
        envs = tuple(env + (v,) for env, fibre in zip(con.envs, ty.table) for v in values(fibre))
        return SemCon(envs, _syntax(Ext, con.syntax, ty.syntax))

    def id(self, con: SemCon) -> SemSub:
        return SemSub(con, con, con.envs, _syntax(Id, con.syntax))

    def comp(self, sigma: SemSub, delta: SemSub) -> SemSub:
        table = tuple(sigma(delta(env)) for env in delta.source.envs)
        return SemSub(delta.source, sigma.target, table, _syntax(Comp, sigma.syntax, delta.syntax))

    def eps(self, con: SemCon) -> SemSub:
        return SemSub(con, self.empty(), tuple(() for _ in con.envs), _syntax(Eps, con.syntax))

    def p(self, con: SemCon, ty: SemFamily) -> SemSub:
        extended = self.ext(con, ty)
        return SemSub(
            extended, con, tuple(env[:-1] for env in extended.envs), _syntax(P, con.syntax, ty.syntax)
        )

    def q(self, con: SemCon, ty: SemFamily) -> SemTerm:
        extended = self.ext(con, ty)
        return SemTerm(extended, tuple(env[-1] for env in extended.envs), _syntax(Q, con.syntax, ty.syntax))

    def pair(self, sigma: SemSub, tm: SemTerm, ty: SemFamily) -> SemSub:
        table = tuple(sigma(env) + (tm(env),) for env in sigma.source.envs)
        return SemSub(
            sigma.source, self.ext(sigma.target, ty), table, _syntax(Pair, sigma.syntax, tm.syntax, ty.syntax)
        )

    def sub_ty(self, ty: SemFamily, sub: SemSub) -> SemFamily:
        table = tuple(ty(sub(env)) for env in sub.source.envs)
        return SemFamily(sub.source, table, _syntax(SubT, ty.syntax, sub.syntax))

    def sub_tm(self, tm: SemTerm, sub: SemSub) -> SemTerm:
        table = tuple(tm(sub(env)) for env in sub.source.envs)
        return SemTerm(sub.source, table, _syntax(SubTm, tm.syntax, sub.syntax))

    # Equality is equality of tables

    def con_eq(self, left: SemCon, right: SemCon) -> bool:
        return left.envs == right.envs

    def sub_eq(self, left: SemSub, right: SemSub) -> bool:
        return left.source.envs == right.source.envs and left.table == right.table

    def ty_eq(self, con: SemCon, left: SemFamily, right: SemFamily) -> bool:
        return left.table == right.table

    def tm_eq(self, con: SemCon, left: SemTerm, right: SemTerm) -> bool:
        return left.table == right.table

    def representability(
        self, con: SemCon, target: SemCon, ty: SemFamily, sigma: SemSub, tm: SemTerm, rng: random.Random
    ) -> RepresentabilityResult:
        """
        Count γ : Γ -> Δ▷A with p∘γ = σ and q[γ] = t. The count is a product of
        pointwise counts; small instances are also enumerated in full.
        """
        extended = self.ext(target, ty)
        pointwise = [
            [ext_env for ext_env in extended.envs if ext_env[:-1] == sigma(env) and ext_env[-1] == tm(env)]
            for env in con.envs
        ]
        count = 1
        for options in pointwise:
            count *= len(options)
        result = RepresentabilityResult(count=count, method="pointwise")
        space = len(extended.envs) ** len(con.envs)
        if space <= self.settings.representability_enum_limit:
            p, q = self.p(target, ty), self.q(target, ty)
            found = 0
            for table in product(extended.envs, repeat=len(con.envs)):
                gamma = SemSub(con, extended, tuple(table))
                result.checked += 1
                if self.sub_eq(self.comp(p, gamma), sigma) and self.tm_eq(con, self.sub_tm(q, gamma), tm):
                    found += 1
            if found != count:
                raise ConsistencyError(
                    f"representability: enumeration found {found} solutions, pointwise count is {count}"
                )
            result.method = "enumeration"
        return result

    def describe(self, element: Any) -> str:
        syntax = getattr(element, "syntax", None)
        if syntax is not None:
            return str(syntax)
        if isinstance(element, SemCon):
            return "{" + ", ".join(show_env(env) for env in element.envs) + "}"
        if isinstance(element, SemSub):
            return "{" + ", ".join(
                f"{show_env(a)} ↦ {show_env(b)}" for a, b in zip(element.source.envs, element.table)
            ) + "}"
        if isinstance(element, SemTerm):
            return "[" + ", ".join(show_value(v) for v in element.table) + "]"
        return repr(element)


class CorruptedStandardModel(StandardModel):
    """The standard model with pairing prepending the new value; breaks q[σ, t] = t"""

    name = "corrupted"

    def pair(self, sigma: SemSub, tm: SemTerm, ty: SemFamily) -> SemSub:
        table = tuple((tm(env),) + sigma(env) for env in sigma.source.envs)
        return SemSub(sigma.source, self.ext(sigma.target, ty), table)


class StandardSampler(Sampler[SemCon, SemSub, SemFamily, SemTerm]):
    """Samples syntax and interprets it; needs syntax provenance on its inputs"""

    def __init__(self, model: StandardModel, size: int = 12):
        self.model = model
        self.syntax = SyntaxSampler(size)

    @staticmethod
    def _provenance(element: Any) -> Any:
        if element.syntax is None:
            raise PreconditionError(f"cannot sample over {type(element).__name__} without syntax")
        return element.syntax

    def sample_con(self, rng: random.Random) -> SemCon:
        return self.model.con_of(self.syntax.sample_con(rng))

    def sample_sub_into(self, target: SemCon, rng: random.Random) -> Tuple[SemCon, SemSub]:
        source, sub = self.syntax.sample_sub_into(self._provenance(target), rng)
        sem_source = self.model.con_of(source)
        return sem_source, self.model.sub_of(sub, sem_source, target)

    def sample_ty(self, con: SemCon, rng: random.Random) -> SemFamily:
        return self.model.ty_of(con, self.syntax.sample_ty(self._provenance(con), rng))

    def sample_tm(self, con: SemCon, ty: SemFamily, rng: random.Random) -> SemTerm:
        tm = self.syntax.sample_tm(self._provenance(con), self._provenance(ty), rng)
        return self.model.tm_of(con, tm)


# =============================================================================
# SLICE MODEL
# =============================================================================

@dataclass(frozen=True)
class SliceCon:
    """A context Δ of the base together with δ : Δ -> Γ₀"""
    con: Any
    sub: Any


class SliceModel(ModelSignature[SliceCon, Any, Any, Any]):
    """
    The model over a base context Γ₀: contexts are pairs (Δ, δ : Δ -> Γ₀),
    the empty context is (Γ₀, id) and ε(Δ, δ) = δ. Everything else is
    computed in the base model.
    """

    def __init__(self, base: ModelSignature, base_con: Any):
        self.base = base
        self.base_con = base_con
        self.name = f"slice({base.name})"

    def empty(self) -> SliceCon:
        return SliceCon(self.base_con, self.base.id(self.base_con))

    def ext(self, con: SliceCon, ty: Any) -> SliceCon:
        return SliceCon(self.base.ext(con.con, ty), self.base.comp(con.sub, self.base.p(con.con, ty)))

    def id(self, con: SliceCon) -> Any:
        return self.base.id(con.con)

    def comp(self, sigma: Any, delta: Any) -> Any:
        return self.base.comp(sigma, delta)

    def eps(self, con: SliceCon) -> Any:
        return con.sub

    def p(self, con: SliceCon, ty: Any) -> Any:
        return self.base.p(con.con, ty)

    def q(self, con: SliceCon, ty: Any) -> Any:
        return self.base.q(con.con, ty)

    def pair(self, sigma: Any, tm: Any, ty: Any) -> Any:
        return self.base.pair(sigma, tm, ty)

    def sub_ty(self, ty: Any, sub: Any) -> Any:
        return self.base.sub_ty(ty, sub)

    def sub_tm(self, tm: Any, sub: Any) -> Any:
        return self.base.sub_tm(tm, sub)

    def con_eq(self, left: SliceCon, right: SliceCon) -> bool:
        return self.base.con_eq(left.con, right.con) and self.base.sub_eq(left.sub, right.sub)

    def sub_eq(self, left: Any, right: Any) -> bool:
        return self.base.sub_eq(left, right)

    def ty_eq(self, con: SliceCon, left: Any, right: Any) -> bool:
        return self.base.ty_eq(con.con, left, right)

    def tm_eq(self, con: SliceCon, left: Any, right: Any) -> bool:
        return self.base.tm_eq(con.con, left, right)

    def representability(
        self, con: SliceCon, target: SliceCon, ty: Any, sigma: Any, tm: Any, rng: random.Random
    ) -> RepresentabilityResult:
        return self.base.representability(con.con, target.con, ty, sigma, tm, rng)

    def describe(self, element: Any) -> str:
        if isinstance(element, SliceCon):
            return f"({self.base.describe(element.con)}, {self.base.describe(element.sub)})"
        return self.base.describe(element)


class SliceSampler(Sampler[SliceCon, Any, Any, Any]):
    """Samples f : Δ -> Φ in the base and pairs Δ with φ ∘ f"""

    def __init__(self, base: ModelSignature, base_sampler: Sampler, base_con: Any):
        self.base = base
        self.base_sampler = base_sampler
        self.base_con = base_con

    def sample_con(self, rng: random.Random) -> SliceCon:
        con, sub = self.base_sampler.sample_sub_into(self.base_con, rng)
        return SliceCon(con, sub)

    def sample_sub_into(self, target: SliceCon, rng: random.Random) -> Tuple[SliceCon, Any]:
        con, sub = self.base_sampler.sample_sub_into(target.con, rng)
        return SliceCon(con, self.base.comp(target.sub, sub)), sub

    def sample_ty(self, con: SliceCon, rng: random.Random) -> Any:
        return self.base_sampler.sample_ty(con.con, rng)

    def sample_tm(self, con: SliceCon, ty: Any, rng: random.Random) -> Any:
        return self.base_sampler.sample_tm(con.con, ty, rng)


def slice_model(
    model: ModelSignature,
    base_con: Any,
    sampler: Optional[Sampler] = None,
    budget: int = 0,
    seed: int = 0,
) -> SliceModel:
    """
    The slice of model over base_con. With a sampler and a positive budget
    the base model must first pass the law harness.
    """
    if sampler is not None and budget > 0:
        from .harness import law_harness

        report = law_harness(model, sampler, budget, seed)
        if not report.passed:
            failing = [r.schema for r in report.results if not r.passed]
            raise PreconditionError(
                f"cannot slice {model.name}: laws fail ({', '.join(failing)})",
                {"failing": failing},
            )
    logger.info(f"Sliced {model.name} over {model.describe(base_con)}")
    return SliceModel(model, base_con)


# =============================================================================
# NAMED MODELS
# =============================================================================

MODEL_NAMES = ("syntax", "standard", "corrupted")


def build_model(name: str, size: int = 12, settings: Optional[Settings] = None) -> Tuple[ModelSignature, Sampler]:
    """A named model together with its sampler"""
    if name == "syntax":
        return SyntacticModel(), SyntaxSampler(size)
    if name in ("standard", "corrupted"):
        model = StandardModel(settings) if name == "standard" else CorruptedStandardModel(settings)
        return model, StandardSampler(model, size)
    raise PreconditionError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")


def base_context(model: ModelSignature, con: Con) -> Any:
    """The model's interpretation of a syntactic context"""
    if isinstance(model, StandardModel):
        return model.con_of(con)
    return con


def build_slice(
    name: str, con: Optional[Con] = None, size: int = 12, seed: int = 0, budget: int = 0
) -> Tuple[SliceModel, SliceSampler]:
    """
    Slice a named model over con, or over a context drawn from seed. A
    positive budget checks the base model's laws first, as slice_model does.
    """
    model, sampler = build_model(name, size)
    if con is None:
        con = SyntaxSampler(size).sample_con(random.Random(f"slice:{seed}"))
    base_con = base_context(model, con)
    sliced = slice_model(model, base_con, sampler, budget, seed)
    return sliced, SliceSampler(model, sampler, base_con)

