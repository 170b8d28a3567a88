"""
cwfcheck

A kernel for the explicit-substitution calculus of categories with families,
its finite standard model and law harness, and exhaustive verifiers for the
finite combinatorics of semisimplicial sets and semicategories.
"""

from .errors import (
    CwfCheckError,
    ConsistencyError,
    EnumerationBoundError,
    FormatError,
    IllFormedError,
    ParseError,
    PreconditionError,
    RewriteError,
    SemicatError,
    SimplexError,
    SSetError,
    TypeMismatchError,
)

from .syntax import Sort

from .checker import (
    check,
    convertible,
    normalize,
)

from .surface import (
    parse_surface,
    print_expr,
)

from .generator import random_wellformed

from .rewrite import (
    EQUATIONS,
    rewrite_step,
    random_rewrite_chain,
)

from .standard_model import semantic_equal

from .harness import law_harness

__version__ = "1.0.0"
