"""A workbench for a minimal dependent type theory.

Core syntax with de Bruijn indices, a bidirectional typechecker whose
conversion is decided by normalization by evaluation, a canonicity
decision procedure by glued evaluation, a syntactic parametricity
translation, set-valued models, and an independent reduction oracle
with deterministic term generators.
"""

from .syntax import (
    App,
    Bool,
    Code,
    Context,
    El,
    ElimBool,
    FalseTm,
    Lam,
    Lift,
    LiftTm,
    Pi,
    Renaming,
    ScopeError,
    Substitution,
    Term,
    TrueTm,
    U,
    UnliftTm,
    Var,
    rename,
    shift,
    subst,
    subst1,
    term_size,
)
from .nbe import Ne, Nf, embed, norm, norm_type
from .typecheck import (
    TypeCheckError,
    TypeMismatchError,
    check,
    conv,
    conv_types,
    infer,
    wf_type,
)
from .canonicity import BoolWitness, CanonicityError, canon, glued_eval
from .parametricity import (
    ParamResult,
    UnsupportedFragmentError,
    param_family,
    param_term,
    translate,
)
from .oracle import (
    FuelExhaustedError,
    GenBudget,
    ReductionTrace,
    gen_context,
    gen_nf,
    gen_term,
    oracle_conv,
    oracle_norm,
    reduce,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
