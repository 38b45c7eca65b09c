"""monvar: a workbench for equational reasoning about monoid varieties.

Word combinatorics, finite monoids with brute-force identity checking,
Rees quotients of free monoids, a bounded derivation engine with
verifiable proof traces, exact word-problem criteria, and a catalog of
varieties with containment and exclusion tests.
"""

from .words import (
    Word,
    content,
    decompose,
    delete,
    h_index,
    is_i_free,
    is_n_limited,
    letter,
    letter_classes,
    occurrences,
    one_dividers,
    parse_word,
    restrict,
    reverse_word,
    substitute,
    unique_2gram_check,
    word_str,
)
from .systems import (
    FamilySpec,
    Identity,
    IdentitySystem,
    dual_identity,
    dual_system,
    family,
    parse_identity,
    parse_system,
    system,
)
from .monoids import (
    BudgetExceeded,
    FiniteMonoid,
    direct_product,
    dual_monoid,
    evaluate,
    idempotents_commute,
    is_aperiodic,
    make_monoid,
    satisfies,
    validate,
)
from .rees import ReesMonoid, build_rees, is_isoterm, member_check
from .rewrite import (
    DerivationTrace,
    Explorer,
    RewriteStep,
    apply_step,
    derive,
    make_step,
    neighbors,
    verify_trace,
)

__version__ = "0.1.0"
