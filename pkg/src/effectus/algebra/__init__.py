"""Finite effect algebras and the [0, 1]-modules used by the instances."""
from .finite import (
    UNDEF,
    EffectAlgebra,
    Pcm,
    difference,
    from_sum_rule,
    grid,
    horizontal_sum,
    is_boolean_algebra,
    is_lattice,
    is_ortho_sharp,
    join,
    law_suite_effect_algebra,
    law_suite_mv,
    law_suite_pcm,
    leq,
    load,
    mackey_compatible,
    meet,
    mv_from_mackey,
    mv_table,
    order_matrix,
    powerset,
    sharpness_conditions,
)
from .modules import (
    Effects,
    FuzzyPredicates,
    Subdistributions,
    Substates,
    divide,
    law_suite_effect_module,
    law_suite_effect_monoid,
    law_suite_weight_module,
    normalize,
)

ea_difference = difference
