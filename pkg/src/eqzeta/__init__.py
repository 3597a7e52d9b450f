"""Equivariant monodromy zeta functions over rings of finite (Z x G)-sets.

Exact integer arithmetic throughout: finite groups as explicit tables,
Burnside rings via tables of marks, classification of G-permutations into
the triple basis, recovery of zeta functions from Lefschetz data, the
Sebastiani-Thom combinator, the exceptional-divisor evaluator, and the
specialization to classical zeta functions prod (1-t^m)^{s_m}.
"""

from .burnside import (
    BurnsideElement,
    GSet,
    burnside_add,
    burnside_mul,
    class_of_gset,
    mark_vector,
)
from .complexes import (
    GCellularMap,
    GComplex,
    brute_zeta,
    chi_G_cellwise,
    chi_G_strata,
    pair_lefschetz_table,
)
from .cli import run_command
from .documents import (
    InputDocument,
    parse_document,
    parse_document_file,
    render_element,
)
from .errors import (
    ActionError,
    DocumentError,
    EqzetaError,
    GroupError,
    RegularityError,
    StratumError,
    TableError,
)
from .gperm import (
    GPermutation,
    LefschetzTable,
    classify,
    equivariant_lefschetz,
    lefschetz_table,
    realize,
    realize_element,
    validate,
    zg_orbits,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    SubgroupClassTable,
    TableOfMarks,
    build_group,
    cyclic,
    dihedral,
    enumerate_subgroup_classes,
    from_permutations,
    normalizer,
    product,
    symmetric,
    table_of_marks,
    trivial,
)
from .zeta import (
    StratumRecord,
    acampo,
    classical_from_lefschetz,
    classical_lefschetz_numbers,
    elementary_zeta,
    predicted_table,
    sebastiani_thom,
    zeta_from_lefschetz,
)
from .zg import (
    ClassicalZeta,
    TripleClass,
    ZGRingElement,
    canonical_triple,
    degree,
    forget_to_classical,
    triple_index,
    triple_z_period,
    zg_add,
    zg_contains,
    zg_contains_bruteforce,
    zg_mul,
    zg_neg,
)

__version__ = "0.1.0"
