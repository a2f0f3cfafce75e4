"""Brauer relations, regulator constants and Tamagawa-quotient parities for
finite permutation groups, in exact rational arithmetic."""

from regparity.exact_linalg import (
    DEFAULT_FACTOR_BOUND,
    FactorBoundExceeded,
    QMatrix,
    Rational,
    SquareClass,
    determinant,
    kernel_basis,
    ord_p,
    square_class,
)
from regparity.perm_groups import (
    CapExceeded,
    DoubleCosetDecomposition,
    Group,
    NamedGroup,
    Subgroup,
    conjugacy_classes,
    double_cosets,
    fixed_points_character,
    generate,
    named_group,
    subgroups_up_to_conjugacy,
)
from regparity.representations import (
    DegeneratePairingError,
    Pairing,
    Representation,
    character,
    direct_sum,
    fixed_subspace,
    hom_basis,
    invariant_pairing,
    is_self_dual,
    perm_rep,
    split_off,
    trivial_rep,
)
from regparity.brauer_relations import (
    BrauerRelation,
    RelationVerdict,
    find_relations,
    verify_relation,
)
from regparity.regconst import (
    NotSelfDualError,
    RegulatorConstant,
    SThetaReport,
    gram_det_fixed,
    regulator_constant,
    regulator_constant_perm,
    s_theta,
)
from regparity.local_arith import (
    CustomTable,
    Good,
    LocalDataError,
    LocalPrimeData,
    ModelTableGap,
    ParityReport,
    SplitMultiplicative,
    SplittingType,
    c_ratio_ord,
    predict_parity,
    splitting,
    tamagawa_ord,
)

__version__ = "0.1.0"
