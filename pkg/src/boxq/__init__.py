"""boxq: exact symbolic verification engine for a q-deformed four-generator algebra.

The algebra has generators x0..x3 indexed mod 4; adjacent pairs satisfy a
q-Weyl relation and opposite pairs a cubic q-Serre relation.  This package
verifies the identity catalog of that algebra by certified term rewriting,
bounded-degree ideal membership, a truncated localized pair algebra, and
exact matrix-representation checks.
"""

from .qcoeff import (
    BigRational,
    GenericField,
    Q,
    RF_ONE,
    RF_ZERO,
    RatFunc,
    SpecializedField,
    eval_at,
    expcoef,
    field_arith,
    qfac,
    qint,
    qpow,
    subst_qinv,
)

__version__ = "1.0.0"
