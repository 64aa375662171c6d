"""Exact q-expansion toolkit.

Library layout:

* exactnum: rationals, p-adic valuations, one-step number fields, dense
  polynomials, complete rational root finding
* qseries: truncated exact Puiseux/Laurent series with formal n-th roots
* etaforms: eta quotients, infinite-product form, recognition, counting
* ubdcert: unbounded-denominator profiles and machine-checkable certificates
* puiseux: branch solutions of polynomial equations over series coefficients
* elliptic: division polynomials, Newton polygons, irreducibility screening
* cli: the `qcert` command-line tool
"""

from .exactnum import (
    INFINITY,
    QQ,
    AlgebraicNumber,
    AdjunctionNeeded,
    InputError,
    NumberField,
    Polynomial,
    PrecisionError,
    QcertError,
    adjoin_root,
    field_arith,
    is_prime,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    valuation,
)
from .qseries import Pochhammer, PuiseuxSeries, nth_root, root_binomial
from .etaforms import (
    EtaQuotient,
    NotEta,
    ProductForm,
    count_type_ia_groups,
    eta_expand,
    eta_recognize,
    product_form_to_series,
    series_to_product_form,
)
from .ubdcert import (
    BoundedDenominatorReport,
    DenominatorProfile,
    EtaRootIsEtaQuotient,
    GrowthWitness,
    ProductFormNonIntegral,
    UnboundedUpToT,
    certify_eta_root_ubd,
    clear_denominators,
    denominator_profile,
    growth_witness,
    verify_certificate,
    verify_inverse_growth_law,
)
from .puiseux import (
    BivariatePoly,
    BranchSolution,
    Partition,
    SolveResult,
    composition_coefficient,
    composition_terms,
    normalize,
    partition_derivative_constant,
    solve_branches,
    verify_solution,
)
from .elliptic import (
    DivisionPolynomial,
    Inconclusive,
    Irreducible,
    NewtonPolygon,
    Reducible,
    ScreenReport,
    WeierstrassCurve,
    division_poly,
    factor_degree_pattern,
    irreducibility_certificate,
    newton_polygon,
    screen_primes,
    short_weierstrass_from_general,
    torsion_divisor_consistency,
    two_torsion_cubic,
)

__version__ = "0.1.0"
