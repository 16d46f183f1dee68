"""Exact analysis of degenerating one-parameter families of rational maps.

The package computes non-archimedean limits of parametric families over the
Puiseux field Q((t^(1/e))), tests good and potential good reduction, and
classifies each family's boundary behavior; see the README for the CLI.
"""

from .errors import (
    AllZeroMap,
    ArityError,
    BudgetExhausted,
    DegenerateMap,
    DegreeError,
    DivisionByZero,
    FamilyFormatError,
    FamilySyntaxError,
    InconclusiveSearch,
    NegativeValuation,
    PrecisionExhausted,
    RatfamError,
    SampleUndefined,
    SingularMatrix,
    ZeroDenominator,
)
from .families import (
    BOUNDARY_NO_PGR,
    BOUNDARY_PGR,
    INTERIOR,
    ConjugatedLimit,
    ConvergenceReport,
    FamilyClassification,
    FamilySpec,
    MatrixFamily,
    classify_family,
    conjugate_family,
    conjugated_family_limit,
    family_limit,
    verify_convergence,
)
from .parsing import FamilyFile, parse_family, serialize_family
from .ratfunc import RatFunc
from .ratmap import (
    INFINITY,
    ConjugationMatrix,
    ResidueMap,
    ValuedRationalMap,
    conjugate,
    evaluate,
    good_reduction,
    in_beth,
    iterate,
    new_map,
    ord_res,
    reduce_map,
    resultant,
    sylvester_resultant,
)
from .reduction import (
    CONVERGES_IN_MD,
    DEGENERATES_IN_MD,
    INCONCLUSIVE,
    NO_PGR,
    PGR,
    PgrReport,
    SearchConfig,
    TreePoint,
    brute_force_min,
    classify_quotient,
    minimize_ord_res,
    ord_res_at,
)
from .seminorms import EvaluationSeminorm, SeminormValue, flow, seminorm_eval
from .series import (
    INF,
    PuiseuxSeries,
    divide,
    from_rational_function,
    ramify,
    residue,
    val,
)

__version__ = "0.1.0"
