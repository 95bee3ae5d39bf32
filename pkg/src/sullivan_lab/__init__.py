"""Exact computations with graded-commutative DGAs: cohomology, Massey
products, formality checks, bundle models and Gysin sequences."""

from .gca import AlgebraError, CapOverflow, Element, FreeGCA, basis_of_degree, make_free_gca, multiply
from .dga import DGA, DGAError, FreeDGA, attach_differential, differential_of, free_dga
from .cohomology import (
    CohomologyBasis, CohomologyClass, NotClosed, betti_numbers, class_of, cohomology_basis, cup,
    reduce_class,
)
from .massey import (
    DefiningSystem, MasseyResult, MasseyUndefined, SearchPolicy, a_massey, defining_system_value,
    higher_massey_search, triple_massey,
)
from .formality import (
    cn_decomposition, formality_by_dimension, quasi_iso_check, s_formality_check,
)
from .gysin import IntegralGradedRing, gysin_total, smith_normal_form
from .geomodels import (
    ExtensionDGA, FiniteGradedRing, circle_bundle_model, constructive_amassey_vanishing,
    constructive_massey_vanishing, elementary_extension, hard_lefschetz_check, lefschetz_split,
    obstruction_report, sphere_bundle_model, tievsky_model,
)

__version__ = "0.1.0"
