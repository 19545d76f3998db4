"""Exact and sampled Sato-Tate moments.

F_{G,V}(a, b) = dim (V^{(x)a} (x) V*^{(x)b})^G for tori, U(n), SU(n), finite
groups given by class data, and products of these.
"""

from .errors import CatalogError, ConsistencyError, EvaluationError, SatoTateError, SpecError, UnsupportedError
from .groups import (
    ClassDatum,
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteClasses,
    FiniteGiven,
    Product,
    SpecialUnitary,
    Std,
    Symmetric,
    Tensor,
    Torus,
    TorusWeights,
    Unitary,
    character,
    cyclic,
    dimension,
)
from .lattice import WeightPoly
from .moments import Engine, MomentTable, engine_for, moment, moment_table
from .catalog import catalog_load, load as catalog_entry
from .analyzer import (
    check_irreducible,
    crude_bound_threshold,
    finite_limit_experiment,
    infer_dimension,
    separation_index,
    torsion_approximant,
    verify_torsion_agreement,
)
from .sampler import SampleConfig, estimate_moments, gaussian_limit_report, haar_sample_trace

__version__ = "0.1.0"
