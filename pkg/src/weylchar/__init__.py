"""Exact irreducible characters of finite-dimensional simple Lie algebras.

The numerator of the Weyl character formula is rebuilt from special-root
data (candidate tables, consistent index tuples and signatures) instead of
an explicit sum over the Weyl group; exact Laurent-polynomial division then
yields characters, dimensions, weight multiplicities and tensor-product
decompositions.  All arithmetic is exact.
"""

from .characters import (
    CharacterCache,
    CharacterResult,
    a_polynomial,
    character,
    closed_form_dimension,
    dimension,
    freudenthal_multiplicities,
    multiplicity,
)
from .laurent import InexactDivisionError, LaurentPolynomial
from .rootsys import (
    CartanDatum,
    RootVector,
    WeightVector,
    bilinear,
    cartan_datum,
    dominant_representative,
    antidominant_representative,
    load_cartan,
    positive_roots,
    weyl_orbit,
    weyl_vector,
)
from .specialroots import (
    GammaSystem,
    GammaSystemError,
    GammaTable,
    assign_signatures,
    build_gamma_tables,
    build_system,
    build_tuples,
    denominator_product,
    exponents,
)
from .tensor import Decomposition, tensor_decompose
from .weyloracle import WeylElement, direct_a_polynomial, enumerate_weyl, weyl_order

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "CharacterCache",
    "CharacterResult",
    "Decomposition",
    "GammaSystem",
    "GammaSystemError",
    "GammaTable",
    "InexactDivisionError",
    "LaurentPolynomial",
    "RootVector",
    "WeightVector",
    "WeylElement",
    "a_polynomial",
    "antidominant_representative",
    "assign_signatures",
    "bilinear",
    "build_gamma_tables",
    "build_system",
    "build_tuples",
    "cartan_datum",
    "character",
    "closed_form_dimension",
    "denominator_product",
    "dimension",
    "direct_a_polynomial",
    "dominant_representative",
    "enumerate_weyl",
    "exponents",
    "freudenthal_multiplicities",
    "load_cartan",
    "multiplicity",
    "positive_roots",
    "tensor_decompose",
    "weyl_orbit",
    "weyl_order",
    "weyl_vector",
]
