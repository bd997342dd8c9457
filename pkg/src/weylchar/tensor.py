"""Tensor product decomposition by exact character arithmetic.

The product of two character polynomials is peeled greedily: the graded-lex
maximal term always corresponds to the highest remaining constituent, whose
full character (times its multiplicity) is subtracted until nothing is left.
Subtraction happens in the full set of variables; merged specializations
would not keep the leading-term-to-weight map injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterCache, CharacterResult, character
from .laurent import LaurentPolynomial
from .rootsys import CartanDatum, WeightVector, antidominant_representative
from .specialroots import GammaSystem

_MAX_CONSTITUENTS = 1_000_000


@dataclass(frozen=True)
class Decomposition:
    """Constituents of a two-factor tensor product, with multiplicities,
    listed in decreasing graded-lex order of the labels."""

    factors: tuple[WeightVector, WeightVector]
    constituents: tuple[tuple[WeightVector, int], ...]

    def to_json_obj(self, dim_check: int | None = None) -> dict:
        obj = {
            "lhs": [list(w.coeffs) for w in self.factors],
            "rhs": [
                {"w": list(w.coeffs), "mult": m} for w, m in self.constituents
            ],
        }
        if dim_check is not None:
            obj["dim_check"] = dim_check
        return obj


def _root_offset(
    datum: CartanDatum, from_labels: tuple[int, ...], to_labels: tuple[int, ...]
) -> tuple[int, ...]:
    diff = tuple(a - b for a, b in zip(to_labels, from_labels))
    coords = datum.root_coords_of_weight(diff)
    out = []
    for c in coords:
        f = Fraction(c)
        if f.denominator != 1 or f < 0:
            raise AssertionError("constituent offset leaves the positive root lattice")
        out.append(int(f))
    return tuple(out)


def tensor_decompose(
    datum: CartanDatum,
    system: GammaSystem,
    left: WeightVector,
    right: WeightVector,
    cache: CharacterCache | None = None,
) -> Decomposition:
    """Decompose the tensor product of two irreducibles exactly."""
    for w in (left, right):
        if not w.is_dominant:
            raise ValueError("tensor factors must be dominant integral")

    left_char = character(datum, system, left, cache=cache)
    right_char = character(datum, system, right, cache=cache)
    remaining = left_char.polynomial * right_char.polynomial

    # product exponents are offsets from the sum of the two lowest weights
    base = tuple(
        int(a + b)
        for a, b in zip(
            antidominant_representative(datum, left).coeffs,
            antidominant_representative(datum, right).coeffs,
        )
    )

    found: list[tuple[WeightVector, int]] = []
    while not remaining.is_zero:
        if len(found) >= _MAX_CONSTITUENTS:
            raise AssertionError("constituent extraction did not terminate")
        e, coeff = remaining.leading_term()
        labels = tuple(
            b + s for b, s in zip(base, datum.labels_of_root(e))
        )
        top = WeightVector(labels)
        if not top.is_dominant:
            raise AssertionError(
                f"leading product term maps to non-dominant weight {top}"
            )
        if coeff <= 0:
            raise AssertionError(
                f"leading product term has non-positive multiplicity {coeff}"
            )
        part = character(datum, system, top, cache=cache)
        lowest = antidominant_representative(datum, top)
        shift = _root_offset(datum, base, tuple(int(c) for c in lowest.coeffs))
        remaining = remaining - part.polynomial.shifted(shift) * coeff
        found.append((top, coeff))

    found.sort(key=lambda item: (sum(item[0].coeffs), item[0].coeffs), reverse=True)
    seen = {w for w, _ in found}
    if len(seen) != len(found):
        raise AssertionError("duplicate constituent extracted")

    total = sum(
        m * character(datum, system, w, cache=cache).dimension for w, m in found
    )
    if total != left_char.dimension * right_char.dimension:
        raise AssertionError(
            f"constituent dimensions sum to {total}, expected "
            f"{left_char.dimension * right_char.dimension}"
        )
    return Decomposition(factors=(left, right), constituents=tuple(found))
