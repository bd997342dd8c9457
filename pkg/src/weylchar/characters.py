"""Characters, dimensions and weight multiplicities.

The numerator for a dominant highest weight is the signed monomial sum over
all special-root tuples; dividing it exactly by the numerator at zero gives
the character polynomial.  Everything is normalized so that the lowest
weight maps to the constant term: the zero-highest-weight character is the
constant 1, and the exponent vector of a term is the root-coordinate offset
of its weight from the lowest weight.

Dimensions are always computed twice (coefficient sum of the character and
the closed-form product over positive roots) and cross-checked.  The
Freudenthal recursion at the bottom is standard machinery kept purely as an
independent cross-check for multiplicities.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .laurent import LaurentPolynomial
from .rootsys import (
    CartanDatum,
    RootVector,
    WeightVector,
    antidominant_representative,
    dominant_representative,
    positive_roots,
    weyl_vector,
)
from .specialroots import GammaSystem, datum_fingerprint, exponents
from .weyloracle import orbit_size


@dataclass(frozen=True)
class CharacterResult:
    """Character polynomial with its derived weight data.

    ``multiplicities`` is keyed by dominant weights only (multiplicities are
    Weyl-invariant); ``dimension`` equals both the coefficient sum of the
    polynomial and the orbit-weighted multiplicity sum.
    """

    highest_weight: WeightVector
    polynomial: LaurentPolynomial
    multiplicities: Mapping[WeightVector, int]
    dimension: int

    def to_json_obj(self) -> dict:
        mults = sorted(
            self.multiplicities.items(),
            key=lambda kv: (sum(kv[0].coeffs), kv[0].coeffs),
            reverse=True,
        )
        return {
            "hw": list(self.highest_weight.coeffs),
            "dim": self.dimension,
            "mults": [{"w": list(w.coeffs), "m": m} for w, m in mults],
            "poly": self.polynomial.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CharacterResult":
        return cls(
            highest_weight=WeightVector(tuple(obj["hw"])),
            polynomial=LaurentPolynomial.from_json_obj(obj["poly"]),
            multiplicities={
                WeightVector(tuple(item["w"])): int(item["m"])
                for item in obj["mults"]
            },
            dimension=int(obj["dim"]),
        )


class CharacterCache:
    """Per-(algebra, highest weight) cache: always in memory, optionally on
    disk.  Safe for concurrent reads with exclusive insertion."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._memory: dict[tuple[str, tuple[int, ...]], CharacterResult] = {}
        self._lock = threading.Lock()

    def _path(self, key: tuple[str, tuple[int, ...]]) -> Path:
        fp, labels = key
        tag = "-".join(str(s) for s in labels)
        return self.directory / f"char_{fp}_{tag}.json"

    def lookup(self, datum: CartanDatum, highest: WeightVector) -> CharacterResult | None:
        key = (datum_fingerprint(datum), tuple(highest.coeffs))
        with self._lock:
            hit = self._memory.get(key)
        if hit is not None:
            return hit
        if self.directory is not None:
            path = self._path(key)
            if path.exists():
                with open(path, "r", encoding="utf-8") as fh:
                    result = CharacterResult.from_json_obj(json.load(fh))
                with self._lock:
                    self._memory.setdefault(key, result)
                return result
        return None

    def store(self, datum: CartanDatum, result: CharacterResult) -> None:
        key = (datum_fingerprint(datum), tuple(result.highest_weight.coeffs))
        with self._lock:
            self._memory[key] = result
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
            path = self._path(key)
            tmp = path.with_name(path.name + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(result.to_json_obj(), fh, separators=(",", ":"))
            tmp.replace(path)


def a_polynomial(
    datum: CartanDatum, system: GammaSystem, highest: WeightVector
) -> LaurentPolynomial:
    """Signed monomial sum over all tuples for ``rho + highest``; at zero it
    equals the expanded, normalized denominator product."""
    exps = exponents(datum, system, highest)
    terms: dict[tuple[int, ...], int] = {}
    for e, sign in zip(exps, system.signatures):
        if e in terms:
            raise AssertionError(f"exponent collision at {e}; tuple map not injective")
        terms[e] = sign
    return LaurentPolynomial(datum.rank, terms)


def _weight_labels_of_exponent(
    datum: CartanDatum, base: tuple[int, ...], e: tuple[int, ...]
) -> tuple[int, ...]:
    step = datum.labels_of_root(e)
    return tuple(b + s for b, s in zip(base, step))


def character(
    datum: CartanDatum,
    system: GammaSystem,
    highest: WeightVector,
    cache: CharacterCache | None = None,
) -> CharacterResult:
    """Irreducible character by exact division of numerator polynomials.

    A division remainder is fatal: it means the special-root system is
    inconsistent.  The returned polynomial has the lowest weight at the
    constant term; exponent vectors are root-coordinate offsets from it.
    """
    if not highest.is_dominant:
        raise ValueError("highest weight must be dominant integral")
    if cache is not None:
        hit = cache.lookup(datum, highest)
        if hit is not None:
            return hit

    numerator = a_polynomial(datum, system, highest)
    denominator = a_polynomial(datum, system, WeightVector((0,) * datum.rank))
    poly = numerator.exact_div(denominator)

    lowest = antidominant_representative(datum, highest)
    base = tuple(int(c) for c in lowest.coeffs)
    mults: dict[WeightVector, int] = {}
    total = 0
    for e, c in poly.terms():
        if c <= 0:
            raise AssertionError(f"character coefficient {c} at {e} is not positive")
        total += c
        labels = _weight_labels_of_exponent(datum, base, e)
        if all(x >= 0 for x in labels):
            mults[WeightVector(labels)] = c
    if mults.get(highest) != 1:
        raise AssertionError("highest weight must appear with multiplicity one")
    orbit_total = sum(m * orbit_size(datum, w) for w, m in mults.items())
    if orbit_total != total:
        raise AssertionError(
            f"orbit-weighted multiplicity sum {orbit_total} disagrees with "
            f"coefficient sum {total}"
        )
    result = CharacterResult(
        highest_weight=highest,
        polynomial=poly,
        multiplicities=mults,
        dimension=total,
    )
    if cache is not None:
        cache.store(datum, result)
    return result


def closed_form_dimension(datum: CartanDatum, highest: WeightVector) -> int:
    """Dimension as the exact product over positive roots of
    (rho + highest, a) / (rho, a)."""
    if not highest.is_dominant:
        raise ValueError("highest weight must be dominant integral")
    weyl_vector(datum)  # validates root generation consistency
    d = datum.root_norms

    def pair(labels: tuple[int, ...], coords: tuple[int, ...]) -> Fraction:
        return Fraction(sum(labels[j] * coords[j] * Fraction(d[j])
                            for j in range(datum.rank)))

    rho_labels = (1,) * datum.rank
    top_labels = tuple(1 + s for s in highest.coeffs)
    value = Fraction(1)
    for root in positive_roots(datum):
        value *= pair(top_labels, root.coords) / pair(rho_labels, root.coords)
    if value.denominator != 1:
        raise AssertionError("dimension product is not an integer")
    return int(value)


def dimension(
    datum: CartanDatum,
    system: GammaSystem,
    highest: WeightVector,
    cache: CharacterCache | None = None,
) -> int:
    """Dimension computed two independent ways and asserted equal."""
    by_character = character(datum, system, highest, cache=cache).dimension
    by_product = closed_form_dimension(datum, highest)
    if by_character != by_product:
        raise AssertionError(
            f"character dimension {by_character} disagrees with the "
            f"closed-form product {by_product}"
        )
    return by_character


def multiplicity(
    datum: CartanDatum,
    system: GammaSystem,
    highest: WeightVector,
    weight: WeightVector,
    cache: CharacterCache | None = None,
) -> int:
    """Multiplicity of a weight's Weyl orbit in the module; 0 if absent."""
    if not weight.is_integral:
        return 0
    dom = dominant_representative(datum, weight)
    result = character(datum, system, highest, cache=cache)
    return result.multiplicities.get(dom, 0)


def orbit_constancy_violations(datum: CartanDatum, result: CharacterResult) -> int:
    """Count character terms whose coefficient differs from the multiplicity
    stored at the dominant representative of their weight (0 when the
    multiplicity map is constant on every Weyl orbit)."""
    lowest = antidominant_representative(datum, result.highest_weight)
    base = tuple(int(c) for c in lowest.coeffs)
    bad = 0
    for e, c in result.polynomial.terms():
        labels = _weight_labels_of_exponent(datum, base, e)
        dom = dominant_representative(datum, WeightVector(labels))
        if result.multiplicities.get(dom) != c:
            bad += 1
    return bad


# -- independent multiplicity oracle ------------------------------------------


def _saturated_weights(datum: CartanDatum, highest: WeightVector) -> set[tuple[int, ...]]:
    """All weights of the irreducible module: the saturated set generated
    from the highest weight by walking root strings downward."""
    roots = [r.coords for r in positive_roots(datum)]
    d = datum.root_norms
    root_labels = [datum.labels_of_root(c) for c in roots]
    norms = [sum(Fraction(d[j]) * c * rl[j] for j, c in enumerate(rc) if c)
             for rc, rl in zip(roots, root_labels)]  # (a, a) = 2 d_a
    seen = {tuple(highest.coeffs)}
    frontier = [tuple(highest.coeffs)]
    while frontier:
        nxt = []
        for labels in frontier:
            for rc, rl, nn in zip(roots, root_labels, norms):
                # <mu, a^v> = 2 (mu, a) / (a, a)
                pair = sum(labels[j] * rc[j] * Fraction(d[j]) for j in range(datum.rank))
                string = Fraction(2 * pair) / nn
                assert string.denominator == 1
                for k in range(1, int(string) + 1):
                    down = tuple(labels[j] - k * rl[j] for j in range(datum.rank))
                    if down not in seen:
                        seen.add(down)
                        nxt.append(down)
        frontier = nxt
    return seen


def freudenthal_multiplicities(
    datum: CartanDatum, highest: WeightVector
) -> dict[WeightVector, int]:
    """Weight multiplicities for every weight of the module by the standard
    recursion; independent of the character pipeline, used as a cross-check."""
    if not highest.is_dominant:
        raise ValueError("highest weight must be dominant integral")
    r = datum.rank
    d = datum.root_norms
    roots = [rv.coords for rv in positive_roots(datum)]
    root_labels = [datum.labels_of_root(c) for c in roots]

    def pair_label_root(labels, coords) -> Fraction:
        return Fraction(sum(labels[j] * coords[j] * Fraction(d[j]) for j in range(r)))

    def norm2_plus_rho(labels) -> Fraction:
        shifted = tuple(x + 1 for x in labels)
        coords = datum.root_coords_of_weight(shifted)
        return Fraction(sum(Fraction(coords[i]) * Fraction(datum.gram[i][j]) * Fraction(coords[j])
                            for i in range(r) for j in range(r)))

    weights = _saturated_weights(datum, highest)
    top = tuple(highest.coeffs)

    # depth: height of (highest - w) in the root lattice
    def depth(w):
        diff = tuple(a - b for a, b in zip(top, w))
        coords = datum.root_coords_of_weight(diff)
        assert all(Fraction(c).denominator == 1 for c in coords)
        return sum(int(c) for c in coords)

    by_depth = sorted(weights, key=depth)
    mult: dict[tuple[int, ...], int] = {}
    top_norm = norm2_plus_rho(top)
    for w in by_depth:
        if w == top:
            mult[w] = 1
            continue
        denom = top_norm - norm2_plus_rho(w)
        assert denom != 0
        acc = Fraction(0)
        for rc, rl in zip(roots, root_labels):
            k = 1
            while True:
                up = tuple(w[j] + k * rl[j] for j in range(r))
                if up not in mult:
                    break
                acc += mult[up] * pair_label_root(up, rc)
                k += 1
        value = 2 * acc / denom
        assert value.denominator == 1 and value > 0
        mult[w] = int(value)
    return {WeightVector(w): m for w, m in mult.items()}
