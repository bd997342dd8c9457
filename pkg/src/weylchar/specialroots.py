"""Special-root data: per-index candidate tables, consistent index tuples,
their signatures, and the exponent vectors that rebuild the character
numerator for any dominant highest weight.

The candidate table for index i holds the differences between the i-th
fundamental weight and its Weyl orbit; these are exactly the positive-lattice
vectors preserving the length of l_i.  An r-tuple of candidates is kept when
every pairwise inner product (l_i - g_i, l_j - g_j) equals (l_i, l_j); the
number of surviving tuples must equal the Weyl group order, which is checked
against the brute-force enumeration.  Signatures are read off by expanding
the denominator product over positive roots and matching each tuple's
exponent vector to a surviving monomial.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from pathlib import Path
from typing import Sequence

from .laurent import LaurentPolynomial
from .rootsys import (
    CartanDatum,
    RootVector,
    WeightVector,
    positive_roots,
    weyl_orbit,
)
from .weyloracle import weyl_order

_TUPLE_GUARD = 50_000_000


class GammaSystemError(ValueError):
    """Raised when special-root construction breaks one of its own checks."""


@dataclass(frozen=True)
class GammaTable:
    """Per fundamental-weight index: the ordered candidate vectors.

    ``entries[i][0]`` is always the zero vector; the rest are sorted by
    height, ties broken lexicographically on coordinates.
    """

    entries: tuple[tuple[RootVector, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.entries)


@dataclass(frozen=True)
class GammaSystem:
    """Candidate tables plus the consistent tuples and their signatures.

    ``tuples[A]`` holds 0-based indices into the per-index tables;
    ``signatures[A]`` is the matching sign.  Tuple 0 is the all-zeros
    tuple with signature +1.
    """

    datum: CartanDatum
    tables: GammaTable
    tuples: tuple[tuple[int, ...], ...]
    signatures: tuple[int, ...]

    @cached_property
    def _xi_rows(self) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
        """Row i,I: the vector j -> (l_i - g_i(I), l_j) / d_i.

        Contracting a row with the label vector of rho + highest gives the
        i-th exponent of that tuple's monomial, before normalization.
        """
        datum = self.datum
        g = datum.weight_gram
        d = datum.root_norms
        rows = []
        for i, table in enumerate(self.tables.entries):
            per_entry = []
            for gamma in table:
                per_entry.append(tuple(
                    Fraction(g[i][j] - gamma.coords[j] * d[j], 1) / d[i]
                    for j in range(datum.rank)
                ))
            rows.append(tuple(per_entry))
        return tuple(rows)

    def raw_exponents(self, highest: WeightVector) -> list[tuple[Fraction, ...]]:
        """Un-normalized exponent vectors, one per tuple, for rho + highest."""
        datum = self.datum
        shifted = tuple(1 + s for s in highest.coeffs)
        rows = self._xi_rows
        out = []
        for tup in self.tuples:
            out.append(tuple(
                sum(rows[i][tup[i]][j] * shifted[j] for j in range(datum.rank) if shifted[j])
                for i in range(datum.rank)
            ))
        return out

    def gamma_vectors(self, tup: tuple[int, ...]) -> tuple[RootVector, ...]:
        return tuple(self.tables.entries[i][tup[i]] for i in range(len(tup)))

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "cartan": [list(r) for r in self.datum.cartan],
            "norms": [str(d) for d in self.datum.root_norms],
            "tables": [
                [list(g.coords) for g in table] for table in self.tables.entries
            ],
            "tuples": [list(t) for t in self.tuples],
            "signatures": list(self.signatures),
        }

    @classmethod
    def from_json_obj(cls, obj: dict, datum: CartanDatum) -> "GammaSystem":
        stored = CartanDatum(
            tuple(tuple(int(x) for x in row) for row in obj["cartan"]),
            tuple(Fraction(s) for s in obj["norms"]),
        )
        if stored != datum:
            raise GammaSystemError("cached system belongs to a different datum")
        tables = GammaTable(tuple(
            tuple(RootVector(tuple(c)) for c in table) for table in obj["tables"]
        ))
        return cls(
            datum=datum,
            tables=tables,
            tuples=tuple(tuple(int(i) for i in t) for t in obj["tuples"]),
            signatures=tuple(int(s) for s in obj["signatures"]),
        )


def build_gamma_tables(datum: CartanDatum) -> GammaTable:
    """Candidate table per index: differences between each fundamental weight
    and its full Weyl orbit, all verified to lie in the positive lattice."""
    entries = []
    for i in range(datum.rank):
        lam = datum.fundamental_weight(i)
        candidates = []
        for point in weyl_orbit(datum, lam):
            diff = tuple(a - b for a, b in zip(lam.coeffs, point.coeffs))
            coords = datum.root_coords_of_weight(diff)
            if any(Fraction(c).denominator != 1 for c in coords):
                raise GammaSystemError(
                    f"orbit difference for index {i} leaves the root lattice"
                )
            vec = RootVector(tuple(int(c) for c in coords))
            if not vec.is_nonnegative:
                raise GammaSystemError(
                    f"orbit difference for index {i} has a negative coordinate"
                )
            candidates.append(vec)
        candidates.sort(key=lambda v: (v.height, v.coords))
        if candidates[0].coords != (0,) * datum.rank:
            raise GammaSystemError("candidate table must start with the zero vector")
        entries.append(tuple(candidates))
    return GammaTable(tuple(entries))


def _integer_pairing(datum: CartanDatum) -> tuple[list[list[int]], int]:
    """Weight-space Gram matrix cleared to integers, with the scale factor."""
    g = datum.weight_gram
    scale = lcm(*[Fraction(g[i][j]).denominator
                  for i in range(datum.rank) for j in range(datum.rank)])
    gi = [[int(Fraction(g[i][j]) * scale) for j in range(datum.rank)]
          for i in range(datum.rank)]
    return gi, scale


def build_tuples(
    datum: CartanDatum, tables: GammaTable
) -> tuple[tuple[int, ...], ...]:
    """All index tuples whose candidates satisfy every pairwise condition.

    Depth-first over indices with incremental pruning: a partial assignment
    survives only if it is consistent with all previously fixed indices.
    The final count must equal the Weyl group order.
    """
    r = datum.rank
    gi, _ = _integer_pairing(datum)

    # labels of l_i - g and their Gram transforms, per table entry
    label_vecs: list[list[tuple[int, ...]]] = []
    gram_vecs: list[list[tuple[int, ...]]] = []
    for i, table in enumerate(tables.entries):
        lv, gv = [], []
        for gamma in table:
            glabels = datum.labels_of_root(gamma.coords)
            labels = tuple(
                (1 if j == i else 0) - glabels[j] for j in range(r)
            )
            lv.append(labels)
            gv.append(tuple(
                sum(gi[k][l] * labels[l] for l in range(r)) for k in range(r)
            ))
        diag = sum(a * b for a, b in zip(lv[0], gv[0]))
        for labels, gram in zip(lv, gv):
            if sum(a * b for a, b in zip(labels, gram)) != diag:
                raise GammaSystemError(f"candidate for index {i} changes length")
        label_vecs.append(lv)
        gram_vecs.append(gv)

    results: list[tuple[int, ...]] = []
    steps = 0

    def extend(prefix: list[int]) -> None:
        nonlocal steps
        level = len(prefix)
        if level == r:
            results.append(tuple(prefix))
            return
        for cand in range(len(tables.entries[level])):
            steps += 1
            if steps > _TUPLE_GUARD:
                raise GammaSystemError("tuple search guard exceeded")
            gram = gram_vecs[level][cand]
            ok = True
            for prev in range(level):
                lv = label_vecs[prev][prefix[prev]]
                if sum(a * b for a, b in zip(lv, gram)) != gi[prev][level]:
                    ok = False
                    break
            if ok:
                prefix.append(cand)
                extend(prefix)
                prefix.pop()

    extend([])

    expected = weyl_order(datum)
    if len(results) != expected:
        raise GammaSystemError(
            f"found {len(results)} consistent tuples, expected |W| = {expected}"
        )
    if len(set(results)) != len(results):
        raise GammaSystemError("consistent tuples are not pairwise distinct")
    if results[0] != (0,) * r:
        raise GammaSystemError("first tuple must be the all-zero-candidate tuple")
    return tuple(results)


def denominator_product(datum: CartanDatum) -> LaurentPolynomial:
    """Expansion of the product of (u^a - 1) over positive roots, multiplied
    smallest height first; cancellation keeps intermediates near the final
    Weyl-order term count."""
    acc = LaurentPolynomial.one(datum.rank)
    for root in positive_roots(datum):
        acc = acc.shifted(root.coords) - acc
    return acc


def _normalized_exponents(
    raw: Sequence[tuple[Fraction, ...]], rank: int
) -> list[tuple[int, ...]]:
    floor = [min(v[i] for v in raw) for i in range(rank)]
    out = []
    for v in raw:
        shifted = tuple(c - f for c, f in zip(v, floor))
        if any(s.denominator != 1 or s < 0 for s in shifted):
            raise GammaSystemError(
                f"non-integral normalized exponent {shifted}; "
                "normalization is inconsistent"
            )
        out.append(tuple(int(s) for s in shifted))
    return out


def assign_signatures(
    datum: CartanDatum,
    tables: GammaTable,
    tuples: tuple[tuple[int, ...], ...],
) -> GammaSystem:
    """Fix each tuple's sign by expanding the denominator product and
    matching the tuple's exponent vector against a surviving monomial."""
    partial = GammaSystem(datum, tables, tuples, signatures=(1,) * len(tuples))
    exps = _normalized_exponents(partial.raw_exponents(WeightVector((0,) * datum.rank)),
                                 datum.rank)
    expansion = dict(denominator_product(datum).terms())
    if len(expansion) != len(tuples):
        raise GammaSystemError(
            f"denominator expansion has {len(expansion)} monomials for "
            f"{len(tuples)} tuples"
        )
    signatures = []
    for tup, e in zip(tuples, exps):
        coeff = expansion.pop(e, None)
        if coeff is None:
            raise GammaSystemError(f"tuple {tup} matches no denominator monomial")
        if coeff not in (1, -1):
            raise GammaSystemError(
                f"denominator coefficient {coeff} at {e} is not a sign"
            )
        signatures.append(coeff)
    if expansion:
        raise GammaSystemError(
            f"{len(expansion)} denominator monomials match no tuple"
        )
    if signatures[0] != 1:
        raise GammaSystemError("identity tuple must carry signature +1")
    return GammaSystem(datum, tables, tuples, tuple(signatures))


def exponents(
    datum: CartanDatum, system: GammaSystem, highest: WeightVector
) -> list[tuple[int, ...]]:
    """Normalized exponent vectors for rho + highest, one per tuple.

    Normalization subtracts the coordinatewise floor so the lowest monomial
    sits at the origin; every entry must come out a nonnegative integer.
    """
    if not highest.is_dominant:
        raise ValueError("highest weight must be dominant integral")
    if len(highest.coeffs) != datum.rank:
        raise ValueError("dimension mismatch")
    return _normalized_exponents(system.raw_exponents(highest), datum.rank)


def build_system(
    datum: CartanDatum, cache_dir: str | Path | None = None
) -> GammaSystem:
    """Build (or load from the cache directory) the full special-root system."""
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"system_{datum_fingerprint(datum)}.json"
        if path.exists():
            with open(path, "r", encoding="utf-8") as fh:
                return GammaSystem.from_json_obj(json.load(fh), datum)
    tables = build_gamma_tables(datum)
    tuples = build_tuples(datum, tables)
    system = assign_signatures(datum, tables, tuples)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(system.to_json_obj(), fh, separators=(",", ":"))
        tmp.replace(path)
    return system


def datum_fingerprint(datum: CartanDatum) -> str:
    """Stable hex key for a datum (Cartan matrix plus normalization)."""
    payload = json.dumps(
        {
            "cartan": [list(r) for r in datum.cartan],
            "norms": [str(d) for d in datum.root_norms],
        },
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
