"""Brute-force Weyl group reference: explicit enumeration by simple
reflections and the literal signed orbit sum for the character numerator.

Deliberately naive; used as the independent cross-check for the special-root
machinery and in tests.  Nothing here is needed on the main computation path
except :func:`weyl_order` (tuple-count validation) and :func:`orbit_size`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentPolynomial
from .rootsys import CartanDatum, WeightVector

_DEFAULT_GUARD = 10_000_000

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: some word in simple reflections (not
    necessarily reduced), its action on label vectors, and its sign."""

    word: tuple[int, ...]
    action: Matrix
    det: int

    def apply_labels(self, labels: tuple) -> tuple:
        return tuple(
            sum(row[j] * labels[j] for j in range(len(labels)) if labels[j])
            for row in self.action
        )


def _identity(rank: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))


def _reflection_matrix(datum: CartanDatum, i: int) -> Matrix:
    # labels(s_i mu)_j = mu_j - mu_i * cartan[j][i]
    r = datum.rank
    return tuple(
        tuple(int(j == k) - (datum.cartan[j][i] if k == i else 0) for k in range(r))
        for j in range(r)
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _int_det(m: Matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    assert det.denominator == 1
    return int(det)


@lru_cache(maxsize=None)
def enumerate_weyl(datum: CartanDatum, guard: int = _DEFAULT_GUARD) -> tuple[WeylElement, ...]:
    """All Weyl group elements by breadth-first closure over simple
    reflections, deduplicated by action matrix.  Deterministic order:
    word length, then discovery order with generators tried in index order.
    """
    r = datum.rank
    gens = [_reflection_matrix(datum, i) for i in range(r)]
    identity = _identity(r)
    elements: list[WeylElement] = [WeylElement((), identity, 1)]
    seen: set[Matrix] = {identity}
    frontier = [elements[0]]
    while frontier:
        nxt: list[WeylElement] = []
        for elem in frontier:
            for i, gen in enumerate(gens):
                action = _matmul(gen, elem.action)
                if action in seen:
                    continue
                seen.add(action)
                new = WeylElement((i,) + elem.word, action, -elem.det)
                assert _int_det(action) == new.det
                nxt.append(new)
                if len(seen) > guard:
                    raise RuntimeError("Weyl enumeration guard exceeded")
        elements.extend(nxt)
        frontier = nxt
    return tuple(elements)


@lru_cache(maxsize=None)
def weyl_order(datum: CartanDatum) -> int:
    """Order of the Weyl group."""
    return len(enumerate_weyl(datum))


def _sub_datum(datum: CartanDatum, indices: tuple[int, ...]) -> CartanDatum:
    cartan = tuple(tuple(datum.cartan[i][j] for j in indices) for i in indices)
    norms = tuple(datum.root_norms[i] for i in indices)
    return CartanDatum(cartan, norms)


@lru_cache(maxsize=None)
def _parabolic_order(datum: CartanDatum, zeros: tuple[int, ...]) -> int:
    if not zeros:
        return 1
    return weyl_order(_sub_datum(datum, zeros))


def orbit_size(datum: CartanDatum, w: WeightVector) -> int:
    """Size of the Weyl orbit of ``w`` by orbit-stabilizer: the stabilizer of
    a dominant weight is the parabolic subgroup of its zero labels."""
    from .rootsys import dominant_representative

    dom = dominant_representative(datum, w)
    zeros = tuple(i for i, c in enumerate(dom.coeffs) if c == 0)
    total = weyl_order(datum)
    stab = _parabolic_order(datum, zeros)
    assert total % stab == 0
    return total // stab


def orbit_points_root_coords(
    datum: CartanDatum, w: WeightVector
) -> list[tuple[int, tuple[Fraction, ...]]]:
    """(sign, root-coordinates) for sigma(w) over the whole Weyl group.

    Points are not deduplicated; for strictly dominant ``w`` they are all
    distinct.
    """
    out = []
    for elem in enumerate_weyl(datum):
        labels = elem.apply_labels(w.coeffs)
        coords = tuple(Fraction(c) for c in datum.root_coords_of_weight(labels))
        out.append((elem.det, coords))
    return out


def direct_a_polynomial(datum: CartanDatum, highest: WeightVector) -> LaurentPolynomial:
    """The literal signed Weyl sum for the numerator at ``rho + highest``,
    normalized by a monomial shift so the exponent floor is the zero vector
    (the same normalization the special-root route uses)."""
    if not highest.is_dominant:
        raise ValueError("highest weight must be dominant integral")
    rho_plus = WeightVector(tuple(1 + s for s in highest.coeffs))
    points = orbit_points_root_coords(datum, rho_plus)
    floor = [min(coords[i] for _, coords in points) for i in range(datum.rank)]
    terms: dict[tuple[int, ...], int] = {}
    for det, coords in points:
        shifted = tuple(c - f for c, f in zip(coords, floor))
        assert all(s.denominator == 1 and s >= 0 for s in shifted)
        key = tuple(int(s) for s in shifted)
        assert key not in terms, "orbit points of a strictly dominant weight collide"
        terms[key] = det
    return LaurentPolynomial(datum.rank, terms)
