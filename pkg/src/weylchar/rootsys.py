"""Root systems of finite-type Cartan matrices: bilinear form, positive
roots, Weyl vector and Weyl orbits.

Conventions used throughout the package:

* The Cartan matrix is stored so that ``cartan[i][j] = 2(a_i, a_j)/(a_i, a_i)``
  for simple roots ``a_i``.  With the half-norms ``d_i = (a_i, a_i)/2`` this
  makes ``B = diag(d) * cartan`` the (symmetric, positive definite) Gram
  matrix of the simple roots.
* Roots and other root-lattice elements carry integer coordinates in the
  simple-root basis (:class:`RootVector`).
* Weights carry exact rational coefficients in the fundamental-weight basis
  (:class:`WeightVector`); integral ones are Dynkin labels.  The label vector
  of a root-lattice element with coordinates ``n`` is ``cartan @ n``.

All arithmetic is exact (``int``/``Fraction``); nothing here is numeric.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_MAX_ROOT_HEIGHT = 1000
_MAX_CHAMBER_STEPS = 1_000_000


def _exact(x: Rational) -> Rational:
    """Collapse whole Fractions to int; reject anything non-rational."""
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"exact rational expected, got {type(x).__name__}")
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class RootVector:
    """Integer vector in the simple-root basis (a root, or any element of
    the positive root lattice such as a special root)."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            terms.append(f"a{i}" if c == 1 else f"{c}*a{i}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class WeightVector:
    """Rational vector in the fundamental-weight basis."""

    coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_exact(c) for c in self.coeffs))

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    @property
    def is_dominant(self) -> bool:
        return self.is_integral and all(c >= 0 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def _det(m: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (tiny matrices)."""
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _invert(m: Sequence[Sequence[Rational]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a small rational matrix (Gauss-Jordan)."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix together with root-length normalization.

    ``root_norms[i]`` is ``d_i = (a_i, a_i)/2``.  The constructor validates
    the generalized-Cartan axioms and that ``diag(d) * cartan`` is a
    symmetric positive definite quadratic form.
    """

    cartan: tuple[tuple[int, ...], ...]
    root_norms: tuple[Rational, ...]

    def __post_init__(self) -> None:
        cartan = tuple(tuple(int(x) for x in row) for row in self.cartan)
        norms = tuple(_exact(Fraction(d)) for d in self.root_norms)
        object.__setattr__(self, "cartan", cartan)
        object.__setattr__(self, "root_norms", norms)
        r = len(cartan)
        if r == 0 or any(len(row) != r for row in cartan):
            raise ValueError("cartan matrix must be square and nonempty")
        if len(norms) != r:
            raise ValueError("root_norms length must equal the rank")
        if any(d <= 0 for d in norms):
            raise ValueError("root norms must be positive")
        for i in range(r):
            if cartan[i][i] != 2:
                raise ValueError(f"cartan[{i}][{i}] must be 2")
            for j in range(r):
                if i != j and cartan[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise ValueError("cartan[i][j] = 0 must imply cartan[j][i] = 0")
        b = self.gram
        for i in range(r):
            for j in range(r):
                if b[i][j] != b[j][i]:
                    raise ValueError("diag(norms) * cartan is not symmetric")
        for k in range(1, r + 1):
            minor = [[Fraction(b[i][j]) for j in range(k)] for i in range(k)]
            if _det(minor) <= 0:
                raise ValueError("quadratic form is not positive definite")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def gram(self) -> tuple[tuple[Rational, ...], ...]:
        """Gram matrix of the simple roots: gram[i][j] = (a_i, a_j)."""
        return tuple(
            tuple(_exact(self.root_norms[i] * a) for a in row)
            for i, row in enumerate(self.cartan)
        )

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return _invert(self.cartan)

    @cached_property
    def weight_gram(self) -> tuple[tuple[Rational, ...], ...]:
        """Gram matrix of the fundamental weights: (l_i, l_j)."""
        inv = self.inverse_cartan
        g = tuple(
            tuple(_exact(self.root_norms[i] * inv[i][j]) for j in range(self.rank))
            for i in range(self.rank)
        )
        assert all(g[i][j] == g[j][i] for i in range(self.rank) for j in range(self.rank))
        return g

    def labels_of_root(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Dynkin labels of a root-lattice element given in root coordinates."""
        return tuple(sum(row[j] * coords[j] for j in range(self.rank)) for row in self.cartan)

    def root_coords_of_weight(self, coeffs: Sequence[Rational]) -> tuple[Rational, ...]:
        """Simple-root coordinates of a weight given by its labels."""
        inv = self.inverse_cartan
        return tuple(
            _exact(sum(inv[i][j] * coeffs[j] for j in range(self.rank)))
            for i in range(self.rank)
        )

    def simple_root(self, i: int) -> RootVector:
        return RootVector(tuple(int(i == j) for j in range(self.rank)))

    def fundamental_weight(self, i: int) -> WeightVector:
        return WeightVector(tuple(int(i == j) for j in range(self.rank)))

    def reflect_labels(self, coeffs: tuple[Rational, ...], i: int) -> tuple[Rational, ...]:
        """Simple reflection s_i acting on a label vector."""
        c = coeffs[i]
        if c == 0:
            return coeffs
        return tuple(coeffs[j] - c * self.cartan[j][i] for j in range(self.rank))

    def to_weight(self, v: RootVector) -> WeightVector:
        return WeightVector(self.labels_of_root(v.coords))


def bilinear(
    datum: CartanDatum,
    x: RootVector | WeightVector,
    y: RootVector | WeightVector,
) -> Rational:
    """Symmetric bilinear form; accepts vectors in either basis."""

    def coords(v: RootVector | WeightVector) -> Sequence[Rational]:
        if isinstance(v, RootVector):
            if len(v.coords) != datum.rank:
                raise ValueError("dimension mismatch")
            return v.coords
        if isinstance(v, WeightVector):
            if len(v.coeffs) != datum.rank:
                raise ValueError("dimension mismatch")
            return datum.root_coords_of_weight(v.coeffs)
        raise TypeError("expected RootVector or WeightVector")

    cx, cy = coords(x), coords(y)
    b = datum.gram
    total = sum(cx[i] * sum(b[i][j] * cy[j] for j in range(datum.rank) if cy[j])
                for i in range(datum.rank) if cx[i])
    return _exact(Fraction(total))


@lru_cache(maxsize=None)
def positive_roots(datum: CartanDatum) -> tuple[RootVector, ...]:
    """All positive roots, graded by height then lexicographic on coordinates.

    Built height by height with the root-string criterion: for a root b of
    height h, ``b + a_i`` is a root iff ``p - <b, a_i^v> > 0`` where p is the
    number of times a_i can be subtracted from b inside the root set.  Raises
    if generation has not closed by height 1000 (non-finite type).
    """
    r = datum.rank
    simple = [datum.simple_root(i).coords for i in range(r)]
    known: set[tuple[int, ...]] = set(simple)
    layer = sorted(simple)
    out: list[tuple[int, ...]] = list(layer)
    height = 1
    while layer:
        if height >= _MAX_ROOT_HEIGHT:
            raise ValueError("root generation did not terminate: not finite type")
        nxt: set[tuple[int, ...]] = set()
        for beta in layer:
            labels = datum.labels_of_root(beta)
            for i in range(r):
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in known:
                        break
                    p += 1
                if p - labels[i] > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= known
        known |= nxt
        layer = sorted(nxt)
        out.extend(layer)
        height += 1
    return tuple(RootVector(c) for c in out)


@lru_cache(maxsize=None)
def rho_root_coords(datum: CartanDatum) -> tuple[Rational, ...]:
    """Simple-root coordinates of the Weyl vector (half the positive-root sum)."""
    r = datum.rank
    total = [0] * r
    for root in positive_roots(datum):
        for i, c in enumerate(root.coords):
            total[i] += c
    return tuple(_exact(Fraction(t, 2)) for t in total)


def weyl_vector(datum: CartanDatum) -> WeightVector:
    """The Weyl vector: all-ones label vector, checked against the root sum."""
    rho = WeightVector((1,) * datum.rank)
    two_rho = [Fraction(2 * c) for c in rho_root_coords(datum)]
    if any(c.denominator != 1 for c in two_rho):
        raise AssertionError("positive-root sum has non-integral coordinates")
    expected = datum.labels_of_root([int(c) for c in two_rho])
    if expected != (2,) * datum.rank:
        raise AssertionError("positive-root sum disagrees with the Weyl vector")
    return rho


def weyl_orbit(datum: CartanDatum, w: WeightVector) -> tuple[WeightVector, ...]:
    """Full Weyl orbit of a weight by breadth-first closure under simple
    reflections, returned sorted descending (dominant representative first)."""
    if len(w.coeffs) != datum.rank:
        raise ValueError("dimension mismatch")
    seen: set[tuple[Rational, ...]] = {w.coeffs}
    frontier = [w.coeffs]
    while frontier:
        nxt = []
        for labels in frontier:
            for i in range(datum.rank):
                image = datum.reflect_labels(labels, i)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    ordered = sorted(seen, key=lambda t: tuple(Fraction(c) for c in t), reverse=True)
    return tuple(WeightVector(t) for t in ordered)


def _chamber_representative(datum: CartanDatum, w: WeightVector, sign: int) -> WeightVector:
    labels = w.coeffs
    for _ in range(_MAX_CHAMBER_STEPS):
        i = next((k for k, c in enumerate(labels) if sign * c < 0), None)
        if i is None:
            return WeightVector(labels)
        labels = datum.reflect_labels(labels, i)
    raise AssertionError("chamber descent did not terminate")


def dominant_representative(datum: CartanDatum, w: WeightVector) -> WeightVector:
    """The unique dominant weight in the Weyl orbit of ``w``."""
    return _chamber_representative(datum, w, sign=1)


def antidominant_representative(datum: CartanDatum, w: WeightVector) -> WeightVector:
    """The unique antidominant weight in the Weyl orbit of ``w`` (the lowest
    weight of the irreducible module when ``w`` is dominant)."""
    return _chamber_representative(datum, w, sign=-1)


# --- built-in Cartan data ---------------------------------------------------
#
# Normalization follows the two-length convention with short roots of squared
# length 2: simply-laced d_i = 1, doubled-edge algebras d_long = 2, and G2
# d_long = 3.  In particular F4 has d = (2, 2, 1, 1), i.e. (a1,a1) = 4 and
# (a3,a3) = 2, with nodes 1,2 long and 3,4 short.

_NAME_RE = re.compile(r"^([A-Ga-g])\s*_?\s*(\d+)$")


def _chain(rank: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def _builtin(series: str, rank: int) -> CartanDatum:
    if series == "A":
        if not 1 <= rank <= 8:
            raise ValueError("A-series supports ranks 1..8")
        return CartanDatum(tuple(map(tuple, _chain(rank))), (1,) * rank)
    if series == "B":
        if not 2 <= rank <= 8:
            raise ValueError("B-series supports ranks 2..8")
        m = _chain(rank)
        m[rank - 1][rank - 2] = -2  # last node short
        return CartanDatum(tuple(map(tuple, m)), (2,) * (rank - 1) + (1,))
    if series == "C":
        if not 2 <= rank <= 8:
            raise ValueError("C-series supports ranks 2..8")
        m = _chain(rank)
        m[rank - 2][rank - 1] = -2  # last node long
        return CartanDatum(tuple(map(tuple, m)), (1,) * (rank - 1) + (2,))
    if series == "D":
        if not 4 <= rank <= 8:
            raise ValueError("D-series supports ranks 4..8")
        m = _chain(rank - 1)
        for row in m:
            row.append(0)
        m.append([0] * rank)
        m[rank - 1][rank - 1] = 2
        m[rank - 3][rank - 1] = -1
        m[rank - 1][rank - 3] = -1
        return CartanDatum(tuple(map(tuple, m)), (1,) * rank)
    if series == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E-series supports ranks 6, 7, 8")
        # chain 1-3-4-5-...-rank with node 2 attached to node 4
        m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, rank)]
        for a, b in edges:
            m[a - 1][b - 1] = -1
            m[b - 1][a - 1] = -1
        return CartanDatum(tuple(map(tuple, m)), (1,) * rank)
    if series == "F":
        if rank != 4:
            raise ValueError("F-series supports rank 4 only")
        m = (
            (2, -1, 0, 0),
            (-1, 2, -1, 0),
            (0, -2, 2, -1),
            (0, 0, -1, 2),
        )
        return CartanDatum(m, (2, 2, 1, 1))
    if series == "G":
        if rank != 2:
            raise ValueError("G-series supports rank 2 only")
        return CartanDatum(((2, -1), (-3, 2)), (3, 1))
    raise ValueError(f"unknown series {series!r}")


def cartan_datum(name: str) -> CartanDatum:
    """Built-in Cartan datum by name, e.g. ``"F4"``, ``"A1"``, ``"G2"``."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValueError(f"unrecognized algebra name {name!r}")
    return _builtin(m.group(1).upper(), int(m.group(2)))


def _parse_norm(x: object) -> Rational:
    if isinstance(x, bool):
        raise ValueError("norms must be rational numbers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return _exact(Fraction(x))
    raise ValueError(f"cannot parse norm {x!r} (use int or 'p/q' string)")


def load_cartan(source: str | Path | dict) -> CartanDatum:
    """Load a Cartan datum from a JSON file or parsed dict:
    ``{"cartan": [[...]], "norms": [...]}`` with norms as ints or 'p/q'."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = source
    try:
        cartan = tuple(tuple(int(x) for x in row) for row in data["cartan"])
        norms = tuple(_parse_norm(x) for x in data["norms"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed Cartan data: {exc}") from exc
    return CartanDatum(cartan, norms)


def resolve_algebra(spec: str) -> CartanDatum:
    """Resolve an algebra argument: a built-in name or a JSON file path."""
    try:
        return cartan_datum(spec)
    except ValueError:
        path = Path(spec)
        if path.exists():
            return load_cartan(path)
        raise
