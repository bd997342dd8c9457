"""Sparse multivariate Laurent polynomials over arbitrary-precision integers.

Terms live in a hash map from exponent vectors (tuples of ints, negative
entries allowed) to nonzero integer coefficients; order is imposed only at
iteration and serialization time, using graded lexicographic order (total
degree first, then lex).  Values are immutable: every operation returns a
new polynomial.

``exact_div`` implements the only division offered: quotient-with-zero-
remainder, cancelling the graded-lex leading term of the running remainder
against the leading term of the divisor.  A nonzero remainder is reported as
:class:`InexactDivisionError`; in this package that always signals an
upstream bug, never data.
"""

from __future__ import annotations

import heapq
import json
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

_MAX_DIV_STEPS = 50_000_000


class InexactDivisionError(ArithmeticError):
    """Division left a remainder; carries one offending remainder term."""

    def __init__(self, message: str, term: tuple[Exponent, int] | None = None):
        super().__init__(message)
        self.term = term


def _glex(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c == 0:
                    continue
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length disagrees with nvars")
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self._terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPolynomial":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "LaurentPolynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def terms(self) -> Iterator[tuple[Exponent, int]]:
        """Terms in canonical (graded-lex ascending) order."""
        for e in sorted(self._terms, key=_glex):
            yield e, self._terms[e]

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    def leading_term(self) -> tuple[Exponent, int]:
        """Graded-lex maximal term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_glex)
        return e, self._terms[e]

    def trailing_term(self) -> tuple[Exponent, int]:
        """Graded-lex minimal term."""
        if not self._terms:
            raise ValueError("zero polynomial has no trailing term")
        e = min(self._terms, key=_glex)
        return e, self._terms[e]

    def exponent_floor(self) -> Exponent:
        """Coordinatewise minimum over the support (zero vector if empty)."""
        if not self._terms:
            return (0,) * self.nvars
        cols = zip(*self._terms)
        return tuple(min(col) for col in cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    # -- ring operations -----------------------------------------------------

    def _check_compatible(self, other: "LaurentPolynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"nvars mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._wrap(out)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._wrap(out)

    def __neg__(self) -> "LaurentPolynomial":
        return self._wrap({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            if other == 0:
                return LaurentPolynomial(self.nvars)
            return self._wrap({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        from operator import add

        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        b_items = list(b.items())
        for ea, ca in a.items():
            for eb, cb in b_items:
                e = tuple(map(add, ea, eb))
                v = get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._wrap(out)

    __rmul__ = __mul__

    def inverted(self) -> "LaurentPolynomial":
        """Substitute every variable by its reciprocal (negate exponents)."""
        return self._wrap({tuple(-x for x in e): c for e, c in self._terms.items()})

    def shifted(self, exponents: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial u^exponents."""
        off = tuple(exponents)
        if len(off) != self.nvars:
            raise ValueError("exponent length disagrees with nvars")
        return self._wrap(
            {tuple(map(sum, zip(e, off))): c for e, c in self._terms.items()}
        )

    def _wrap(self, terms: dict[Exponent, int]) -> "LaurentPolynomial":
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p.nvars = self.nvars
        p._terms = terms
        return p

    # -- exact division ------------------------------------------------------

    def exact_div(self, den: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient q with ``q * den == self`` exactly.

        Runs graded-lex leading-term cancellation, bucketed by total degree
        so the frontier heap never spans the whole remainder.  Raises
        :class:`InexactDivisionError` (with the offending term) as soon as a
        would-be quotient term falls below the feasible support or a leading
        coefficient fails to divide.
        """
        if not isinstance(den, LaurentPolynomial):
            raise TypeError("divisor must be a LaurentPolynomial")
        self._check_compatible(den)
        if den.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPolynomial(self.nvars)

        from operator import add, neg, sub

        dlead = max(den._terms, key=_glex)
        dlc = den._terms[dlead]
        dlead_deg = sum(dlead)
        # divisor tail grouped by total degree: one band lookup per group
        tail_by_deg: dict[int, list[tuple[Exponent, int]]] = {}
        for e, c in den._terms.items():
            if e != dlead:
                tail_by_deg.setdefault(sum(e), []).append((e, c))
        tail_groups = sorted(tail_by_deg.items(), reverse=True)

        # Every exact quotient term t satisfies t + min(den) >= min(num),
        # so t >= min(num) - min(den) in graded-lex order.
        nmin = min(self._terms, key=_glex)
        dmin = min(den._terms, key=_glex)
        floor_key = _glex(tuple(map(sub, nmin, dmin)))

        bands: dict[int, dict[Exponent, int]] = {}
        for e, c in self._terms.items():
            bands.setdefault(sum(e), {})[e] = c

        quotient: dict[Exponent, int] = {}
        steps = 0
        heappush, heappop = heapq.heappush, heapq.heappop
        while bands:
            deg = max(bands)
            band = bands[deg]
            heap = [tuple(map(neg, e)) for e in band]
            heapq.heapify(heap)
            band_get = band.get
            while heap:
                e = tuple(map(neg, heappop(heap)))
                c = band_get(e)
                if c is None:
                    continue
                steps += 1
                if steps > _MAX_DIV_STEPS:
                    raise InexactDivisionError(
                        "division step guard exceeded", term=(e, c)
                    )
                t = tuple(map(sub, e, dlead))
                tdeg = deg - dlead_deg
                if (tdeg, t) < floor_key:
                    raise InexactDivisionError(
                        f"remainder term {e} with coefficient {c} is not "
                        "reducible within the exact-quotient support",
                        term=(e, c),
                    )
                if dlc == 1:
                    qc = c
                elif dlc == -1:
                    qc = -c
                else:
                    qc, rem = divmod(c, dlc)
                    if rem:
                        raise InexactDivisionError(
                            f"leading coefficient {dlc} does not divide {c} "
                            f"at exponent {e}",
                            term=(e, c),
                        )
                quotient[t] = quotient.get(t, 0) + qc
                del band[e]
                for fdeg, group in tail_groups:
                    gdeg = tdeg + fdeg
                    target = bands.get(gdeg)
                    if target is None:
                        target = bands[gdeg] = {}
                    if gdeg == deg:
                        target_get = target.get
                        for f, cf in group:
                            g = tuple(map(add, t, f))
                            v = target_get(g)
                            if v is None:
                                target[g] = -qc * cf
                                heappush(heap, tuple(map(neg, g)))
                            else:
                                v -= qc * cf
                                if v:
                                    target[g] = v
                                else:
                                    del target[g]
                    else:
                        target_get = target.get
                        for f, cf in group:
                            g = tuple(map(add, t, f))
                            v = target_get(g)
                            if v is None:
                                target[g] = -qc * cf
                            else:
                                v -= qc * cf
                                if v:
                                    target[g] = v
                                else:
                                    del target[g]
            del bands[deg]
            # drop any bands the tail subtraction emptied along the way
            for d in [d for d, b in bands.items() if not b]:
                del bands[d]
        return self._wrap({e: c for e, c in quotient.items() if c})

    # -- specialization and evaluation ----------------------------------------

    def specialize(self, images: Sequence[Sequence[int]]) -> "LaurentPolynomial":
        """Substitute each variable by a monomial in a target variable set.

        ``images[i]`` is the exponent vector of the monomial replacing
        variable i; all images must share one target length.  Terms are
        recollected exactly.
        """
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        imgs = [tuple(int(x) for x in im) for im in images]
        if imgs:
            m = len(imgs[0])
            if any(len(im) != m for im in imgs):
                raise ValueError("all images must have the same target length")
        else:
            m = 0
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            target = [0] * m
            for power, im in zip(e, imgs):
                if power:
                    for k in range(m):
                        target[k] += power * im[k]
            key = tuple(target)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                del out[key]
        return LaurentPolynomial(m, out)

    def evaluate_at_one(self) -> int:
        """Value with every variable set to 1: the coefficient sum."""
        return sum(self._terms.values())

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPolynomial":
        terms = {tuple(t["e"]): int(t["c"]) for t in obj["terms"]}
        return cls(int(obj["nvars"]), terms)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPolynomial":
        return cls.from_json_obj(json.loads(text))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        """Human-readable form, canonical term order."""
        if self.is_zero:
            return "0"
        if names is None:
            names = [f"u{i + 1}" for i in range(self.nvars)]
        elif len(names) != self.nvars:
            raise ValueError("one name per variable required")
        pieces: list[str] = []
        for e, c in self.terms():
            factors = [
                (names[i] if p == 1 else f"{names[i]}^{p}")
                for i, p in enumerate(e)
                if p != 0
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.nvars}, {len(self._terms)} terms)"


def product(polys: Iterable[LaurentPolynomial], nvars: int) -> LaurentPolynomial:
    """Product of an iterable of polynomials (identity if empty)."""
    acc = LaurentPolynomial.one(nvars)
    for p in polys:
        acc = acc * p
    return acc
