"""Exact sparse multivariate polynomials over the rationals.

The catalog works in Q[x, y, z, t]; every polynomial it stores has at most
eight terms, so terms live in a dict from exponent tuple to a nonzero
``Fraction``.  Lines in P^3 are given by two independent linear forms and
points by projective coordinate vectors; both compare exactly, never
numerically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

DEFAULT_NAMES = ("x", "y", "z", "t")

Exponents = tuple[int, ...]


class PolyParseError(ValueError):
    """Input text is not a polynomial in the supported grammar."""


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


class MultiPoly:
    """Sparse polynomial with exact rational coefficients.

    Immutable by convention: all arithmetic returns new instances and the
    term dict is never exposed mutably.
    """

    __slots__ = ("_terms", "names")

    def __init__(
        self,
        terms: Mapping[Sequence[int], object] | None = None,
        names: Sequence[str] = DEFAULT_NAMES,
    ) -> None:
        self.names = tuple(names)
        nvars = len(self.names)
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars:
                raise ValueError(f"exponent vector {key} has wrong length")
            if any(e < 0 for e in key):
                raise ValueError("exponents must be nonnegative")
            c = _as_fraction(coeff)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(names: Sequence[str] = DEFAULT_NAMES) -> "MultiPoly":
        return MultiPoly({}, names)

    @staticmethod
    def constant(value: object, names: Sequence[str] = DEFAULT_NAMES) -> "MultiPoly":
        return MultiPoly({tuple(0 for _ in names): _as_fraction(value)}, names)

    @staticmethod
    def variable(index: int, names: Sequence[str] = DEFAULT_NAMES) -> "MultiPoly":
        exps = tuple(1 if i == index else 0 for i in range(len(names)))
        return MultiPoly({exps: 1}, names)

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(int(e) for e in exps), Fraction(0))

    def linear_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficient vector of a homogeneous linear form."""
        if self.is_zero or self.total_degree() != 1 or not self.is_homogeneous():
            raise ValueError("homogeneous linear form required")
        out = []
        for i in range(len(self.names)):
            exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
            out.append(self._terms.get(exps, Fraction(0)))
        return tuple(out)

    # -- ring structure ----------------------------------------------------

    def _same_ring(self, other: "MultiPoly") -> None:
        if self.names != other.names:
            raise ValueError(f"mixed variable sets {self.names} and {other.names}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same_ring(other)
        merged = dict(self._terms)
        for exps, c in other._terms.items():
            merged[exps] = merged.get(exps, Fraction(0)) + c
        return MultiPoly(merged, self.names)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self._terms.items()}, self.names)

    def __mul__(self, other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._same_ring(other)
            out: dict[Exponents, Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = out.get(key, Fraction(0)) + c1 * c2
            return MultiPoly(out, self.names)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, value: object) -> "MultiPoly":
        c = _as_fraction(value)
        return MultiPoly({e: c * v for e, v in self._terms.items()}, self.names)

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.names)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.names == other.names
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self._terms.items())))

    # -- calculus and evaluation --------------------------------------------

    def partial(self, index: int) -> "MultiPoly":
        out: dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = tuple(v - 1 if i == index else v for i, v in enumerate(exps))
            out[key] = out.get(key, Fraction(0)) + c * e
        return MultiPoly(out, self.names)

    def evaluate(self, point: Sequence[object]) -> Fraction:
        if len(point) != len(self.names):
            raise ValueError("wrong number of coordinates")
        values = [_as_fraction(p) for p in point]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def compose_linear(
        self, images: Sequence[Sequence[object]], names: Sequence[str]
    ) -> "MultiPoly":
        """Substitute variable i by the linear form with coefficients images[i]."""
        if len(images) != len(self.names):
            raise ValueError("one image per variable required")
        new_names = tuple(names)
        forms = [
            MultiPoly(
                {
                    tuple(1 if j == k else 0 for j in range(len(new_names))): c
                    for k, c in enumerate(img)
                },
                new_names,
            )
            for img in images
        ]
        result = MultiPoly.zero(new_names)
        for exps, c in self._terms.items():
            term = MultiPoly.constant(c, new_names)
            for form, e in zip(forms, exps):
                for _ in range(e):
                    term = term * form
            result = result + term
        return result

    # -- text form -----------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        # Graded lexicographic: total degree first, then exponent vector.
        return sorted(
            self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for exps, coeff in self._sorted_terms():
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]\w*)|(?P<op>[-+*^()]))")


def parse_poly(text: str, names: Sequence[str] = DEFAULT_NAMES) -> MultiPoly:
    """Parse signed integer-coefficient monomials like ``x^2*z + y^3``.

    Grammar: terms joined by + or -, each term an optional integer
    coefficient and variables with optional ^exponent, joined by *.
    Parentheses are not supported; catalog polynomials are stored expanded.
    """
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected character at {text[pos:]!r}")
            break
        tokens.append(m.group(m.lastgroup))  # type: ignore[arg-type]
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial text")
    if "(" in tokens or ")" in tokens:
        raise PolyParseError("parentheses are not part of the polynomial grammar")

    index = {n: i for i, n in enumerate(names)}
    result = MultiPoly.zero(names)
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
            first = False
        if i >= n:
            raise PolyParseError("dangling sign")
        coeff = sign
        exps = [0] * len(names)
        expect_factor = True
        saw_factor = False
        while i < n and tokens[i] not in "+-":
            tok = tokens[i]
            if tok == "*":
                if expect_factor:
                    raise PolyParseError("misplaced *")
                expect_factor = True
                i += 1
                continue
            if not expect_factor and saw_factor:
                raise PolyParseError(f"missing * before {tok!r}")
            if tok.isdigit():
                if saw_factor:
                    raise PolyParseError("integer coefficient must lead its term")
                coeff *= int(tok)
            elif tok in index:
                power = 1
                if i + 1 < n and tokens[i + 1] == "^":
                    if i + 2 >= n or not tokens[i + 2].isdigit():
                        raise PolyParseError("^ must be followed by an integer")
                    power = int(tokens[i + 2])
                    i += 2
                exps[index[tok]] += power
            else:
                raise PolyParseError(f"unknown variable {tok!r}")
            saw_factor = True
            expect_factor = False
            i += 1
        if expect_factor and saw_factor:
            raise PolyParseError("dangling *")
        if not saw_factor:
            raise PolyParseError("empty term")
        result = result + MultiPoly({tuple(exps): coeff}, names)
        first = False
    if result.names != tuple(names):
        raise PolyParseError("internal variable mismatch")
    return result


# ---------------------------------------------------------------------------
# Projective points and lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointP3:
    """Projective point given by a nonzero coordinate representative."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence[object]) -> None:
        values = tuple(_as_fraction(c) for c in coords)
        if len(values) != 4:
            raise ValueError("four coordinates required")
        if not any(values):
            raise ValueError("projective point needs a nonzero representative")
        object.__setattr__(self, "coords", values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointP3):
            return NotImplemented
        a, b = self.coords, other.coords
        # Proportionality: all 2x2 minors vanish.
        for i in range(4):
            for j in range(i + 1, 4):
                if a[i] * b[j] != a[j] * b[i]:
                    return False
        return True

    def __hash__(self) -> int:
        lead = next(i for i, c in enumerate(self.coords) if c)
        scale = self.coords[lead]
        return hash(tuple(c / scale for c in self.coords))


def _rref(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        target = next(
            (r for r in range(pivot_row, rows) if m[r][col] != 0), None
        )
        if target is None:
            continue
        m[pivot_row], m[target] = m[target], m[pivot_row]
        lead = m[pivot_row][col]
        m[pivot_row] = [v / lead for v in m[pivot_row]]
        for r in range(rows):
            if r != pivot_row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * p for v, p in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == rows:
            break
    return m


def kernel_basis(matrix: Sequence[Sequence[object]]) -> list[tuple[Fraction, ...]]:
    """Kernel basis in reduced echelon form, deterministic."""
    m = [[_as_fraction(v) for v in row] for row in matrix]
    if not m:
        raise ValueError("empty matrix")
    cols = len(m[0])
    r = _rref(m)
    pivots: dict[int, int] = {}
    for i, row in enumerate(r):
        lead = next((j for j, v in enumerate(row) if v != 0), None)
        if lead is not None:
            pivots[lead] = i
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for col, row in pivots.items():
            vec[col] = -r[row][f]
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class LineP3:
    """Line in P^3 cut out by two independent linear forms."""

    forms: tuple[MultiPoly, MultiPoly]

    def __init__(self, form_a: MultiPoly, form_b: MultiPoly) -> None:
        for f in (form_a, form_b):
            if f.names != DEFAULT_NAMES:
                raise ValueError("lines live in the x, y, z, t ring")
            f.linear_coefficients()  # raises unless homogeneous linear
        matrix = [form_a.linear_coefficients(), form_b.linear_coefficients()]
        if len(kernel_basis(matrix)) != 2:
            raise ValueError("forms must be linearly independent")
        object.__setattr__(self, "forms", (form_a, form_b))

    def coefficient_matrix(self) -> list[tuple[Fraction, ...]]:
        return [f.linear_coefficients() for f in self.forms]

    def spanning_points(self) -> tuple[PointP3, PointP3]:
        """Two points spanning the line, from the echelon kernel basis."""
        p, q = kernel_basis(self.coefficient_matrix())
        return PointP3(p), PointP3(q)

    def contains(self, pt: PointP3) -> bool:
        return all(f.evaluate(pt.coords) == 0 for f in self.forms)

    def sample_points(self, count: int) -> list[PointP3]:
        """Distinct points q, p, p+q, p+2q, ... on the line."""
        p, q = self.spanning_points()
        out = [PointP3(q.coords)]
        k = 0
        while len(out) < count:
            out.append(PointP3(tuple(a + k * b for a, b in zip(p.coords, q.coords))))
            k += 1
        return out

    def same_line(self, other: "LineP3") -> bool:
        mine = self.spanning_points()
        return all(other.contains(pt) for pt in mine)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LineP3):
            return NotImplemented
        return self.same_line(other)

    def __hash__(self) -> int:
        p, q = self.spanning_points()
        return hash((hash(p), hash(q)))

    def __str__(self) -> str:
        return f"<{self.forms[0]}, {self.forms[1]}>"


def poly_eval(p: MultiPoly, pt: PointP3) -> Fraction:
    """Value of p at the chosen representative of pt."""
    return p.evaluate(pt.coords)


def restrict_to_line(p: MultiPoly, line: LineP3) -> MultiPoly:
    """Compose p with the parametrization [s:u] -> s*P + u*Q of the line.

    The result is a polynomial in (s, u); it is identically zero exactly
    when the line lies inside {p = 0}.
    """
    pt_p, pt_q = line.spanning_points()
    images = [
        (a, b) for a, b in zip(pt_p.coords, pt_q.coords)
    ]
    return p.compose_linear(images, ("s", "u"))


def jacobian_vanishes(p: MultiPoly, pt: PointP3) -> bool:
    """True when all four partial derivatives vanish at pt.

    For homogeneous p of positive degree, the Euler relation then forces
    p(pt) = 0 as well.
    """
    if not p.is_homogeneous():
        raise ValueError("homogeneous polynomial required")
    return all(p.partial(i).evaluate(pt.coords) == 0 for i in range(4))


def intersect_lines(a: LineP3, b: LineP3) -> PointP3 | None:
    """Intersection point of two distinct lines, or None if disjoint.

    Raises when the lines coincide (infinitely many common points).
    """
    if a.same_line(b):
        raise ValueError("lines coincide")
    matrix = a.coefficient_matrix() + b.coefficient_matrix()
    kernel = kernel_basis(matrix)
    if not kernel:
        return None
    return PointP3(kernel[0])
