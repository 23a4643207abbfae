"""Exact integer intersection lattices and integer linear algebra.

Divisor classes are integer coefficient vectors in a fixed basis, the
intersection pairing comes from a symmetric Gram matrix, and cokernels of
integer matrices are read off a Smith normal form.  Everything is plain
arbitrary-precision ``int`` arithmetic: torsion orders and genus parities
do not survive rounding, so no floating point is allowed anywhere in this
module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    """A coefficient vector does not match the rank it is used in."""


class NonCurveClass(ValueError):
    """Genus formula applied to a class of the wrong parity."""


# ---------------------------------------------------------------------------
# Divisor classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivClass:
    """Integer coefficient vector of a divisor class in a fixed basis."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @staticmethod
    def of(*coeffs: int) -> "DivClass":
        return DivClass(tuple(coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "DivClass") -> "DivClass":
        self._match(other)
        return DivClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        self._match(other)
        return DivClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivClass":
        return DivClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> "DivClass":
        return DivClass(tuple(int(k) * a for a in self.coeffs))

    def _match(self, other: "DivClass") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatch(
                f"length {len(other.coeffs)} vs {len(self.coeffs)}"
            )

    def __repr__(self) -> str:
        return f"DivClass{self.coeffs}"


def blowup_class(a: int, multiplicities: Sequence[int]) -> DivClass:
    """Class ``a*H - sum(b_i * E_i)`` in the basis (H, E_1, ..., E_k)."""
    return DivClass((int(a), *(-int(b) for b in multiplicities)))


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntLattice:
    """Free Z-module with a symmetric integer pairing and a canonical class."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    canonical_class: DivClass
    basis_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.rank <= 0:
            raise ValueError("rank must be positive")
        if len(self.gram) != self.rank or any(len(r) != self.rank for r in self.gram):
            raise ValueError("Gram matrix must be rank x rank")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if len(self.canonical_class) != self.rank:
            raise ValueError("canonical class has wrong length")
        if len(self.basis_labels) != self.rank:
            raise ValueError("one label per basis vector required")

    def _check(self, d: DivClass) -> None:
        if len(d) != self.rank:
            raise DimensionMismatch(f"class length {len(d)} in rank-{self.rank} lattice")

    def pair(self, a: DivClass, b: DivClass) -> int:
        """Intersection number a.b via the Gram matrix."""
        self._check(a)
        self._check(b)
        total = 0
        for i, ai in enumerate(a.coeffs):
            if ai == 0:
                continue
            row = self.gram[i]
            total += ai * sum(g * bj for g, bj in zip(row, b.coeffs) if bj)
        return total

    def selfint(self, d: DivClass) -> int:
        return self.pair(d, d)

    def degree(self, d: DivClass) -> int:
        """Anticanonical degree, the pairing against -K."""
        return -self.pair(d, self.canonical_class)

    def arithmetic_genus(self, d: DivClass) -> int:
        """Adjunction genus 1 + (d.d + d.K)/2, which must be an integer."""
        value = self.selfint(d) + self.pair(d, self.canonical_class)
        if value % 2 != 0:
            raise NonCurveClass(f"d.d + d.K = {value} is odd for {d}")
        return 1 + value // 2

    def basis_class(self, index: int) -> DivClass:
        return DivClass(tuple(1 if i == index else 0 for i in range(self.rank)))

    def pairing_functional(self, c: DivClass) -> tuple[int, ...]:
        """Weights w with pair(d, c) = sum(d_i * w_i), for hot loops."""
        self._check(c)
        return tuple(
            sum(g * cj for g, cj in zip(row, c.coeffs) if cj) for row in self.gram
        )


def cubic_blowup_lattice() -> IntLattice:
    """Rank-7 lattice of a sextuple point blow-up of the plane.

    Basis (H, E1, ..., E6) with Gram diag(1, -1, ..., -1); the canonical
    class is -3H + E1 + ... + E6, of self-intersection 3.
    """
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(7))
        for i in range(7)
    )
    labels = ("H", "E1", "E2", "E3", "E4", "E5", "E6")
    return IntLattice(7, gram, DivClass((-3, 1, 1, 1, 1, 1, 1)), labels)


def hirzebruch_lattice(d: int, base_genus: int = 0) -> IntLattice:
    """Rank-2 lattice of a ruled surface with section of self-intersection -d.

    Basis (Sigma, f) with Gram [[-d, 1], [1, 0]].  The canonical class is
    -2*Sigma + (2*base_genus - 2 - d)*f; base_genus 1 gives the ruled model
    over an elliptic curve used for cones over smooth plane cubics.
    """
    gram = ((-d, 1), (1, 0))
    k = DivClass((-2, 2 * base_genus - 2 - d))
    return IntLattice(2, gram, k, ("Sigma", "f"))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithNormalForm:
    """Diagonalisation U * M * V = D with U, V unimodular.

    ``diagonal`` has min(rows, cols) entries d1 | d2 | ... with trailing
    zeros past the rank; all entries are nonnegative.
    """

    diagonal: tuple[int, ...]
    rank: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithNormalForm:
    """Smith normal form by elementary row/column reduction.

    The pivot is always a nonzero entry of minimal absolute value in the
    remaining submatrix (first such entry in row-major order), which makes
    the computation deterministic.
    """
    a = [[int(v) for v in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    u = _identity(rows)
    v = _identity(cols)

    def row_sub(i: int, k: int, q: int) -> None:
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def row_swap(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def col_sub(j: int, k: int, q: int) -> None:
        for r in a:
            r[j] -= q * r[k]
        for r in v:
            r[j] -= q * r[k]

    def col_swap(j: int, k: int) -> None:
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, rows):
            for j in range(t, cols):
                val = a[i][j]
                if val != 0 and (best is None or abs(val) < best_abs):
                    best = (i, j)
                    best_abs = abs(val)
        return best

    t = 0
    while t < min(rows, cols):
        pivot = find_pivot(t)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            if a[t][t] < 0:
                row_negate(t)
            p = a[t][t]
            # Clear the pivot column; a nonzero remainder is strictly
            # smaller than |p| and becomes the new pivot.
            restart = False
            for i in range(t + 1, rows):
                if a[i][t] == 0:
                    continue
                q, r = divmod(a[i][t], p)
                row_sub(i, t, q)
                if r:
                    row_swap(i, t)
                    restart = True
                    break
            if restart:
                continue
            restart = False
            for j in range(t + 1, cols):
                if a[t][j] == 0:
                    continue
                q, r = divmod(a[t][j], p)
                col_sub(j, t, q)
                if r:
                    col_swap(j, t)
                    restart = True
                    break
            if restart:
                continue
            # Divisibility: the pivot must divide the rest of the block.
            offender = None
            for i in range(t + 1, rows):
                if any(a[i][j] % p for j in range(t + 1, cols)):
                    offender = i
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)
        t += 1

    for i in range(min(rows, cols)):
        if a[i][i] < 0:
            row_negate(i)
    diagonal = tuple(a[i][i] for i in range(min(rows, cols)))
    rank = sum(1 for d in diagonal if d != 0)
    return SmithNormalForm(
        diagonal,
        rank,
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in v),
    )


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
        for row in a
    ]


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by cofactor expansion (audit sizes only)."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    if n == 1:
        return int(matrix[0][0])
    total = 0
    rest = [row[1:] for row in matrix]
    for i in range(n):
        if matrix[i][0] == 0:
            continue
        minor = [rest[k] for k in range(n) if k != i]
        total += (-1) ** i * matrix[i][0] * int_det(minor)
    return total


# ---------------------------------------------------------------------------
# Finitely generated abelian groups and cokernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group in canonical form.

    ``torsion`` lists the invariant factors greater than one, each
    dividing the next, so equal groups compare equal.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for t in self.torsion:
            if t <= 1:
                raise ValueError("torsion factors must exceed 1")
        for small, big in zip(self.torsion, self.torsion[1:]):
            if big % small != 0:
                raise ValueError("torsion factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


def cokernel(
    generators: Iterable[DivClass | Sequence[int]], target_rank: int
) -> FgAbGroup:
    """Cokernel of the map sending basis vectors to the given classes.

    The generators become the columns of an integer matrix with
    ``target_rank`` rows; the quotient of Z^target_rank by its column
    span is returned in canonical form.
    """
    columns: list[tuple[int, ...]] = []
    for g in generators:
        coeffs = g.coeffs if isinstance(g, DivClass) else tuple(int(x) for x in g)
        if len(coeffs) != target_rank:
            raise DimensionMismatch(
                f"generator of length {len(coeffs)} in rank {target_rank}"
            )
        columns.append(coeffs)
    if not columns:
        return FgAbGroup(target_rank)
    matrix = [[col[i] for col in columns] for i in range(target_rank)]
    snf = smith_normal_form(matrix)
    torsion = tuple(d for d in snf.invariant_factors if d > 1)
    return FgAbGroup(target_rank - snf.rank, torsion)


def determinantal_torsion_order(matrix: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(rank, torsion order) from gcds of all k x k minors.

    Brute-force enumeration of minors; independent of the elimination in
    :func:`smith_normal_form`, so the two can cross-check each other.
    """
    from itertools import combinations
    from math import gcd

    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    rank = 0
    order = 1
    for k in range(1, min(rows, cols) + 1):
        div = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[matrix[i][j] for j in ci] for i in ri]
                div = gcd(div, int_det(sub))
        if div == 0:
            break
        rank = k
        order = div
    return rank, order
