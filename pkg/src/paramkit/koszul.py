"""Koszul complexes, exterior-power comparison maps, the determinant
difference identity, and regular-sequence checks by successive colons.

Basis convention: level k of the complex on x_1..x_d is free on the k-subsets
of {1..d} in lexicographic order, and the differential acts by
∂(e_{i1..ik}) = Σ_j (−1)^{j+1} x_{ij} e_{i1..îj..ik}.  With that convention
the comparison map induced by a lift y = A·x is ∧^k(Aᵀ) at level k: at level
one, ∂^x ∘ Aᵀ sends e_j to Σ_i A_{ji} x_i = y_j as required.  The reported
∧^k A itself (exterior_power_map) is the plain k×k-minor matrix of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadLevel,
    InvariantViolation,
    NotALift,
    RingMismatch,
    TooLong,
)
from .groebner import Ideal, ideal_equal, ideal_member
from .idealops import ElementSequence, as_sequence, bracket_power, colon
from .polyring import Polynomial, RingPresentation, render_poly

MAX_KOSZUL_LENGTH = 8


class CoeffMatrix:
    """Rectangular matrix with polynomial entries over one presentation."""

    __slots__ = ("ring", "rows", "_minor_cache")

    def __init__(self, ring: RingPresentation, rows):
        self.ring = ring
        fixed = []
        width = None
        for row in rows:
            out = []
            for e in row:
                if not isinstance(e, Polynomial):
                    e = ring.const(e)
                if not ring.compatible(e.ring):
                    raise RingMismatch("matrix entry from a different ring")
                out.append(Polynomial(ring, e.terms, _normalized=True))
            if width is None:
                width = len(out)
            elif len(out) != width:
                raise RingMismatch("ragged matrix rows")
            fixed.append(tuple(out))
        self.rows = tuple(fixed)
        self._minor_cache = {}

    @classmethod
    def identity(cls, ring: RingPresentation, n: int) -> "CoeffMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"<{self.nrows}x{self.ncols} matrix over {self.ring.name}>"

    def render(self):
        return [[render_poly(e) for e in row] for row in self.rows]

    def render_text(self) -> str:
        """Matrix literal in the input grammar: [[a, 0], [0, b]]."""
        return "[" + ", ".join(
            "[" + ", ".join(render_poly(e) for e in row) + "]"
            for row in self.rows
        ) + "]"

    def transpose(self) -> "CoeffMatrix":
        return CoeffMatrix(self.ring, list(zip(*self.rows)))

    def __mul__(self, other):
        if not isinstance(other, CoeffMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise RingMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        zero = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(row)
        return CoeffMatrix(self.ring, rows)

    def apply(self, seq) -> list:
        """Column action: (A·x)_i = Σ_j A_ij x_j."""
        entries = list(seq)
        if self.ncols != len(entries):
            raise RingMismatch("matrix width differs from sequence length")
        out = []
        for row in self.rows:
            acc = self.ring.zero()
            for a, x in zip(row, entries):
                acc = acc + a * x
            out.append(acc)
        return out

    def minor(self, row_idx, col_idx) -> Polynomial:
        """Determinant of the submatrix on the given index tuples."""
        key = (tuple(row_idx), tuple(col_idx))
        hit = self._minor_cache.get(key)
        if hit is not None:
            return hit
        rows, cols = key
        if not rows:
            result = self.ring.one()
        else:
            result = self.ring.zero()
            r0 = rows[0]
            rest = rows[1:]
            for pos, c in enumerate(cols):
                entry = self.rows[r0][c]
                if not entry:
                    continue
                sub = self.minor(rest, cols[:pos] + cols[pos + 1:])
                term = entry * sub
                result = result + term if pos % 2 == 0 else result - term
        self._minor_cache[key] = result
        return result

    def det(self) -> Polynomial:
        if self.nrows != self.ncols:
            raise RingMismatch("determinant of a non-square matrix")
        return self.minor(tuple(range(self.nrows)), tuple(range(self.ncols)))

    def entrywise_power(self, t: int) -> "CoeffMatrix":
        """A^[t]: every entry raised to the t-th power."""
        return CoeffMatrix(
            self.ring, [[e ** t for e in row] for row in self.rows]
        )


def _is_zero_in_S(poly: Polynomial) -> bool:
    return Ideal(poly.ring, []).contains(poly)


def matrices_equal_in_S(M: CoeffMatrix, N: CoeffMatrix) -> bool:
    if M.nrows != N.nrows or M.ncols != N.ncols:
        return False
    for i in range(M.nrows):
        for j in range(M.ncols):
            if not _is_zero_in_S(M.rows[i][j] - N.rows[i][j]):
                return False
    return True


# -- the complex -----------------------------------------------------------

def subset_basis(d: int, k: int):
    """k-subsets of {1..d} in lexicographic order (the level-k basis)."""
    return [tuple(c) for c in combinations(range(1, d + 1), k)]


@dataclass(frozen=True)
class KoszulComplex:
    seq: ElementSequence
    differentials: tuple  # differentials[i] is ∂_{i+1} as a CoeffMatrix

    @property
    def length(self) -> int:
        return len(self.seq)

    def differential(self, k: int) -> CoeffMatrix:
        if not 1 <= k <= self.length:
            raise BadLevel(f"level {k} outside 1..{self.length}")
        return self.differentials[k - 1]

    def basis(self, k: int):
        if not 0 <= k <= self.length:
            raise BadLevel(f"level {k} outside 0..{self.length}")
        return subset_basis(self.length, k)


def koszul_complex(seq) -> KoszulComplex:
    """Build all differentials and verify ∂∘∂ = 0 exactly."""
    seq = as_sequence(seq)
    d = len(seq)
    if not 1 <= d <= MAX_KOSZUL_LENGTH:
        raise TooLong(
            f"sequence length {d} outside 1..{MAX_KOSZUL_LENGTH}"
        )
    ring = seq.ring
    zero = ring.zero()
    diffs = []
    for k in range(1, d + 1):
        rows_basis = subset_basis(d, k - 1)
        cols_basis = subset_basis(d, k)
        row_index = {s: i for i, s in enumerate(rows_basis)}
        matrix = [[zero] * len(cols_basis) for _ in range(len(rows_basis))]
        for cj, T in enumerate(cols_basis):
            for j, ij in enumerate(T):
                face = T[:j] + T[j + 1:]
                entry = seq[ij - 1]
                if j % 2:
                    entry = -entry
                ri = row_index[face]
                matrix[ri][cj] = matrix[ri][cj] + entry
        diffs.append(CoeffMatrix(ring, matrix))
    for k in range(len(diffs) - 1):
        prod = diffs[k] * diffs[k + 1]
        for row in prod.rows:
            for e in row:
                if e:
                    raise InvariantViolation(
                        "koszul differentials do not compose to zero"
                    )
    return KoszulComplex(seq=seq, differentials=tuple(diffs))


# -- comparison maps -------------------------------------------------------

def exterior_power_map(A: CoeffMatrix, k: int) -> CoeffMatrix:
    """∧^k A: the matrix of k×k minors in lexicographic basis order."""
    if A.nrows != A.ncols:
        raise RingMismatch("exterior powers need a square matrix")
    d = A.nrows
    if not 0 <= k <= d:
        raise BadLevel(f"exterior power level {k} outside 0..{d}")
    basis = [tuple(i - 1 for i in s) for s in subset_basis(d, k)]
    rows = [
        [A.minor(T, U) for U in basis]
        for T in basis
    ]
    return CoeffMatrix(A.ring, rows)


def _check_lift(x, y, A: CoeffMatrix):
    """Raise NotALift unless y = A·x entrywise in S."""
    x, y = as_sequence(x), as_sequence(y)
    if A.nrows != len(y) or A.ncols != len(x):
        raise NotALift(
            f"matrix shape {A.nrows}x{A.ncols} does not map "
            f"length {len(x)} onto length {len(y)}"
        )
    image = A.apply(x)
    for i, (yi, im) in enumerate(zip(y, image)):
        if not _is_zero_in_S(yi - im):
            raise NotALift(f"entry {i + 1}: y differs from A*x in S", index=i + 1)
    return x, y


def chain_map_check(x, y, A: CoeffMatrix) -> bool:
    """Does the comparison map commute with both differentials at all levels?

    The level-k map is ∧^k(Aᵀ) (see module docstring); the check is
    ∂^x_k ∘ ∧^k(Aᵀ) = ∧^{k−1}(Aᵀ) ∘ ∂^y_k over S for every k.
    """
    x, y = _check_lift(x, y, A)
    kx = koszul_complex(x)
    ky = koszul_complex(y)
    At = A.transpose()
    levels = [exterior_power_map(At, k) for k in range(len(x) + 1)]
    for k in range(1, len(x) + 1):
        lhs = kx.differential(k) * levels[k]
        rhs = levels[k - 1] * ky.differential(k)
        if not matrices_equal_in_S(lhs, rhs):
            return False
    return True


def detcor_check(y, A: CoeffMatrix, B: CoeffMatrix, x) -> bool:
    """(y_1⋯y_d)^d (det A − det B) ∈ (y)^[d+1], for two lifts of y from x."""
    x1, y1 = _check_lift(x, y, A)
    _check_lift(x, y, B)
    d = len(y1)
    target = bracket_power(y1, d + 1).as_ideal
    probe = (y1.product() ** d) * (A.det() - B.det())
    member, _ = ideal_member(probe, target, want_witness=False)
    return member


# -- regular sequences -----------------------------------------------------

def is_regular_sequence(seq):
    """(regular?, first_failure 1-based or None).

    Checks (x_1..x_{i−1}) : x_i = (x_1..x_{i−1}) for each i, plus properness
    of the full ideal; an improper sequence reports failure with no index.
    """
    seq = as_sequence(seq)
    ring = seq.ring
    full = seq.as_ideal()
    if full.contains(ring.one()):
        return False, None
    for i, entry in enumerate(seq, start=1):
        prefix = Ideal(ring, seq.entries[: i - 1])
        if not entry or _is_zero_in_S(entry):
            return False, i
        quot = colon(prefix, entry)
        if not ideal_equal(quot, prefix):
            return False, i
    return True, None
