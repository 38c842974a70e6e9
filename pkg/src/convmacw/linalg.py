"""Exact linear algebra over a finite field: shape-aware matrices,
reduced row echelon form, kernels, and canonical subspaces.

Vectors are plain tuples of :class:`~convmacw.field.FieldElement`.
Matrices carry their shape explicitly so zero-dimensional edges (empty
state spaces, duals of full codes) work uniformly.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec, enumerate_vectors, vector_index

Vec = tuple  # tuple[FieldElement, ...]


def zero_vec(field: FieldSpec, m: int) -> Vec:
    return (field.zero,) * m


def unit_vec(field: FieldSpec, m: int, i: int) -> Vec:
    return tuple(field.one if j == i else field.zero for j in range(m))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(c: FieldElement, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def vec_dot(a: Vec, b: Vec) -> FieldElement:
    """Canonical bilinear form sum(a_i * b_i); needs at least one entry
    to infer the field, so zero-length vectors are handled by callers."""
    it = iter(zip(a, b, strict=True))
    try:
        x, y = next(it)
    except StopIteration:
        raise ValueError("cannot infer the field of an empty pairing") from None
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def is_zero_vec(a: Vec) -> bool:
    return not any(a)


class FMat:
    """Immutable matrix over a finite field with explicit shape."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"rows do not form a {nrows}x{ncols} matrix")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "FMat":
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field: FieldSpec, m: int) -> "FMat":
        return cls(field, m, m, [unit_vec(field, m, i) for i in range(m)])

    @classmethod
    def zero(cls, field: FieldSpec, nrows: int, ncols: int) -> "FMat":
        return cls(field, nrows, ncols, [zero_vec(field, ncols)] * nrows)

    @classmethod
    def from_int_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "FMat":
        """Rows of integers, reduced into the prime subfield."""
        conv = [tuple(field.from_int(v) for v in r) for r in rows]
        return cls.from_rows(field, conv, ncols)

    def row(self, i: int) -> Vec:
        return self.rows[i]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.rows[i][j]

    def transpose(self) -> "FMat":
        return FMat(self.field, self.ncols, self.nrows,
                    [self.column(j) for j in range(self.ncols)])

    def __add__(self, other: "FMat") -> "FMat":
        self._same_shape(other)
        return FMat(self.field, self.nrows, self.ncols,
                    [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "FMat") -> "FMat":
        self._same_shape(other)
        return FMat(self.field, self.nrows, self.ncols,
                    [vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "FMat":
        return FMat(self.field, self.nrows, self.ncols,
                    [vec_neg(r) for r in self.rows])

    def __matmul__(self, other: "FMat") -> "FMat":
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = [zero] * other.ncols
            for t, c in enumerate(r):
                if c:
                    orow = other.rows[t]
                    for j in range(other.ncols):
                        if orow[j]:
                            row[j] = row[j] + c * orow[j]
            out.append(tuple(row))
        return FMat(self.field, self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def rank(self) -> int:
        return len(rref(self.field, self.rows, self.ncols)[0])

    def inverse(self) -> "FMat":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices can be inverted")
        m = self.nrows
        aug = [self.rows[i] + unit_vec(self.field, m, i) for i in range(m)]
        reduced, pivots = rref(self.field, aug, 2 * m)
        if pivots[:m] != tuple(range(m)) or len(pivots) != m:
            raise ValueError("matrix is singular")
        return FMat(self.field, m, m, [r[m:] for r in reduced])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __eq__(self, other):
        return (
            isinstance(other, FMat)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def to_int_rows(self) -> list[list[int]]:
        return [[a.code for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"FMat({self.nrows}x{self.ncols}: {body})"


def vec_mat(v: Vec, m: FMat) -> Vec:
    """Row vector times matrix."""
    if len(v) != m.nrows:
        raise ValueError(f"vector length {len(v)} does not match {m.nrows} rows")
    zero = m.field.zero
    out = [zero] * m.ncols
    for c, row in zip(v, m.rows):
        if c:
            for j in range(m.ncols):
                if row[j]:
                    out[j] = out[j] + c * row[j]
    return tuple(out)


def block_matrix(field: FieldSpec, grid) -> FMat:
    """Assemble a matrix from a 2-d grid of FMat blocks with matching dims."""
    rows = []
    ncols = None
    for block_row in grid:
        height = block_row[0].nrows
        for b in block_row:
            if b.nrows != height:
                raise ValueError("inconsistent block heights")
        width = sum(b.ncols for b in block_row)
        if ncols is None:
            ncols = width
        elif ncols != width:
            raise ValueError("inconsistent block widths")
        for i in range(height):
            row = []
            for b in block_row:
                row.extend(b.rows[i])
            rows.append(tuple(row))
    return FMat(field, len(rows), ncols or 0, rows)


def rref(field: FieldSpec, rows, ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c].inverse()
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def right_null_space(field: FieldSpec, m: FMat) -> tuple[Vec, ...]:
    """RREF basis of {v : m @ v^t = 0}, i.e. the orthogonal of m's rows."""
    reduced, pivots = rref(field, m.rows, m.ncols)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [field.zero] * m.ncols
        v[j] = field.one
        for r, pc in zip(reduced, pivots):
            v[pc] = -r[j]
        basis.append(tuple(v))
    reduced2, _ = rref(field, basis, m.ncols)
    return reduced2


class Subspace:
    """Linear subspace of F^m with a canonical RREF basis.

    The basis is unique per subspace, so equality and hashing are plain
    data comparisons.
    """

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: FieldSpec, ambient: int, basis):
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in basis)

    @classmethod
    def from_rows(cls, field: FieldSpec, ambient: int, rows) -> "Subspace":
        basis, _ = rref(field, rows, ambient)
        return cls(field, ambient, basis)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, FMat.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> FMat:
        return FMat(self.field, self.dim, self.ambient, self.basis)

    def contains(self, vec: Vec) -> bool:
        return self.coordinates(vec) is not None

    def coordinates(self, vec: Vec) -> Vec | None:
        """Coefficients of vec over the basis, or None if outside."""
        if len(vec) != self.ambient:
            raise ValueError("vector does not live in the ambient space")
        v = list(vec)
        coords = []
        for row in self.basis:
            lead = next(j for j, x in enumerate(row) if x)
            c = v[lead]
            coords.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return Subspace.from_rows(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return (self.orth() + other.orth()).orth()

    def orth(self) -> "Subspace":
        """Orthogonal complement under the canonical bilinear form."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient)
        return Subspace(self.field, self.ambient,
                        right_null_space(self.field, self.matrix()))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def points(self):
        """All q^dim points, in span-coefficient order."""
        if self.dim == 0:
            yield zero_vec(self.field, self.ambient)
            return
        for coeffs in enumerate_vectors(self.field, self.dim):
            v = zero_vec(self.field, self.ambient)
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = vec_add(v, vec_scale(c, b))
            yield v

    def points_by_index(self) -> list[Vec]:
        """All points sorted by their canonical ambient index."""
        return sorted(self.points(), key=vector_index)

    def _compatible(self, other):
        if self.ambient != other.ambient or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def deterministic_complement(base: Subspace, within: Subspace) -> Subspace:
    """Lexicographically first complement of ``base`` inside ``within``.

    Scans the points of ``within`` in canonical ambient-index order and
    greedily extends; requires base <= within.
    """
    if not base.is_subspace_of(within):
        raise ValueError("base is not contained in the enclosing space")
    span = base
    picked = []
    target = within.dim - base.dim
    for v in within.points_by_index():
        if len(picked) == target:
            break
        if not span.contains(v):
            picked.append(v)
            span = span + Subspace.from_rows(base.field, base.ambient, (v,))
    comp = Subspace.from_rows(base.field, base.ambient, picked)
    if comp.dim != target:
        raise AssertionError("complement extension failed")
    return comp


def coeff_preimage(field: FieldSpec, vectors, target: Subspace) -> Subspace:
    """{c : sum(c_i * vectors_i) in target} as a subspace of F^len(vectors)."""
    m = len(vectors)
    if m == 0:
        return Subspace.zero(field, 0)
    tb = target.basis
    stacked = FMat.from_rows(field, list(vectors) + list(tb), target.ambient)
    left = right_null_space(field, stacked.transpose())
    proj = [v[:m] for v in left]
    return Subspace.from_rows(field, m, proj)
