"""Controller canonical form of a minimal basic encoder and the linear
subspace machinery around its state space.

States live in F^delta; state pairs live in F^delta x F^delta, stored as
concatenated vectors of length 2*delta.  All subspaces come out with
canonical RREF bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckError
from .field import FieldSpec, enumerate_vectors, vector_index
from .linalg import (FMat, Subspace, Vec, coeff_preimage,
                     deterministic_complement, right_null_space, unit_vec,
                     vec_add, vec_mat, vec_neg, zero_vec)
from .polymat import CodeProfile, PolyMatrix


class StateSpace:
    """Canonical enumeration of F^delta and index bookkeeping."""

    __slots__ = ("field", "delta", "states", "size")

    def __init__(self, field: FieldSpec, delta: int):
        self.field = field
        self.delta = delta
        self.states = enumerate_vectors(field, delta)
        self.size = len(self.states)

    def index_of(self, vec: Vec) -> int:
        return vector_index(vec) if self.delta else 0

    def neg_index(self, i: int) -> int:
        return self.index_of(vec_neg(self.states[i]))


@dataclass(frozen=True)
class ControllerForm:
    """State-space quadruple (A, B, C, D) realizing an encoder, plus the
    index sets marking where the shift blocks start and end."""

    field: FieldSpec
    n: int
    k: int
    delta: int
    A: FMat
    B: FMat
    C: FMat
    D: FMat
    BtD: FMat
    profile: CodeProfile
    block_starts: frozenset[int]
    block_ends: frozenset[int]
    row_order: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.profile.r


@dataclass(frozen=True)
class PairSplit:
    """Direct sum decomposition of the state-pair space: a transversal of
    the entry-invariance kernel inside the connected pairs, the kernel
    itself, and the complement spanning the disconnected directions."""

    transversal: Subspace
    kernel: Subspace
    complement: Subspace


def controller_form(G: PolyMatrix) -> ControllerForm:
    """Build the controller canonical form, reordering rows so that the
    nonzero row degrees come first (descending, stable); the applied row
    order is recorded.  The transfer function is re-expanded from
    (A, B, C, D) and compared against G coefficient by coefficient."""
    profile = CodeProfile.from_encoder(G)  # rejects non-basic/non-minimal
    field = G.field
    k, n = G.nrows, G.ncols
    degs = [int(d) for d in G.row_degrees()]
    order = sorted(range(k), key=lambda i: -degs[i])
    rows = [G.rows[i] for i in order]
    degs = [degs[i] for i in order]
    r = profile.r
    delta = profile.delta

    starts, ends = [], []
    pos = 0
    for i in range(r):
        starts.append(pos)
        pos += degs[i]
        ends.append(pos - 1)

    a_rows = [[field.zero] * delta for _ in range(delta)]
    for s, e in zip(starts, ends):
        for t in range(s, e):
            a_rows[t][t + 1] = field.one
    b_rows = [[field.zero] * delta for _ in range(k)]
    for i, s in enumerate(starts):
        b_rows[i][s] = field.one
    c_rows = []
    for i in range(r):
        for nu in range(1, degs[i] + 1):
            c_rows.append([p.coefficient(nu) for p in rows[i]])
    d_rows = [[p.coefficient(0) for p in row] for row in rows]

    A = FMat(field, delta, delta, a_rows)
    B = FMat(field, k, delta, b_rows)
    C = FMat(field, delta, n, c_rows)
    D = FMat(field, k, n, d_rows)
    cf = ControllerForm(
        field=field, n=n, k=k, delta=delta,
        A=A, B=B, C=C, D=D, BtD=B.transpose() @ D,
        profile=profile,
        block_starts=frozenset(starts),
        block_ends=frozenset(ends),
        row_order=tuple(order),
    )
    _verify_structure(cf)
    _verify_transfer(cf, PolyMatrix.from_rows(field, rows, n))
    return cf


def _verify_structure(cf: ControllerForm):
    """Shift-block identities that hold for every controller form."""
    field, delta, k, r = cf.field, cf.delta, cf.k, cf.r
    A, B = cf.A, cf.B
    if not (A @ B.transpose()).is_zero():
        raise InternalCheckError("A @ B^t != 0")
    bbt = B @ B.transpose()
    expect = FMat(field, k, k,
                  [[field.one if i == j and i < r else field.zero
                    for j in range(k)] for i in range(k)])
    if bbt != expect:
        raise InternalCheckError("B @ B^t is not diag(I_r, 0)")
    btb = B.transpose() @ B
    ata = A.transpose() @ A
    aat = A @ A.transpose()
    for i in range(delta):
        for j in range(delta):
            want_btb = field.one if (i == j and i in cf.block_starts) else field.zero
            want_ata = field.one if (i == j and i not in cf.block_starts) else field.zero
            want_aat = field.one if (i == j and i not in cf.block_ends) else field.zero
            if btb.entry(i, j) != want_btb:
                raise InternalCheckError("B^t B does not match the block starts")
            if ata.entry(i, j) != want_ata:
                raise InternalCheckError("A^t A does not match the block starts")
            if aat.entry(i, j) != want_aat:
                raise InternalCheckError("A A^t does not match the block ends")
    if (ata + btb) != FMat.identity(field, delta):
        raise InternalCheckError("A^t A + B^t B != I")
    if cf.D.rank() != k:
        raise InternalCheckError("D = G(0) lost rank; encoder not delay-free")


def _verify_transfer(cf: ControllerForm, G_sorted: PolyMatrix):
    """Expand B (sum_l z^l A^(l-1)) C + D and compare with G."""
    max_deg = G_sorted.max_degree()
    if G_sorted.coefficient_matrix(0) != cf.D:
        raise InternalCheckError("constant coefficient does not equal D")
    power = FMat.identity(cf.field, cf.delta)  # A^(l-1)
    for level in range(1, max_deg + 1):
        coeff = cf.B @ power @ cf.C
        if coeff != G_sorted.coefficient_matrix(level):
            raise InternalCheckError(f"z^{level} coefficient mismatch")
        power = power @ cf.A
    if not (cf.B @ power @ cf.C).is_zero():
        raise InternalCheckError("transfer expansion extends past the degree")


def constant_code(cf: ControllerForm) -> Subspace:
    """Block code of constant codewords, computed as (ker B) D and
    cross-checked against the span of the degree-zero rows."""
    field = cf.field
    left_kernel = right_null_space(field, cf.B.transpose())
    images = [vec_mat(u, cf.D) for u in left_kernel]
    via_kernel = Subspace.from_rows(field, cf.n, images)
    direct = Subspace.from_rows(field, cf.n, cf.D.rows[cf.r:])
    if via_kernel != direct:
        raise InternalCheckError("two routes to the constant code disagree")
    if via_kernel.dim != cf.k - cf.r:
        raise InternalCheckError("constant code has the wrong dimension")
    return via_kernel


def coefficient_code(cf: ControllerForm) -> tuple[Subspace, int]:
    """Block code spanned by all coefficient rows of the encoder, and the
    count of nonzero dual Forney indices it determines."""
    span = Subspace.from_rows(cf.field, cf.n, cf.C.rows + cf.D.rows)
    r_dual = span.dim - cf.k
    if not 0 <= r_dual <= cf.n - cf.k:
        raise InternalCheckError("coefficient code dimension out of range")
    return span, r_dual


def connected_pairs(cf: ControllerForm) -> Subspace:
    """Pairs (X, Y) some input can drive from state X to state Y."""
    field, delta = cf.field, cf.delta
    rows = [unit_vec(field, delta, i) + cf.A.rows[i] for i in range(delta)]
    rows += [zero_vec(field, delta) + cf.B.rows[j] for j in range(cf.k)]
    space = Subspace.from_rows(field, 2 * delta, rows)
    if space.dim != delta + cf.r:
        raise InternalCheckError("connected pair space has the wrong dimension")
    return space


def connected_pairs_orth(cf: ControllerForm) -> Subspace:
    """Orthogonal of the connected pairs; built from the explicit
    parametrization and re-derived generically, both must agree."""
    field, delta = cf.field, cf.delta
    rows = []
    for i in range(delta):
        if i not in cf.block_ends:
            rows.append(unit_vec(field, delta, i) + vec_neg(cf.A.rows[i]))
    explicit = Subspace.from_rows(field, 2 * delta, rows)
    generic = connected_pairs(cf).orth()
    if explicit != generic:
        raise InternalCheckError("orthogonal pair space routes disagree")
    return explicit


def output_rep(cf: ControllerForm, X: Vec, Y: Vec) -> Vec:
    """Representative output X C + Y B^t D attached to a state pair."""
    xc = vec_mat(X, cf.C)
    yb = vec_mat(Y, cf.BtD)
    return vec_add(xc, yb)


def pair_output_rep(cf: ControllerForm, pair: Vec) -> Vec:
    return output_rep(cf, pair[: cf.delta], pair[cf.delta:])


def output_kernel(cf: ControllerForm, delta_space: Subspace | None = None,
                  const_code: Subspace | None = None) -> Subspace:
    """Connected pairs whose representative output is a constant codeword;
    adjacency entries are invariant along this space."""
    if delta_space is None:
        delta_space = connected_pairs(cf)
    if const_code is None:
        const_code = constant_code(cf)
    field = cf.field
    images = [pair_output_rep(cf, b) for b in delta_space.basis]
    coeffs = coeff_preimage(field, images, const_code) if images else None
    if coeffs is None:
        kernel = Subspace.zero(field, 2 * cf.delta)
    else:
        rows = []
        for c in coeffs.basis:
            v = zero_vec(field, 2 * cf.delta)
            for ci, b in zip(c, delta_space.basis):
                if ci:
                    v = vec_add(v, tuple(ci * x for x in b))
            rows.append(v)
        kernel = Subspace.from_rows(field, 2 * cf.delta, rows)
    _, r_dual = coefficient_code(cf)
    if kernel.dim != cf.delta - r_dual:
        raise InternalCheckError("output kernel has the wrong dimension")
    return kernel


def pair_split(cf: ControllerForm, delta_space: Subspace | None = None,
               kernel: Subspace | None = None) -> PairSplit:
    """Split the pair space as transversal + kernel + disconnected part.

    The transversal is the lexicographically first complement of the
    kernel inside the connected pairs (scanning states in canonical
    order), so the decomposition is deterministic.
    """
    field, delta = cf.field, cf.delta
    if delta_space is None:
        delta_space = connected_pairs(cf)
    if kernel is None:
        kernel = output_kernel(cf, delta_space)
    rows = [zero_vec(field, delta) + unit_vec(field, delta, i)
            for i in range(delta) if i not in cf.block_starts]
    complement = Subspace.from_rows(field, 2 * delta, rows)
    transversal = deterministic_complement(kernel, delta_space)
    total = transversal.dim + kernel.dim + complement.dim
    if total != 2 * delta:
        raise InternalCheckError("pair space split dimensions do not add up")
    if (transversal + kernel + complement) != Subspace.full(field, 2 * delta):
        raise InternalCheckError("pair space split does not span everything")
    return PairSplit(transversal=transversal, kernel=kernel, complement=complement)
