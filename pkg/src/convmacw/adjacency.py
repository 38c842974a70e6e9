"""Weight adjacency matrices of a controller canonical form.

The matrix is indexed by state pairs in the canonical state order; an
absent entry is the zero polynomial (disconnected pair).  Two builders
are provided: one straight from the transition definition, one through
output cosets of the constant code.  They must agree and the tests treat
the transition builder as the oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import GuardExceeded, InternalCheckError
from .exact import WePoly, we_of_affine
from .field import enumerate_vectors
from .linalg import FMat, vec_add, vec_mat
from .statespace import (ControllerForm, PairSplit, StateSpace, connected_pairs,
                         constant_code, coefficient_code, output_rep, pair_split)

TRANSITION_LIMIT = 2 ** 24   # bound on q^(2*delta) * q^k
PAIR_LIMIT = 2 ** 20         # bound on q^(delta+r)


class AdjMatrix:
    """Sparse q^delta x q^delta matrix of weight enumerators."""

    __slots__ = ("field", "n", "delta", "space", "entries")

    def __init__(self, field, n: int, delta: int, entries: dict):
        self.field = field
        self.n = n
        self.delta = delta
        self.space = StateSpace(field, delta)
        self.entries = dict(entries)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.space.size

    def entry(self, i: int, j: int) -> WePoly:
        return self.entries.get((i, j), WePoly.empty())

    def entry_by_state(self, X, Y) -> WePoly:
        return self.entry(self.space.index_of(X), self.space.index_of(Y))

    def support_size(self) -> int:
        return len(self.entries)

    def total(self) -> WePoly:
        acc = WePoly.empty()
        for v in self.entries.values():
            acc = acc + v
        return acc

    def dense_coefficients(self) -> np.ndarray:
        """(size, size, n+1) int64 coefficient tensor."""
        out = np.zeros((self.size, self.size, self.n + 1), dtype=np.int64)
        for (i, j), w in self.entries.items():
            out[i, j, : len(w.coeffs)] = w.coeffs
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AdjMatrix)
            and self.field == other.field
            and self.n == other.n
            and self.delta == other.delta
            and self.entries == other.entries
        )

    def to_json_dict(self) -> dict:
        items = [
            {"row": i, "col": j, "we": list(self.entries[(i, j)].padded(self.n))}
            for (i, j) in sorted(self.entries)
        ]
        return {
            "delta": self.delta,
            "q": self.q,
            "n": self.n,
            "ordering": "lex-enc",
            "entries": items,
        }

    def render_text(self) -> str:
        cells = [[str(self.entry(i, j)) for j in range(self.size)]
                 for i in range(self.size)]
        widths = [max(len(cells[i][j]) for i in range(self.size))
                  for j in range(self.size)]
        lines = []
        for row in cells:
            lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        return "\n".join(lines)


def _check_invariants(adj: AdjMatrix, cf: ControllerForm):
    if adj.support_size() != cf.field.q ** (cf.delta + cf.r):
        raise InternalCheckError("adjacency support is not the connected pair count")
    expected_total = cf.field.q ** (cf.k - cf.r)
    for w in adj.entries.values():
        if w.total() != expected_total:
            raise InternalCheckError("entry does not enumerate a full coset")


def adjacency_by_transitions(cf: ControllerForm,
                             limit: int = TRANSITION_LIMIT) -> AdjMatrix:
    """Enumerate every (state, input) transition straight from the
    definition; this is the independent oracle for the coset builder."""
    q = cf.field.q
    cost = q ** (2 * cf.delta) * q ** cf.k
    if cost > limit:
        raise GuardExceeded(
            f"transition enumeration needs q^(2*delta+k) = {cost} > limit {limit}"
        )
    space = StateSpace(cf.field, cf.delta)
    counts: dict[tuple[int, int], list[int]] = {}
    inputs = enumerate_vectors(cf.field, cf.k)
    for xi, X in enumerate(space.states):
        xa = vec_mat(X, cf.A)
        xc = vec_mat(X, cf.C)
        for u in inputs:
            Y = vec_add(xa, vec_mat(u, cf.B))
            out = vec_add(xc, vec_mat(u, cf.D))
            w = sum(1 for a in out if a)
            key = (xi, space.index_of(Y))
            bucket = counts.get(key)
            if bucket is None:
                bucket = [0] * (cf.n + 1)
                counts[key] = bucket
            bucket[w] += 1
    entries = {key: WePoly(c) for key, c in counts.items()}
    adj = AdjMatrix(cf.field, cf.n, cf.delta, entries)
    _check_invariants(adj, cf)
    return adj


def adjacency_by_cosets(cf: ControllerForm, limit: int = PAIR_LIMIT) -> AdjMatrix:
    """Walk only the connected pairs; each entry is the weight enumerator
    of the coset (representative output + constant code)."""
    q = cf.field.q
    npairs = q ** (cf.delta + cf.r)
    if npairs > limit:
        raise GuardExceeded(
            f"connected pair count q^(delta+r) = {npairs} > limit {limit}"
        )
    space = StateSpace(cf.field, cf.delta)
    basis = constant_code(cf).basis
    entries = {}
    for pair in connected_pairs(cf).points():
        X, Y = pair[: cf.delta], pair[cf.delta:]
        rep = output_rep(cf, X, Y)
        key = (space.index_of(X), space.index_of(Y))
        entries[key] = we_of_affine(rep, basis)
    adj = AdjMatrix(cf.field, cf.n, cf.delta, entries)
    _check_invariants(adj, cf)
    return adj


class StatePermutation:
    """Permutation of state indices induced by an invertible matrix acting
    on the state space by right multiplication."""

    __slots__ = ("P", "space", "perm")

    def __init__(self, P: FMat, delta: int | None = None):
        if not P.is_invertible():
            raise ValueError("state transformation matrix is singular")
        self.P = P
        self.space = StateSpace(P.field, P.nrows if delta is None else delta)
        self.perm = tuple(self.space.index_of(vec_mat(s, P))
                          for s in self.space.states)

    def matrix01(self) -> tuple[tuple[int, ...], ...]:
        """Dense 0/1 permutation matrix, rows indexed by source state."""
        size = self.space.size
        return tuple(
            tuple(1 if self.perm[i] == j else 0 for j in range(size))
            for i in range(size)
        )


def conjugate(adj: AdjMatrix, P: FMat) -> AdjMatrix:
    """Relabel states by X -> X P: entry (X, Y) of the result is the old
    entry at (X P, Y P)."""
    sp = StatePermutation(P, adj.delta)
    inv = [0] * len(sp.perm)
    for i, t in enumerate(sp.perm):
        inv[t] = i
    entries = {(inv[a], inv[b]): w for (a, b), w in adj.entries.items()}
    return AdjMatrix(adj.field, adj.n, adj.delta, entries)


def entry_sums(adj: AdjMatrix, cf: ControllerForm,
               split: PairSplit | None = None) -> tuple[WePoly, WePoly]:
    """(sum over the transversal, sum over everything); the first equals
    the coefficient-code enumerator, the second is q^(delta - r_dual)
    times it.  Both identities are asserted."""
    if split is None:
        split = pair_split(cf)
    space = adj.space
    acc = WePoly.empty()
    for pair in split.transversal.points():
        X, Y = pair[: cf.delta], pair[cf.delta:]
        acc = acc + adj.entry(space.index_of(X), space.index_of(Y))
    total = adj.total()
    coeff_code, r_dual = coefficient_code(cf)
    cc_we = we_of_affine((cf.field.zero,) * cf.n, coeff_code.basis)
    if acc != cc_we:
        raise InternalCheckError("transversal sum is not the coefficient-code enumerator")
    if total != cc_we * (cf.field.q ** (cf.delta - r_dual)):
        raise InternalCheckError("full entry sum identity failed")
    return acc, total
