"""Matrices over F_q[z]: encoders, Smith normal form, basicness and
minimality tests, degree, and dual-code generators.

The polynomial string grammar accepted by :func:`parse_zpoly` is terms
"c", "c z", "c z^k" joined by "+", where c is an integer for prime
fields or a bracketed digit list like "[1,1]" for extension fields.
Whitespace is insignificant; the zero polynomial is "0".
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import InternalCheckError
from .field import FieldElement, FieldSpec
from .linalg import FMat, right_null_space

NEG_INF = float("-inf")


class ZPoly:
    """Polynomial over a finite field, dense coefficients, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=()):
        n = len(coeffs)
        while n > 0 and not coeffs[n - 1]:
            n -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:n])

    @classmethod
    def zero(cls, field: FieldSpec) -> "ZPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> "ZPoly":
        return cls(field, (field.one,))

    @classmethod
    def const(cls, value: FieldElement) -> "ZPoly":
        return cls(value.field, (value,))

    @classmethod
    def monomial(cls, coeff: FieldElement, power: int) -> "ZPoly":
        return cls(coeff.field, (coeff.field.zero,) * power + (coeff,))

    @property
    def degree(self):
        """Degree, with the zero polynomial at -inf."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ZPoly(self.field, out)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __neg__(self) -> "ZPoly":
        return ZPoly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "ZPoly") -> "ZPoly":
        if not self.coeffs or not other.coeffs:
            return ZPoly.zero(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return ZPoly(self.field, out)

    def scale(self, c: FieldElement) -> "ZPoly":
        return ZPoly(self.field, tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "ZPoly":
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return ZPoly(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: "ZPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        inv = other.leading().inverse()
        db = len(other.coeffs) - 1
        while len(rem) - 1 >= db and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < db:
                break
            f = rem[-1] * inv
            shift = len(rem) - 1 - db
            q[shift] = f
            for j, c in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - f * c
            rem.pop()
        return ZPoly(self.field, q), ZPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "ZPoly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __eq__(self, other):
        return (
            isinstance(other, ZPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_zpoly(self)

    def __repr__(self):
        return f"ZPoly({format_zpoly(self)})"


_TERM_RE = re.compile(r"^(?:(-?\d+)|(\[[0-9,\s-]*\]))?(z(?:\^(\d+))?)?$")


def parse_zpoly(text: str, field: FieldSpec) -> ZPoly:
    """Parse the polynomial grammar; raises ValueError with a column."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("parse error at column 1: empty polynomial")
    result = ZPoly.zero(field)
    pos = 0
    for chunk in text.split("+"):
        col = pos + 1
        pos += len(chunk) + 1
        term = "".join(chunk.split())
        if not term:
            raise ValueError(f"parse error at column {col}: empty term")
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and m.group(2) is None and m.group(3) is None):
            raise ValueError(f"parse error at column {col}: bad term {chunk.strip()!r}")
        int_c, list_c, zpart, exp = m.groups()
        if list_c is not None:
            digits = [d for d in list_c[1:-1].split(",") if d != ""]
            if field.s == 1:
                raise ValueError(
                    f"parse error at column {col}: digit lists need an extension field"
                )
            try:
                coeff = field.from_digits([int(d) for d in digits])
            except ValueError as e:
                raise ValueError(f"parse error at column {col}: {e}") from None
        elif int_c is not None:
            coeff = field.from_int(int(int_c))
        else:
            coeff = field.one
        if zpart is None:
            power = 0
        else:
            power = int(exp) if exp is not None else 1
        result = result + ZPoly.monomial(coeff, power)
    return result


def format_zpoly(p: ZPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
        else:
            z = "z" if i == 1 else f"z^{i}"
            parts.append(z if c == p.field.one else f"{cs}{z}")
    return "+".join(parts)


class PolyMatrix:
    """k x n matrix over F_q[z]."""

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
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "PolyMatrix":
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_strings(cls, field: FieldSpec, grid) -> "PolyMatrix":
        rows = []
        for i, row in enumerate(grid):
            try:
                rows.append([parse_zpoly(s, field) for s in row])
            except ValueError as e:
                raise ValueError(f"generator row {i + 1}: {e}") from None
        return cls.from_rows(field, rows)

    @classmethod
    def identity(cls, field: FieldSpec, m: int) -> "PolyMatrix":
        one, zero = ZPoly.one(field), ZPoly.zero(field)
        return cls(field, m, m,
                   [[one if i == j else zero for j in range(m)] for i in range(m)])

    def to_strings(self) -> list[list[str]]:
        return [[format_zpoly(p) for p in r] for r in self.rows]

    def entry(self, i: int, j: int) -> ZPoly:
        return self.rows[i][j]

    def max_degree(self) -> int:
        degs = [int(p.degree) for r in self.rows for p in r if not p.is_zero()]
        return max(degs, default=0)

    def coefficient_matrix(self, power: int) -> FMat:
        return FMat(self.field, self.nrows, self.ncols,
                    [[p.coefficient(power) for p in r] for r in self.rows])

    def at_zero(self) -> FMat:
        return self.coefficient_matrix(0)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.field, self.ncols, self.nrows,
                          [[self.rows[i][j] for i in range(self.nrows)]
                           for j in range(self.ncols)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        zero = ZPoly.zero(self.field)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for t, c in enumerate(r):
                    if not c.is_zero():
                        acc = acc + c * other.rows[t][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.rows for p in r)

    def row_degrees(self) -> tuple:
        return tuple(max((p.degree for p in r), default=NEG_INF) for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _row_sub(m, i, t, f: ZPoly):
    """row_i -= f * row_t"""
    m[i] = [a - f * b for a, b in zip(m[i], m[t])]


def _col_sub(m, j, t, f: ZPoly):
    """col_j -= f * col_t"""
    for row in m:
        row[j] = row[j] - f * row[t]


def smith_normal_form(M: PolyMatrix):
    """Diagonalization U @ M @ V = S with U, V unimodular over F_q[z].

    The diagonal of S is the chain of invariant factors (monic, each
    dividing the next).
    """
    field = M.field
    k, n = M.nrows, M.ncols
    S = [list(r) for r in M.rows]
    U = [list(r) for r in PolyMatrix.identity(field, k).rows]
    V = [list(r) for r in PolyMatrix.identity(field, n).rows]
    for t in range(min(k, n)):
        while True:
            best = None
            for i in range(t, k):
                for j in range(t, n):
                    if not S[i][j].is_zero():
                        if best is None or S[i][j].degree < S[best[0]][best[1]].degree:
                            best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != t:
                _swap_rows(S, t, bi)
                _swap_rows(U, t, bi)
            if bj != t:
                _swap_cols(S, t, bj)
                _swap_cols(V, t, bj)
            pivot = S[t][t]
            dirty = False
            for i in range(t + 1, k):
                if not S[i][t].is_zero():
                    q = S[i][t] // pivot
                    _row_sub(S, i, t, q)
                    _row_sub(U, i, t, q)
                    if not S[i][t].is_zero():
                        dirty = True
            for j in range(t + 1, n):
                if not S[t][j].is_zero():
                    q = S[t][j] // pivot
                    _col_sub(S, j, t, q)
                    _col_sub(V, j, t, q)
                    if not S[t][j].is_zero():
                        dirty = True
            if dirty:
                continue
            # cross is clear; enforce that the pivot divides the rest
            viol = None
            for i in range(t + 1, k):
                for j in range(t + 1, n):
                    if not (S[i][j] % pivot).is_zero():
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            S[t] = [a + b for a, b in zip(S[t], S[viol])]
            U[t] = [a + b for a, b in zip(U[t], U[viol])]
    # normalize the diagonal monic
    for t in range(min(k, n)):
        d = S[t][t]
        if not d.is_zero() and d.leading() != field.one:
            inv = d.leading().inverse()
            S[t] = [p.scale(inv) for p in S[t]]
            U[t] = [p.scale(inv) for p in U[t]]
    return (
        PolyMatrix(field, k, k, U),
        PolyMatrix(field, k, n, S),
        PolyMatrix(field, n, n, V),
    )


def invariant_factors(M: PolyMatrix) -> tuple[ZPoly, ...]:
    _, S, _ = smith_normal_form(M)
    out = []
    for t in range(min(M.nrows, M.ncols)):
        if S.rows[t][t].is_zero():
            break
        out.append(S.rows[t][t])
    return tuple(out)


def is_basic(G: PolyMatrix) -> bool:
    """True iff all invariant factors equal 1, i.e. a polynomial right
    inverse exists (noncatastrophic and delay-free)."""
    facs = invariant_factors(G)
    if len(facs) < G.nrows:
        return False
    return all(f.degree == 0 for f in facs)


def basic_diagnostic(G: PolyMatrix) -> str | None:
    """None when basic, otherwise a human-readable reason."""
    facs = invariant_factors(G)
    if len(facs) < G.nrows:
        return f"rank {len(facs)} < {G.nrows}: rows are dependent over F_q(z)"
    bad = [format_zpoly(f) for f in facs if f.degree != 0]
    if bad:
        return "nontrivial invariant factors: " + ", ".join(bad)
    return None


def _det(field: FieldSpec, rows) -> ZPoly:
    m = len(rows)
    if m == 0:
        return ZPoly.one(field)
    if m == 1:
        return rows[0][0]
    acc = ZPoly.zero(field)
    for i in range(m):
        if rows[i][0].is_zero():
            continue
        minor = [r[1:] for t, r in enumerate(rows) if t != i]
        term = rows[i][0] * _det(field, minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def code_degree(G: PolyMatrix) -> int:
    """Maximum degree over all k x k minors of G (explicit expansion)."""
    k, n = G.nrows, G.ncols
    if k > n:
        raise ValueError("more rows than columns; not an encoder")
    best = NEG_INF
    for cols in itertools.combinations(range(n), k):
        minor = _det(G.field, [[G.rows[i][j] for j in cols] for i in range(k)])
        if minor.degree > best:
            best = minor.degree
    if best is NEG_INF:
        raise ValueError("rank-deficient matrix has degree undefined")
    return int(best)


def is_minimal(G: PolyMatrix) -> tuple[bool, tuple[int, ...] | None]:
    """(minimal?, Forney indices sorted descending when minimal)."""
    if not is_basic(G):
        raise ValueError("minimality is only defined for basic matrices")
    degs = [int(d) for d in G.row_degrees()]
    if sum(degs) == code_degree(G):
        return True, tuple(sorted(degs, reverse=True))
    return False, None


def make_minimal_basic(G: PolyMatrix) -> PolyMatrix:
    """Row-reduce a basic matrix to a minimal one generating the same code.

    Rows of the result are ordered by descending degree.  Non-basic input
    is rejected.
    """
    if not is_basic(G):
        raise ValueError(
            "input does not generate a (noncatastrophic, delay-free) code: "
            + (basic_diagnostic(G) or "not basic")
        )
    field = G.field
    rows = [list(r) for r in G.rows]
    while True:
        degs = [int(max(p.degree for p in r)) for r in rows]
        hdc = FMat(field, G.nrows, G.ncols,
                   [[p.coefficient(d) for p in r] for r, d in zip(rows, degs)])
        left_kernel = right_null_space(field, hdc.transpose())
        if not left_kernel:
            break
        c = left_kernel[0]
        support = [i for i, ci in enumerate(c) if ci]
        j = min(i for i in support if degs[i] == max(degs[t] for t in support))
        new_row = [ZPoly.zero(field)] * G.ncols
        for i in support:
            shift = degs[j] - degs[i]
            for col in range(G.ncols):
                new_row[col] = new_row[col] + rows[i][col].scale(c[i]).shift(shift)
        rows[j] = new_row
    order = sorted(range(G.nrows),
                   key=lambda i: -int(max(p.degree for p in rows[i])))
    return PolyMatrix(field, G.nrows, G.ncols, [rows[i] for i in order])


def dual_generator(G: PolyMatrix) -> PolyMatrix:
    """Minimal basic generator of all polynomial vectors orthogonal to the
    row module of G, built from a Smith-form kernel basis."""
    minimal, _ = is_minimal(G)
    if not minimal:
        raise ValueError("dual construction expects a basic minimal encoder")
    k, n = G.nrows, G.ncols
    _, S, V = smith_normal_form(G)
    # G w^t = 0 iff w^t lies in the span of V's last n-k columns
    kernel_rows = [tuple(V.rows[i][j] for i in range(n)) for j in range(k, n)]
    K = PolyMatrix.from_rows(G.field, kernel_rows, n)
    H = make_minimal_basic(K)
    if not (H @ G.transpose()).is_zero():
        raise InternalCheckError("kernel construction lost orthogonality")
    if H.nrows and code_degree(H) != code_degree(G):
        raise InternalCheckError("dual code degree mismatch")
    return H


def encode(u, G: PolyMatrix):
    """Codeword u @ G for a message vector of polynomials."""
    if len(u) != G.nrows:
        raise ValueError(f"message length {len(u)} does not match k={G.nrows}")
    zero = ZPoly.zero(G.field)
    out = [zero] * G.ncols
    for ui, row in zip(u, G.rows):
        if not ui.is_zero():
            for j in range(G.ncols):
                out[j] = out[j] + ui * row[j]
    return tuple(out)


def codeword_weight(v) -> int:
    """Sum of Hamming weights of all coefficient vectors."""
    return sum(p.weight() for p in v)


def module_contains(G: PolyMatrix, w) -> bool:
    """Whether the row module of G contains the polynomial vector w."""
    if len(w) != G.ncols:
        raise ValueError("vector length does not match the code length")
    _, S, V = smith_normal_form(G)
    wv = encode(w, V)  # 1 x n row times V
    rank = sum(1 for t in range(min(G.nrows, G.ncols)) if not S.rows[t][t].is_zero())
    for j in range(G.ncols):
        if j < rank:
            if not (wv[j] % S.rows[j][j]).is_zero():
                return False
        elif not wv[j].is_zero():
            return False
    return True


def same_code(G1: PolyMatrix, G2: PolyMatrix) -> bool:
    """Row-module equality via mutual membership."""
    if G1.ncols != G2.ncols or G1.field != G2.field:
        return False
    return all(module_contains(G2, r) for r in G1.rows) and all(
        module_contains(G1, r) for r in G2.rows
    )


@dataclass(frozen=True)
class CodeProfile:
    """Invariants of a code read off a minimal basic encoder."""

    n: int
    k: int
    delta: int
    forney_indices: tuple[int, ...]
    r: int

    @classmethod
    def from_encoder(cls, G: PolyMatrix) -> "CodeProfile":
        minimal, indices = is_minimal(G)
        if not minimal:
            raise ValueError("profile requires a minimal encoder")
        delta = sum(indices)
        return cls(
            n=G.ncols,
            k=G.nrows,
            delta=delta,
            forney_indices=indices,
            r=sum(1 for d in indices if d > 0),
        )


def random_minimal_encoder(rng, field: FieldSpec, n: int, k: int, delta: int,
                           tries: int = 5000) -> PolyMatrix:
    """Rejection-sample a basic minimal encoder with the given parameters."""
    if k > n:
        raise ValueError("need k <= n")
    for _ in range(tries):
        degs = [0] * k
        for _ in range(delta):
            degs[rng.randrange(k)] += 1
        degs.sort(reverse=True)
        rows = []
        for d in degs:
            row = [ZPoly(field, [field.element(rng.randrange(field.q))
                                 for _ in range(d + 1)]) for _ in range(n)]
            if all(p.degree < d for p in row):
                col = rng.randrange(n)
                lead = field.element(rng.randrange(1, field.q))
                coeffs = list(row[col].coeffs)
                coeffs += [field.zero] * (d + 1 - len(coeffs))
                coeffs[d] = lead
                row[col] = ZPoly(field, coeffs)
            rows.append(row)
        G = PolyMatrix.from_rows(field, rows, n)
        if [int(d) for d in G.row_degrees()] != degs:
            continue
        if not is_basic(G):
            continue
        minimal, _ = is_minimal(G)
        if minimal:
            return G
    raise RuntimeError(
        f"could not sample a minimal encoder for (n={n}, k={k}, delta={delta})"
    )
