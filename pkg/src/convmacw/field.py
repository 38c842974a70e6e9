"""Exact arithmetic in the finite field GF(p^s).

Elements are interned per field, so arithmetic is table lookups for small
fields and equality is cheap.  An element is canonically encoded as the
integer enc(a) = sum(digits[i] * p**i), which induces the global ordering
used for state enumeration everywhere else in the package.
"""

from __future__ import annotations

import itertools

# Full multiplication/addition tables are only built below this size;
# larger fields fall back to digit-wise arithmetic per operation.
_TABLE_MAX = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# -- dense polynomials over Z/p as trimmed int tuples (constant term first) --

def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    """Remainder of a modulo m over Z/p; m need not be monic."""
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        da = len(a) - 1
        if a[da] == 0:
            a.pop()
            continue
        f = (a[da] * inv_lead) % p
        shift = da - dm
        for j, c in enumerate(m):
            a[shift + j] = (a[shift + j] - f * c) % p
        a.pop()
    return _ptrim(a)


def _irreducible(mod, p):
    """Trial division by every monic divisor candidate of degree <= s//2."""
    s = len(mod) - 1
    for d in range(1, s // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = tail + (1,)
            if not _pmod(mod, cand, p):
                return False
    return True


class FieldElement:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "code")

    def __init__(self, field: "FieldSpec", code: int):
        self.field = field
        self.code = code

    @property
    def digits(self) -> tuple[int, ...]:
        """Length-s residue digits, constant term first."""
        p, s, c = self.field.p, self.field.s, self.code
        out = []
        for _ in range(s):
            out.append(c % p)
            c //= p
        return tuple(out)

    def _coerce(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise ValueError(
                f"elements of {self.field} and {other.field} cannot be combined"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field._add_codes(self.code, other.code)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field._add_codes(self.code, (-other).code)

    def __neg__(self):
        return self.field._neg_code(self.code)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field._mul_codes(self.code, other.code)

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.field._inv_code(self.code)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def trace(self) -> int:
        return self.field.trace(self)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.code == other.code
            and (other.field is self.field or other.field == self.field)
        )

    def __hash__(self):
        return hash((self.code, self.field._key))

    def __str__(self):
        if self.field.s == 1:
            return str(self.code)
        return "[" + ",".join(str(d) for d in self.digits) + "]"

    def __repr__(self):
        return f"F{self.field.q}({self})"


class FieldSpec:
    """GF(p^s) with an explicit irreducible modulus when s > 1.

    The modulus is a length s+1 digit list over Z/p, constant term first,
    monic; it is validated for irreducibility by trial division.
    """

    __slots__ = ("p", "s", "q", "modulus", "_key", "_elems", "_add_t",
                 "_mul_t", "_inv_t", "_neg_t")

    def __init__(self, p: int, s: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** s > 2 ** 16:
            raise ValueError("fields larger than 2^16 are not supported")
        if s == 1:
            if modulus is not None:
                raise ValueError("a modulus is only accepted for s > 1")
            mod = None
        else:
            if modulus is None:
                raise ValueError(f"GF({p}^{s}) needs an explicit modulus")
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != s + 1 or mod[-1] != 1:
                raise ValueError(
                    f"modulus must be monic of degree {s} (got {list(modulus)})"
                )
            if not _irreducible(mod, p):
                raise ValueError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.s = s
        self.q = p ** s
        self.modulus = mod
        self._key = (p, s, mod)
        self._elems = tuple(FieldElement(self, c) for c in range(self.q))
        if self.q <= _TABLE_MAX:
            add, mul = [], []
            for a in range(self.q):
                add.append(tuple(self._elems[self._add_raw(a, b)] for b in range(self.q)))
                mul.append(tuple(self._elems[self._mul_raw(a, b)] for b in range(self.q)))
            self._add_t = tuple(add)
            self._mul_t = tuple(mul)
            self._neg_t = tuple(self._elems[self._neg_raw(a)] for a in range(self.q))
            inv = [None] + [None] * (self.q - 1)
            for a in range(1, self.q):
                for b in range(1, self.q):
                    if self._mul_raw(a, b) == 1:
                        inv[a] = self._elems[b]
                        break
            self._inv_t = tuple(inv)
        else:
            self._add_t = self._mul_t = self._inv_t = self._neg_t = None

    # raw code-level arithmetic (digit vectors packed in base p)
    def _digits(self, c):
        p = self.p
        out = []
        for _ in range(self.s):
            out.append(c % p)
            c //= p
        return out

    def _pack(self, digs):
        c = 0
        for d in reversed(digs):
            c = c * self.p + d
        return c

    def _add_raw(self, a, b):
        if self.s == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._pack([(x + y) % self.p for x, y in zip(da, db)])

    def _neg_raw(self, a):
        if self.s == 1:
            return (-a) % self.p
        return self._pack([(-x) % self.p for x in self._digits(a)])

    def _mul_raw(self, a, b):
        if self.s == 1:
            return (a * b) % self.p
        prod = _pmul(_ptrim(self._digits(a)), _ptrim(self._digits(b)), self.p)
        red = _pmod(prod, self.modulus, self.p)
        return self._pack(list(red) + [0] * (self.s - len(red)))

    def _add_codes(self, a, b):
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._elems[self._add_raw(a, b)]

    def _neg_code(self, a):
        if self._neg_t is not None:
            return self._neg_t[a]
        return self._elems[self._neg_raw(a)]

    def _mul_codes(self, a, b):
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._elems[self._mul_raw(a, b)]

    def _inv_code(self, a):
        if self._inv_t is not None:
            return self._inv_t[a]
        return self._elems[a] ** (self.q - 2)

    # public surface
    @property
    def zero(self) -> FieldElement:
        return self._elems[0]

    @property
    def one(self) -> FieldElement:
        return self._elems[1]

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        """All q elements in canonical encoding order."""
        return self._elems

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self}")
        return self._elems[code]

    def from_digits(self, digits) -> FieldElement:
        digs = [int(d) % self.p for d in digits]
        if len(digs) > self.s:
            if any(digs[self.s:]):
                raise ValueError(f"too many digits for {self}: {list(digits)}")
            digs = digs[: self.s]
        digs += [0] * (self.s - len(digs))
        return self._elems[self._pack(digs)]

    def from_int(self, value: int) -> FieldElement:
        """Integer reduced mod p, embedded in the prime subfield."""
        return self._elems[value % self.p]

    def trace(self, a: FieldElement) -> int:
        """Trace to GF(p): the power sum a + a^p + ... + a^(p^(s-1))."""
        if a.field != self:
            raise ValueError("element belongs to a different field")
        acc = a
        t = a
        for _ in range(self.s - 1):
            t = t ** self.p
            acc = acc + t
        digs = acc.digits
        if any(digs[1:]):
            raise ArithmeticError("trace left the prime subfield")
        return digs[0]

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.s})"

    def __repr__(self):
        if self.s == 1:
            return f"FieldSpec({self.p})"
        return f"FieldSpec({self.p}, {self.s}, modulus={list(self.modulus)})"


def trace(a: FieldElement) -> int:
    return a.field.trace(a)


def enumerate_vectors(field: FieldSpec, dim: int) -> tuple[tuple[FieldElement, ...], ...]:
    """All q^dim vectors, ordered so the last coordinate varies fastest.

    The position of a vector in this tuple is its canonical state index;
    every matrix indexed by states in this package uses this ordering.
    """
    if dim < 0:
        raise ValueError("dimension must be >= 0")
    return tuple(itertools.product(field.elements, repeat=dim))


def vector_index(vec: tuple[FieldElement, ...]) -> int:
    """Position of ``vec`` in :func:`enumerate_vectors` for its field."""
    idx = 0
    for a in vec:
        idx = idx * a.field.q + a.code
    return idx
