"""Exact arithmetic in towers of quadratic extensions of the Gaussian rationals.

A :class:`FieldSpec` describes Q(i, r1, r2, ...) where each adjoined symbol
squares to a value expressible in the sub-tower below it.  Elements are sparse
rational combinations of square-free products of the adjoined symbols, so every
element has exactly one canonical form and equality is coordinate-wise.

Inversion is done by solving the linear system for multiplication-by-a on the
Q-basis.  This stays correct even when a poorly chosen tower has zero divisors:
such cases surface as :class:`ZeroDivisorError`, never as wrong answers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ScalarError(Exception):
    """Base class for tower-arithmetic failures."""


class FieldSpecMismatch(ScalarError):
    """Operands belong to different field towers."""


class ZeroDivisorError(ScalarError):
    """Nonzero element whose multiplication map is singular (tower is not a field)."""


class DuplicateSymbolError(ScalarError):
    """Adjoined symbol name already in use."""


class MissingRadicalError(ScalarError):
    """A required square root is not available in the field tower."""

    def __init__(self, message: str, missing: tuple[str, ...] = ()) -> None:
        super().__init__(message)
        self.missing = missing


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational value, got {type(value).__name__}")


class FieldSpec:
    """An ordered tower of square-root adjunctions over Q, starting with i.

    Basis monomials are encoded as bitmasks over the adjoined symbols; the
    defining square of symbol ``j`` only involves symbols below ``j``.
    """

    __slots__ = ("_names", "_squares", "_mul_cache", "__weakref__")

    def __init__(self, names: tuple[str, ...], squares: tuple[dict, ...]):
        self._names = names
        self._squares = squares  # coords dicts over the sub-tower below each symbol
        self._mul_cache: dict[tuple[int, int], dict] = {}

    @classmethod
    def gaussian(cls) -> "FieldSpec":
        """The base tower Q(i) with i^2 = -1."""
        return cls(("i",), ({0: Fraction(-1)},))

    # -- structure ---------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def nsymbols(self) -> int:
        return len(self._names)

    @property
    def dimension(self) -> int:
        return 1 << len(self._names)

    def square_coords(self, j: int) -> dict:
        return self._squares[j]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self._names == other._names and self._squares == other._squares

    def __hash__(self) -> int:
        return hash(self._names)

    def __repr__(self) -> str:
        parts = []
        for j, name in enumerate(self._names):
            sq = TowerScalar(self, dict(self._squares[j]))
            parts.append(f"{name}^2={sq}")
        return "FieldSpec(" + ", ".join(parts) + ")"

    def extends(self, other: "FieldSpec") -> bool:
        """True when ``self`` is ``other`` with zero or more extra symbols on top."""
        k = other.nsymbols
        return (
            self.nsymbols >= k
            and self._names[:k] == other._names
            and self._squares[:k] == other._squares
        )

    def monomial_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "·".join(self._names[j] for j in range(self.nsymbols) if mask >> j & 1)

    # -- element constructors ----------------------------------------------

    def zero(self) -> "TowerScalar":
        return TowerScalar(self, {})

    def one(self) -> "TowerScalar":
        return TowerScalar(self, {0: _ONE})

    def rational(self, value: Rational) -> "TowerScalar":
        q = _as_fraction(value)
        return TowerScalar(self, {0: q} if q else {})

    def symbol(self, name: str) -> "TowerScalar":
        try:
            j = self._names.index(name)
        except ValueError:
            raise MissingRadicalError(f"symbol {name!r} not adjoined", (name,)) from None
        return TowerScalar(self, {1 << j: _ONE})

    @property
    def i(self) -> "TowerScalar":
        return TowerScalar(self, {1: _ONE})

    def coerce(self, value: "TowerScalar | Rational") -> "TowerScalar":
        if isinstance(value, TowerScalar):
            if value.spec is self or value.spec == self:
                return value
            if self.extends(value.spec):
                return TowerScalar(self, dict(value.coords))
            raise FieldSpecMismatch("scalar from an incompatible field tower")
        return self.rational(value)

    # -- adjunction ----------------------------------------------------------

    def adjoin_sqrt(self, value: "TowerScalar | Rational", name: str) -> "FieldSpec":
        """Extend the tower by a symbol with ``name**2 == value``.

        Existing elements embed coordinate-wise (their bitmasks are unchanged).
        """
        if name in self._names:
            raise DuplicateSymbolError(f"symbol {name!r} already adjoined")
        val = self.coerce(value)
        return FieldSpec(self._names + (name,), self._squares + (dict(val.coords),))

    def find_sqrt(self, value: "TowerScalar | Rational") -> "TowerScalar | None":
        """A square root of ``value`` of the form (rational)·monomial, or None."""
        val = self.coerce(value)
        if val.is_zero():
            return self.zero()
        for mask in range(self.dimension):
            sq = self._basis_square(mask)
            ratio = _proportionality(val.coords, sq)
            if ratio is None:
                continue
            root = _fraction_sqrt(ratio)
            if root is not None:
                return TowerScalar(self, {mask: root})
        return None

    # -- basis multiplication ------------------------------------------------

    def _basis_mul(self, ma: int, mb: int) -> dict:
        """Coordinates of the product of two basis monomials."""
        key = (ma, mb) if ma <= mb else (mb, ma)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        shared = ma & mb
        result = {ma ^ mb: _ONE}
        j = 0
        while shared:
            if shared & 1:
                result = self._mul_coords(result, self._squares[j])
            shared >>= 1
            j += 1
        self._mul_cache[key] = result
        return result

    def _basis_square(self, mask: int) -> dict:
        return self._basis_mul(mask, mask)

    def _mul_coords(self, a: dict, b: dict) -> dict:
        if not a or not b:
            return {}
        out: dict[int, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                c = ca * cb
                if ma & mb == 0:
                    key = ma | mb
                    acc = out.get(key)
                    out[key] = c if acc is None else acc + c
                else:
                    for mk, ck in self._basis_mul(ma, mb).items():
                        acc = out.get(mk)
                        v = c * ck
                        out[mk] = v if acc is None else acc + v
        return {m: c for m, c in out.items() if c}


def _proportionality(a: dict, b: dict) -> Fraction | None:
    """The rational lambda with a == lambda*b, or None."""
    if len(a) != len(b) or a.keys() != b.keys():
        return None
    ratio: Fraction | None = None
    for m, cb in b.items():
        r = a[m] / cb
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    np, dp = isqrt(q.numerator), isqrt(q.denominator)
    if np * np == q.numerator and dp * dp == q.denominator:
        return Fraction(np, dp)
    return None


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """n = m^2 · f with f square-free (n > 0); returns (m, f) by trial division."""
    if n <= 0:
        raise ValueError("positive integer required")
    m, f, d = 1, 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        m *= d ** (e // 2)
        if e % 2:
            f *= d
        d += 1 if d == 2 else 2
    return m, f * n


class TowerScalar:
    """Element of a field tower: sparse map basis-monomial -> Fraction.

    Immutable by convention; all operations return fresh scalars in canonical
    form (monomial exponents already reduced to 0/1 by the defining squares).
    """

    __slots__ = ("spec", "coords")

    def __init__(self, spec: FieldSpec, coords: dict):
        self.spec = spec
        self.coords = coords

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coords

    def is_one(self) -> bool:
        return self.coords == {0: _ONE}

    def is_rational(self) -> bool:
        return not self.coords or (len(self.coords) == 1 and 0 in self.coords)

    def as_fraction(self) -> Fraction:
        if not self.coords:
            return _ZERO
        if len(self.coords) == 1 and 0 in self.coords:
            return self.coords[0]
        raise ScalarError(f"{self} is not rational")

    # -- arithmetic -----------------------------------------------------------

    def _match(self, other: "TowerScalar | Rational") -> "TowerScalar":
        if isinstance(other, TowerScalar):
            if other.spec is self.spec or other.spec == self.spec:
                return other
            raise FieldSpecMismatch("operands built over different field towers")
        return self.spec.rational(other)

    def __add__(self, other: "TowerScalar | Rational") -> "TowerScalar":
        if not isinstance(other, (TowerScalar, int, Fraction)):
            return NotImplemented
        o = self._match(other)
        a, b = self.coords, o.coords
        if not a:
            return o
        if not b:
            return self
        out = dict(a)
        for m, c in b.items():
            acc = out.get(m)
            v = c if acc is None else acc + c
            if v:
                out[m] = v
            elif acc is not None:
                del out[m]
        return TowerScalar(self.spec, out)

    __radd__ = __add__

    def __neg__(self) -> "TowerScalar":
        return TowerScalar(self.spec, {m: -c for m, c in self.coords.items()})

    def __sub__(self, other: "TowerScalar | Rational") -> "TowerScalar":
        if not isinstance(other, (TowerScalar, int, Fraction)):
            return NotImplemented
        return self + (-self._match(other))

    def __rsub__(self, other: "TowerScalar | Rational") -> "TowerScalar":
        return self._match(other) + (-self)

    def __mul__(self, other: "TowerScalar | Rational") -> "TowerScalar":
        if not isinstance(other, (TowerScalar, int, Fraction)):
            return NotImplemented
        o = self._match(other)
        a, b = self.coords, o.coords
        if len(a) == 1 and len(b) == 1 and 0 in a and 0 in b:
            v = a[0] * b[0]
            return TowerScalar(self.spec, {0: v} if v else {})
        return TowerScalar(self.spec, self.spec._mul_coords(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other: "TowerScalar | Rational") -> "TowerScalar":
        return self * self._match(other).invert()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.spec.rational(other)
        if not isinstance(other, TowerScalar):
            return NotImplemented
        return self.coords == self._match(other).coords

    __hash__ = None  # type: ignore[assignment]

    def invert(self) -> "TowerScalar":
        """Multiplicative inverse via the linear system for multiplication-by-self."""
        coords = self.coords
        if not coords:
            raise ZeroDivisionError("inverse of zero")
        if len(coords) == 1:
            (mask, c), = coords.items()
            if mask == 0:
                return TowerScalar(self.spec, {0: 1 / c})
            sq = self.spec._basis_square(mask)
            if len(sq) == 1 and 0 in sq and sq[0]:
                # (c·m)^{-1} = m / (c·m^2)
                return TowerScalar(self.spec, {mask: 1 / (c * sq[0])})
        inv = self._invert_by_solve()
        if inv is None:
            raise ZeroDivisorError(f"{self} is a zero divisor in {self.spec!r}")
        return inv

    def _invert_by_solve(self) -> "TowerScalar | None":
        spec = self.spec
        dim = spec.dimension
        # columns: coordinates of self·m for each basis monomial m
        cols = []
        for m in range(dim):
            prod = spec._mul_coords(self.coords, {m: _ONE})
            cols.append(prod)
        # solve M x = e_0 by Gaussian elimination on the augmented system
        rows = [[cols[m].get(r, _ZERO) for m in range(dim)] + [_ONE if r == 0 else _ZERO]
                for r in range(dim)]
        n = dim
        piv_of_col: list[int | None] = [None] * n
        r = 0
        for c in range(n):
            pivot = next((k for k in range(r, n) if rows[k][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for k in range(n):
                if k != r and rows[k][c]:
                    f = rows[k][c]
                    rows[k] = [vk - f * vr for vk, vr in zip(rows[k], rows[r])]
            piv_of_col[c] = r
            r += 1
        sol: dict[int, Fraction] = {}
        for c in range(n):
            pr = piv_of_col[c]
            if pr is not None and rows[pr][n]:
                sol[c] = rows[pr][n]
        # rows below the rank must have zero rhs, else the system is unsolvable
        for k in range(r, n):
            if rows[k][n]:
                return None
        candidate = TowerScalar(spec, sol)
        if (candidate * self).is_one():
            return candidate
        return None

    # -- serialization ---------------------------------------------------------

    def __str__(self) -> str:
        return scalar_to_str(self)

    def __repr__(self) -> str:
        return f"TowerScalar({scalar_to_str(self)!r})"


def scalar_to_str(s: TowerScalar) -> str:
    """Exact string form: 'p/q·m' terms joined by ' + ' (e.g. '-5/7', '3/1·i·s5')."""
    if not s.coords:
        return "0/1"
    parts = []
    for mask in sorted(s.coords):
        c = s.coords[mask]
        term = f"{c.numerator}/{c.denominator}"
        if mask:
            term += "·" + s.spec.monomial_name(mask)
        parts.append(term)
    return " + ".join(parts)


_TERM_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def scalar_from_str(spec: FieldSpec, text: str) -> TowerScalar:
    """Parse the exact string format produced by :func:`scalar_to_str`."""
    total = spec.zero()
    for chunk in text.split("+"):
        pieces = [p.strip() for p in chunk.split("·")]
        m = _TERM_RE.match(pieces[0])
        if not m:
            raise ScalarError(f"bad scalar term {chunk!r}")
        coeff = Fraction(int(m.group(1)), int(m.group(2) or 1))
        term = spec.rational(coeff)
        for name in pieces[1:]:
            if not name:
                raise ScalarError(f"bad scalar term {chunk!r}")
            term = term * spec.symbol(name)
        total = total + term
    return total


def sqrt_in(spec: FieldSpec, value: TowerScalar | Rational,
            name_hint: str | None = None) -> tuple[FieldSpec, TowerScalar]:
    """A square root of ``value``, adjoining a new symbol when needed.

    Rational values are reduced to a square-free radicand first so that e.g.
    sqrt(-9/5) reuses one adjunction sqrt(5) and the existing i.  Non-rational
    values get a fresh symbol squaring to the value itself.
    """
    val = spec.coerce(value)
    found = spec.find_sqrt(val)
    if found is not None:
        return spec, found
    if val.is_rational():
        q = val.as_fraction()
        _, f = squarefree_decomposition(abs(q.numerator) * q.denominator)
        if f != 1:
            spec = spec.adjoin_sqrt(f, f"s{f}")
        root = spec.find_sqrt(val)
        if root is None:  # pragma: no cover - find_sqrt handles sign via i
            raise MissingRadicalError(f"no square root of {val} after adjoining s{f}")
        return spec, root
    name = name_hint or f"r{spec.nsymbols}"
    spec = spec.adjoin_sqrt(val, name)
    return spec, spec.symbol(name)
