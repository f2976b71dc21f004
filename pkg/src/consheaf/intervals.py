"""Extended-rational intervals, graded vector spaces and graded barcodes."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import FieldMismatch, MalformedInput
from .linalg import GF2, Field, make_field

INF = math.inf
NINF = -math.inf


def to_ext(x):
    """Parse an extended rational: Fraction, or +-inf."""
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise MalformedInput(f"floats are not exact: {x!r}")
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity", "oo"):
            return INF
        if s in ("-inf", "-infinity", "-oo"):
            return NINF
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad rational {x!r}") from exc
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise MalformedInput(f"bad rational {x!r}")


def ext_str(x) -> str:
    if x == INF:
        return "inf"
    if x == NINF:
        return "-inf"
    return str(Fraction(x))


def is_finite(x) -> bool:
    return not (x == INF or x == NINF)


@dataclass(frozen=True, order=False)
class Interval:
    """Interval with endpoints ``a <= b``; infinite ends are always open."""

    a: object
    a_closed: bool
    b: object
    b_closed: bool

    def __post_init__(self):
        a, b = to_ext(self.a), to_ext(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a == INF or b == NINF:
            raise MalformedInput("interval ends out of order")
        if (not is_finite(a) and self.a_closed) or (not is_finite(b) and self.b_closed):
            raise MalformedInput("infinite endpoints cannot be closed")
        if a > b or (a == b and not (self.a_closed and self.b_closed)):
            raise MalformedInput(f"empty interval {self._fmt()}")

    # -- constructors ---------------------------------------------------
    @classmethod
    def closed(cls, a, b):
        return cls(a, True, b, True)

    @classmethod
    def open(cls, a, b):
        return cls(a, False, b, False)

    @classmethod
    def co(cls, a, b):
        """``[a, b)``; ``a`` may be ``-inf`` (then open)."""
        a = to_ext(a)
        return cls(a, is_finite(a), b, False)

    @classmethod
    def oc(cls, a, b):
        b = to_ext(b)
        return cls(a, False, b, is_finite(b))

    @classmethod
    def line(cls):
        return cls(NINF, False, INF, False)

    @classmethod
    def point(cls, a):
        return cls(a, True, a, True)

    @classmethod
    def make(cls, a, a_closed, b, b_closed):
        """Like the constructor but returns ``None`` for empty sets."""
        a, b = to_ext(a), to_ext(b)
        a_closed = bool(a_closed) and is_finite(a)
        b_closed = bool(b_closed) and is_finite(b)
        if a > b or (a == b and not (a_closed and b_closed)) or a == INF or b == NINF:
            return None
        return cls(a, a_closed, b, b_closed)

    _RX = re.compile(r"^\s*([\[\(\]])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\]\)\[])\s*$")

    @classmethod
    def parse(cls, s: str) -> "Interval":
        """Parse ``"[0,1)"``, ``"(-inf,2]"``, ``"]0,1["``, ``"{3}"``."""
        s = s.strip()
        if s.startswith("{") and s.endswith("}"):
            return cls.point(s[1:-1])
        m = cls._RX.match(s)
        if not m:
            raise MalformedInput(f"cannot parse interval {s!r}")
        lb, a, b, rb = m.groups()
        return cls(a, lb == "[", b, rb == "]")

    # -- predicates -----------------------------------------------------
    def _fmt(self):
        lb = "[" if self.a_closed else "("
        rb = "]" if self.b_closed else ")"
        return f"{lb}{ext_str(self.a)},{ext_str(self.b)}{rb}"

    def __str__(self):
        return self._fmt()

    def __repr__(self):
        return f"Interval({self._fmt()})"

    def key(self):
        # smaller left value first; a closed left end sorts before an open one
        return (self.a, not self.a_closed, self.b, self.b_closed)

    def __lt__(self, other):
        return self.key() < other.key()

    @property
    def is_singleton(self):
        return self.a == self.b

    @property
    def bounded(self):
        return is_finite(self.a) and is_finite(self.b)

    @property
    def bounded_below(self):
        return is_finite(self.a)

    @property
    def length(self):
        return self.b - self.a

    def contains(self, x) -> bool:
        x = to_ext(x)
        left = x > self.a or (x == self.a and self.a_closed)
        right = x < self.b or (x == self.b and self.b_closed)
        return left and right

    def contains_interval(self, other: "Interval") -> bool:
        left = other.a > self.a or (other.a == self.a and (self.a_closed or not other.a_closed))
        right = other.b < self.b or (other.b == self.b and (self.b_closed or not other.b_closed))
        return left and right

    def intersect(self, other: "Interval"):
        if self.a > other.a:
            a, ac = self.a, self.a_closed
        elif self.a < other.a:
            a, ac = other.a, other.a_closed
        else:
            a, ac = self.a, self.a_closed and other.a_closed
        if self.b < other.b:
            b, bc = self.b, self.b_closed
        elif self.b > other.b:
            b, bc = other.b, other.b_closed
        else:
            b, bc = self.b, self.b_closed and other.b_closed
        return Interval.make(a, ac, b, bc)

    def translate(self, c) -> "Interval":
        c = Fraction(c)
        return Interval(self.a + c, self.a_closed, self.b + c, self.b_closed)

    def closure(self) -> "Interval":
        return Interval(self.a, is_finite(self.a), self.b, is_finite(self.b))

    def interior(self):
        return Interval.make(self.a, False, self.b, False)

    def endpoints(self):
        return [x for x in (self.a, self.b) if is_finite(x)]

    def is_tau_nonneg(self) -> bool:
        """Left end closed or -inf, right end open or +inf."""
        left_ok = self.a_closed or not is_finite(self.a)
        return left_ok and not self.b_closed

    def to_json(self):
        return {
            "left": {"value": ext_str(self.a), "closed": self.a_closed},
            "right": {"value": ext_str(self.b), "closed": self.b_closed},
        }

    @classmethod
    def from_json(cls, obj) -> "Interval":
        if isinstance(obj, str):
            return cls.parse(obj)
        try:
            l, r = obj["left"], obj["right"]
            return cls(l["value"], bool(l.get("closed", False)), r["value"], bool(r.get("closed", False)))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad interval {obj!r}") from exc


class GradedVectorSpace:
    """Finite graded dimension vector ``{degree: dim}``."""

    __slots__ = ("_d",)

    def __init__(self, dims=None):
        d = {}
        for k, v in dict(dims or {}).items():
            v = int(v)
            if v < 0:
                raise MalformedInput("negative dimension")
            if v:
                d[int(k)] = d.get(int(k), 0) + v
        self._d = dict(sorted(d.items()))

    @property
    def dims(self):
        return dict(self._d)

    def __getitem__(self, k):
        return self._d.get(k, 0)

    def __eq__(self, other):
        if isinstance(other, dict):
            other = GradedVectorSpace(other)
        return isinstance(other, GradedVectorSpace) and self._d == other._d

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __add__(self, other):
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + v
        return GradedVectorSpace(d)

    def scale(self, m):
        return GradedVectorSpace({k: v * m for k, v in self._d.items()})

    def shift(self, n):
        """``V[n]``: degree ``k`` of the result is degree ``k+n`` of ``V``."""
        return GradedVectorSpace({k - n: v for k, v in self._d.items()})

    def dual(self):
        return GradedVectorSpace({-k: v for k, v in self._d.items()})

    @property
    def total(self):
        return sum(self._d.values())

    def is_zero(self):
        return not self._d

    def euler(self):
        return sum((-1) ** k * v for k, v in self._d.items())

    def __repr__(self):
        return f"GVS({self._d})"

    def to_json(self):
        return {str(k): v for k, v in self._d.items()}


ZERO_GVS = GradedVectorSpace()


class GradedBarcode:
    """Multiset of ``(interval, degree, multiplicity)``; ``(I, d)`` means ``k_I[-d]``."""

    __slots__ = ("_bars", "field")

    def __init__(self, bars: Iterable = (), field: Field = GF2):
        acc = {}
        for item in bars:
            if len(item) == 2:
                I, d = item
                m = 1
            else:
                I, d, m = item
            if isinstance(I, str):
                I = Interval.parse(I)
            if not isinstance(I, Interval):
                raise MalformedInput(f"not an interval: {I!r}")
            m = int(m)
            if m < 0:
                raise MalformedInput("negative multiplicity")
            if m:
                acc[(I, int(d))] = acc.get((I, int(d)), 0) + m
        self._bars = tuple(sorted(((I, d, m) for (I, d), m in acc.items()), key=lambda t: (t[0].key(), t[1])))
        self.field = make_field(field)

    @property
    def bars(self):
        return self._bars

    def expanded(self):
        """One ``(I, d)`` per copy."""
        for I, d, m in self._bars:
            for _ in range(m):
                yield I, d

    def __iter__(self):
        return iter(self._bars)

    def __len__(self):
        return sum(m for _, _, m in self._bars)

    def __bool__(self):
        return bool(self._bars)

    def __eq__(self, other):
        return isinstance(other, GradedBarcode) and self._bars == other._bars

    def __hash__(self):
        return hash(self._bars)

    def __repr__(self):
        body = ", ".join(f"{I}[{-d}]" + (f"^{m}" if m > 1 else "") for I, d, m in self._bars)
        return f"Barcode({body})"

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return GradedBarcode(self._bars + other._bars, self.field)

    def shift(self, n):
        """``F[n]``."""
        return GradedBarcode(((I, d - n, m) for I, d, m in self._bars), self.field)

    def translate(self, c):
        return GradedBarcode(((I.translate(c), d, m) for I, d, m in self._bars), self.field)

    def degrees(self):
        return sorted({d for _, d, _ in self._bars})

    def in_degree(self, d):
        return GradedBarcode(((I, e, m) for I, e, m in self._bars if e == d), self.field)

    def endpoints(self):
        pts = set()
        for I, _, _ in self._bars:
            pts.update(I.endpoints())
        return sorted(pts)

    def with_field(self, field):
        return GradedBarcode(self._bars, field)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "bars": [{"interval": I.to_json(), "degree": d, "multiplicity": m} for I, d, m in self._bars],
        }
