"""Exact linear algebra over GF(p) and Q.

Matrices are numpy arrays: ``int64`` reduced mod p for prime fields and
``object`` arrays of :class:`fractions.Fraction` for the rationals.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _accel
from .errors import MalformedInput

_INT64_MAX = 2**63 - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common matrix API; subclasses fix the scalar representation."""

    p: int | None = None

    # -- construction ---------------------------------------------------
    def zeros(self, m, n):
        raise NotImplementedError

    def eye(self, n):
        A = self.zeros(n, n)
        for i in range(n):
            A[i, i] = self.one
        return A

    def asarray(self, rows, shape=None):
        raise NotImplementedError

    def scalar(self, x):
        raise NotImplementedError

    # -- arithmetic -----------------------------------------------------
    def mul(self, A, B):
        raise NotImplementedError

    def add(self, A, B):
        raise NotImplementedError

    def sub(self, A, B):
        raise NotImplementedError

    def neg(self, A):
        return self.sub(self.zeros(*A.shape), A)

    def smul(self, c, A):
        raise NotImplementedError

    def is_zero(self, A) -> bool:
        return not np.any(A != 0)

    def equal(self, A, B) -> bool:
        return A.shape == B.shape and self.is_zero(self.sub(A, B))

    # -- elimination ----------------------------------------------------
    def rref(self, A):
        raise NotImplementedError

    def rank(self, A) -> int:
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A):
        """Columns form a basis of ``{x : A x = 0}``."""
        m, n = A.shape
        if m == 0:
            return self.eye(n)
        R, piv = self.rref(A)
        piv = list(piv)
        free = [c for c in range(n) if c not in set(piv)]
        N = self.zeros(n, len(free))
        for k, f in enumerate(free):
            N[f, k] = self.one
            for i, c in enumerate(piv):
                N[c, k] = self.neg_scalar(R[i, f])
        return N

    def colspace(self, A):
        """Independent columns of ``A`` spanning its image."""
        if A.shape[1] == 0 or A.shape[0] == 0:
            return self.zeros(A.shape[0], 0)
        _, piv = self.rref(A)
        return A[:, list(piv)]

    def solve(self, A, B):
        """Some ``X`` with ``A X = B``, or ``None`` when inconsistent."""
        m, n = A.shape
        k = B.shape[1]
        if m == 0:
            return self.zeros(n, k)
        M = np.concatenate([A, B], axis=1)
        R, piv = self.rref(M)
        X = self.zeros(n, k)
        for i, c in enumerate(piv):
            if c >= n:
                return None
            X[c, :] = R[i, n:]
        return X

    def inv(self, A):
        n = A.shape[0]
        X = self.solve(A, self.eye(n))
        if X is None or self.rank(A) < n:
            raise ValueError("singular matrix")
        return X

    def random(self, rng, m, n):
        raise NotImplementedError

    def random_invertible(self, rng, n):
        while True:
            A = self.random(rng, n, n)
            if self.rank(A) == n:
                return A

    def to_json(self):
        raise NotImplementedError


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p > 2**31 or not _is_prime(p):
            raise MalformedInput(f"not a prime <= 2^31: {p}")
        self.p = p
        self.one = 1
        self.zero = 0

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def size(self):
        return self.p

    def scalar(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} not defined mod {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def neg_scalar(self, x):
        return (-int(x)) % self.p

    def zeros(self, m, n):
        return np.zeros((m, n), dtype=np.int64)

    def asarray(self, rows, shape=None):
        if shape is not None and (shape[0] == 0 or shape[1] == 0):
            return self.zeros(*shape)
        A = np.array([[self.scalar(x) for x in row] for row in rows], dtype=np.int64)
        if A.ndim != 2:
            A = A.reshape(shape if shape is not None else (len(rows), 0))
        if shape is not None and A.shape != tuple(shape):
            raise MalformedInput(f"matrix shape {A.shape} != expected {tuple(shape)}")
        return A

    def mul(self, A, B):
        if A.shape[1] == 0:
            return self.zeros(A.shape[0], B.shape[1])
        if A.shape[1] * (self.p - 1) ** 2 < _INT64_MAX:
            return (A @ B) % self.p
        C = (A.astype(object) @ B.astype(object)) % self.p
        return C.astype(np.int64)

    def add(self, A, B):
        return (A + B) % self.p

    def sub(self, A, B):
        return (A - B) % self.p

    def smul(self, c, A):
        return (int(self.scalar(c)) * A) % self.p

    def rref(self, A):
        R, piv = _accel.rref_mod_p(A, self.p)
        return R, [int(c) for c in piv]

    def random(self, rng, m, n):
        return rng.integers(0, self.p, size=(m, n), dtype=np.int64)

    def to_json(self):
        return {"p": self.p}

    def elem_str(self, x):
        return str(int(x))


class RationalField(Field):
    p = None

    def __init__(self):
        self.one = Fraction(1)
        self.zero = Fraction(0)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def size(self):
        return None

    def scalar(self, x):
        return Fraction(x)

    def neg_scalar(self, x):
        return -Fraction(x)

    def zeros(self, m, n):
        A = np.empty((m, n), dtype=object)
        A.fill(Fraction(0))
        return A

    def asarray(self, rows, shape=None):
        if shape is not None and (shape[0] == 0 or shape[1] == 0):
            return self.zeros(*shape)
        A = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
        if shape is not None and A.shape != tuple(shape):
            raise MalformedInput(f"matrix shape {A.shape} != expected {tuple(shape)}")
        return A

    def mul(self, A, B):
        if A.shape[1] == 0:
            return self.zeros(A.shape[0], B.shape[1])
        return A.dot(B)

    def add(self, A, B):
        return A + B

    def sub(self, A, B):
        return A - B

    def smul(self, c, A):
        return Fraction(c) * A

    def rref(self, A):
        R = [list(map(Fraction, row)) for row in A]
        m = len(R)
        n = A.shape[1]
        piv = []
        r = 0
        for c in range(n):
            if r == m:
                break
            k = next((i for i in range(r, m) if R[i][c] != 0), None)
            if k is None:
                continue
            R[r], R[k] = R[k], R[r]
            inv = 1 / R[r][c]
            R[r] = [v * inv for v in R[r]]
            for i in range(m):
                f = R[i][c]
                if i != r and f != 0:
                    Ri, Rr = R[i], R[r]
                    R[i] = [a - f * b for a, b in zip(Ri, Rr)]
            piv.append(c)
            r += 1
        out = self.zeros(m, n)
        for i in range(m):
            out[i, :] = R[i]
        return out, piv

    def random(self, rng, m, n):
        A = self.zeros(m, n)
        vals = rng.integers(-3, 4, size=(m, n))
        for i in range(m):
            for j in range(n):
                A[i, j] = Fraction(int(vals[i, j]))
        return A

    def to_json(self):
        return {"q": "rational"}

    def elem_str(self, x):
        return str(Fraction(x))


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)
# large prime used where the field only needs to avoid small-characteristic accidents
BIG_PRIME = 1_000_003


def make_field(spec) -> Field:
    """Field from ``2``, ``"2"``, ``"Q"``, ``{"p": 2}`` or ``{"q": "rational"}``."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, dict):
        if "p" in spec:
            return PrimeField(int(spec["p"]))
        if spec.get("q") == "rational":
            return QQ
        raise MalformedInput(f"bad field spec {spec!r}")
    if isinstance(spec, str) and spec.strip().lower() in ("q", "qq", "rational"):
        return QQ
    try:
        return PrimeField(int(spec))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"bad field spec {spec!r}") from exc


def block(field: Field, rows):
    """Assemble a block matrix; ``None`` entries are zero blocks.

    Each row is a list of blocks; sizes are inferred from the non-empty ones.
    """
    nr = len(rows)
    nc = len(rows[0])
    hs = [None] * nr
    ws = [None] * nc
    for i in range(nr):
        for j in range(nc):
            B = rows[i][j]
            if B is not None:
                hs[i] = B.shape[0]
                ws[j] = B.shape[1]
    hs = [h or 0 for h in hs]
    ws = [w or 0 for w in ws]
    M = field.zeros(sum(hs), sum(ws))
    r0 = 0
    for i in range(nr):
        c0 = 0
        for j in range(nc):
            B = rows[i][j]
            if B is not None and B.size:
                M[r0:r0 + hs[i], c0:c0 + ws[j]] = B
            c0 += ws[j]
        r0 += hs[i]
    return M


def block_sizes(field: Field, rows, hs, ws):
    """Like :func:`block` with explicit block sizes."""
    M = field.zeros(sum(hs), sum(ws))
    r0 = 0
    for i, h in enumerate(hs):
        c0 = 0
        for j, w in enumerate(ws):
            B = rows[i][j]
            if B is not None and h and w:
                M[r0:r0 + h, c0:c0 + w] = B
            c0 += w
        r0 += h
    return M


def vec(field: Field, A):
    """Column-major vectorization, matching ``kron`` conventions below."""
    return A.reshape(-1, order="F").reshape(-1, 1)


def unvec(field: Field, v, m, n):
    return np.asarray(v).reshape(-1).reshape((m, n), order="F")


def kron(field: Field, A, B):
    K = np.kron(A, B)
    if field.p is not None:
        K = K % field.p
    return K
