"""Exact 4x4 symplectic matrices, congruence-pattern groups and the Siegel action.

Conventions
-----------
* ``J = [[0, I], [-I, 0]]`` and M is symplectic iff ``M^T J M = J``.
* M acts on the Siegel upper half space by ``Z -> (AZ + B)(CZ + D)^-1``.
  This is a left action: ``(MN)(Z) = M(N(Z))``.
* Isotropic lines are row vectors and the group acts on them from the right,
  ``v -> v M``.  With this convention the stabiliser of ``v Q^-1`` is
  ``Q Stab(v) Q^-1``, so an element g written in the coordinates
  ``Z^v = Q^-1(Z)`` corresponds to ``Q g Q^-1`` acting on Z.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidArgument

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    return Fraction(x)


@dataclass(frozen=True)
class GroupElement:
    """An exact 4x4 rational matrix."""

    entries: Matrix

    def __post_init__(self):
        rows = tuple(tuple(_as_frac(x) for x in row) for row in self.entries)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise InvalidArgument("GroupElement must be 4x4")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "GroupElement":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls.from_rows([[int(i == j) for j in range(4)] for i in range(4)])

    @classmethod
    def diag(cls, *d) -> "GroupElement":
        return cls.from_rows([[d[i] if i == j else 0 for j in range(4)] for i in range(4)])

    @classmethod
    def from_blocks(cls, A, B, C, D) -> "GroupElement":
        top = [list(A[i]) + list(B[i]) for i in range(2)]
        bottom = [list(C[i]) + list(D[i]) for i in range(2)]
        return cls.from_rows(top + bottom)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.entries, other.entries
        return GroupElement(tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(4)), Fraction(0)) for j in range(4))
            for i in range(4)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(tuple(-x for x in row) for row in self.entries))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(
            tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def transpose(self) -> "GroupElement":
        return GroupElement(tuple(zip(*self.entries)))

    def inverse(self) -> "GroupElement":
        """Gauss-Jordan inverse over Q."""
        n = 4
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise InvalidArgument("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return GroupElement(tuple(tuple(row[n:]) for row in aug))

    def blocks(self):
        e = self.entries
        A = ((e[0][0], e[0][1]), (e[1][0], e[1][1]))
        B = ((e[0][2], e[0][3]), (e[1][2], e[1][3]))
        C = ((e[2][0], e[2][1]), (e[3][0], e[3][1]))
        D = ((e[2][2], e[2][3]), (e[3][2], e[3][3]))
        return A, B, C, D

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def act_on_row(self, v: Sequence) -> tuple[Fraction, ...]:
        """Row vector times matrix, ``v M``."""
        return tuple(sum((_as_frac(v[k]) * self.entries[k][j] for k in range(4)), Fraction(0))
                     for j in range(4))

    def power(self, n: int) -> "GroupElement":
        out = GroupElement.identity()
        for _ in range(n):
            out = out @ self
        return out

    def conj(self, q: "GroupElement") -> "GroupElement":
        """``q self q^-1``."""
        return q @ self @ q.inverse()

    def __str__(self):
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.entries)


IDENTITY = GroupElement.identity()
J = GroupElement.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
ZETA = GroupElement.diag(1, -1, 1, -1)
XI = GroupElement.from_rows([[1, 1, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 1, -1]])


def is_symplectic(M: GroupElement) -> bool:
    return M.transpose() @ J @ M == J


# -- generators -------------------------------------------------------------


def g1(gamma: Sequence[Sequence]) -> GroupElement:
    (a, b), (c, d) = gamma
    if _as_frac(a) * _as_frac(d) - _as_frac(b) * _as_frac(c) != 1:
        raise InvalidArgument("g1 needs det(gamma) = 1")
    return GroupElement.from_rows([[a, 0, b, 0], [0, 1, 0, 0], [c, 0, d, 0], [0, 0, 0, 1]])


def g3(m, n) -> GroupElement:
    """Heisenberg element fixing (0,0,0,1), with row 3 = (0,0,1,-m).

    The printed display has row 3 = (0,1,0,-m), which is not symplectic;
    see :func:`g3_printed`.
    """
    return GroupElement.from_rows([[1, 0, 0, n], [m, 1, n, 0], [0, 0, 1, -m], [0, 0, 0, 1]])


def g3_printed(m, n) -> GroupElement:
    return GroupElement.from_rows([[1, 0, 0, n], [m, 1, n, 0], [0, 1, 0, -m], [0, 0, 0, 1]])


def g4(s) -> GroupElement:
    return GroupElement.from_rows([[1, 0, 0, 0], [0, 1, 0, s], [0, 0, 1, 0], [0, 0, 0, 1]])


def q_matrix(t: int, r: int) -> GroupElement:
    if r < 1 or t % r:
        raise InvalidArgument(f"r = {r} must divide t = {t}")
    h = t // r
    return GroupElement.from_rows(
        [[1, 1, 0, 0], [h - 1, h, 0, 0], [0, 0, h, 1 - h], [0, 0, -1, 1]])


def r_matrix(t: int) -> GroupElement:
    return GroupElement.diag(1, 1, 1, t)


def make_generator(kind: str, *args) -> GroupElement:
    """Named generators: g1(gamma), g3(m, n), g3_printed(m, n), g4(s),
    Qr(t, r), Rt(t), zeta, xi."""
    table = {
        "g1": g1, "g3": g3, "g3_printed": g3_printed, "g4": g4,
        "Qr": q_matrix, "Rt": r_matrix,
        "zeta": lambda: ZETA, "xi": lambda: XI,
    }
    if kind not in table:
        raise InvalidArgument(f"unknown generator {kind!r}")
    return table[kind](*args)


# -- congruence patterns ----------------------------------------------------

# Codes for the entries of gamma - 1: "Z" integer, "t" in tZ, "t2" in t^2 Z,
# "1/t" in (1/t)Z.
_NAT = (("t", "Z", "t", "t"),
        ("t", "t", "t", "t2"),
        ("t", "Z", "t", "t"),
        ("Z", "Z", "Z", "t"))
_LEV = (("Z", "Z", "Z", "t"),
        ("t", "t", "t", "t2"),
        ("Z", "Z", "Z", "t"),
        ("Z", "Z", "Z", "t"))
_PARA = (("Z", "Z", "Z", "t"),
         ("t", "Z", "t", "t"),
         ("Z", "Z", "Z", "t"),
         ("Z", "1/t", "Z", "Z"))
PATTERNS = {"Gamma_nat": _NAT, "Gamma_lev": _LEV, "Paramodular": _PARA}


def _entry_ok(x: Fraction, code: str, t: int) -> bool:
    if code == "1/t":
        return (x * t).denominator == 1
    if x.denominator != 1:
        return False
    n = x.numerator
    if code == "Z":
        return True
    if code == "t":
        return n % t == 0
    if code == "t2":
        return n % (t * t) == 0
    raise ValueError(code)


def matches_pattern(M: GroupElement, pattern, t: int) -> bool:
    diff = M - IDENTITY
    return all(_entry_ok(diff[i, j], pattern[i][j], t) for i in range(4) for j in range(4))


def pattern_violations(M: GroupElement, pattern, t: int) -> list[tuple[int, int, Fraction]]:
    """1-based positions where gamma - 1 misses the pattern."""
    diff = M - IDENTITY
    return [(i + 1, j + 1, diff[i, j]) for i in range(4) for j in range(4)
            if not _entry_ok(diff[i, j], pattern[i][j], t)]


@dataclass(frozen=True)
class GroupId:
    tag: str
    level: int | None = None
    tilde: bool = False

    TAGS = ("Gamma_bil", "Gamma_nat", "Gamma_lev", "Paramodular", "Principal")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise InvalidArgument(f"unknown group tag {self.tag!r}")
        if self.tag == "Principal" and (self.level is None or self.level < 1):
            raise InvalidArgument("Principal needs a positive level")

    @classmethod
    def principal(cls, level: int) -> "GroupId":
        return cls("Principal", level)

    def tilded(self) -> "GroupId":
        return GroupId(self.tag, self.level, True)

    def __str__(self):
        base = f"Principal({self.level})" if self.tag == "Principal" else self.tag
        return f"Tilde({base})" if self.tilde else base


GAMMA_BIL = GroupId("Gamma_bil")
GAMMA_NAT = GroupId("Gamma_nat")
GAMMA_LEV = GroupId("Gamma_lev")
PARAMODULAR = GroupId("Paramodular")


def _member_raw(M: GroupElement, g: GroupId, t: int) -> bool:
    if g.tag == "Principal":
        diff = M - IDENTITY
        return all(x.denominator == 1 and x.numerator % g.level == 0
                   for row in diff.entries for x in row)
    if g.tag == "Gamma_bil":
        return (matches_pattern(M, _NAT, t)
                or matches_pattern(ZETA @ M, _NAT, t))
    return matches_pattern(M, PATTERNS[g.tag], t)


def member(M: GroupElement, g: GroupId, t: int) -> bool:
    """Membership by exact entrywise congruences.

    Tilde variants test ``R_t^-1 M R_t`` against the base group.
    """
    if t < 1:
        raise InvalidArgument("t must be positive")
    if g.tilde:
        R = r_matrix(t)
        M = R.inverse() @ M @ R
    if not is_symplectic(M):
        raise InvalidArgument("membership is only defined for symplectic matrices")
    return _member_raw(M, g, t)


# -- characteristic polynomials and torsion ---------------------------------


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def charpoly(M: GroupElement) -> tuple[Fraction, ...]:
    """Coefficients of det(x - M), ascending degree, via principal minors."""
    e = [Fraction(1)]
    for k in range(1, 5):
        s = Fraction(0)
        for idx in itertools.combinations(range(4), k):
            s += _det([[M[i, j] for j in idx] for i in idx])
        e.append(s)
    # x^4 - e1 x^3 + e2 x^2 - e3 x + e4
    return tuple((-1) ** (4 - d) * e[4 - d] for d in range(5))


def charpoly_mod(M: GroupElement, t: int) -> tuple[int, ...]:
    if not M.is_integral():
        raise InvalidArgument("charpoly_mod needs integer entries")
    return tuple(int(c) % t for c in charpoly(M))


def _poly_mod(coeffs, t):
    return tuple(c % t for c in coeffs)


def unipotent_charpoly(t: int) -> tuple[int, ...]:
    """(x - 1)^4 mod t, ascending."""
    return _poly_mod((1, -4, 6, -4, 1), t)


def split_charpoly(t: int) -> tuple[int, ...]:
    """(x - 1)^2 (x + 1)^2 mod t, ascending."""
    return _poly_mod((1, 0, -2, 0, 1), t)


TORSION_TYPES = ("identity", "zeta", "xi", "other")


def classify_torsion(M: GroupElement, t: int) -> str:
    """Three-way split of an integral matrix by order, charpoly mod t and parity.

    Both representatives have order 2 and reduce to (x-1)^2(x+1)^2. They are
    told apart by reduction mod 2: Gamma(2) is normal in Sp(4, Z), zeta lies
    in it and xi does not. This labels representatives only; it does not
    decide conjugacy inside the bilevel group.
    """
    if M == IDENTITY:
        return "identity"
    if not M.is_integral() or M @ M != IDENTITY:
        return "other"
    if charpoly_mod(M, t) != split_charpoly(t):
        return "other"
    if all(int(x) % 2 == 0 for row in (M - IDENTITY).entries for x in row):
        return "zeta"
    return "xi"


# -- Siegel upper half space ------------------------------------------------


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_frac(self.re))
        object.__setattr__(self, "im", _as_frac(self.im))

    @staticmethod
    def lift(x) -> "QComplex":
        return x if isinstance(x, QComplex) else QComplex(x)

    def __add__(self, o):
        o = QComplex.lift(o)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-QComplex.lift(o))

    def __rsub__(self, o):
        return QComplex.lift(o) - self

    def __mul__(self, o):
        o = QComplex.lift(o)
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QComplex.lift(o)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * QComplex(o.re / n, -o.im / n)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QComplex(o)
        if not isinstance(o, QComplex):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


@dataclass(frozen=True)
class SiegelPoint:
    """Z = (tau1 tau2 / tau2 tau3) with positive definite imaginary part."""

    tau1: QComplex
    tau2: QComplex
    tau3: QComplex

    def __post_init__(self):
        for name in ("tau1", "tau2", "tau3"):
            object.__setattr__(self, name, QComplex.lift(getattr(self, name)))
        y1, y2, y3 = self.tau1.im, self.tau2.im, self.tau3.im
        if not (y1 > 0 and y1 * y3 - y2 * y2 > 0):
            raise InvalidArgument("imaginary part is not positive definite")

    def matrix(self):
        return ((self.tau1, self.tau2), (self.tau2, self.tau3))


def _m2_mul(X, Y):
    return tuple(tuple(sum((QComplex.lift(X[i][k]) * QComplex.lift(Y[k][j]) for k in range(2)),
                           QComplex(0)) for j in range(2)) for i in range(2))


def _m2_add(X, Y):
    return tuple(tuple(QComplex.lift(X[i][j]) + QComplex.lift(Y[i][j]) for j in range(2))
                 for i in range(2))


def _m2_inv(X):
    (a, b), (c, d) = X
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def siegel_act(M: GroupElement, Z: SiegelPoint) -> SiegelPoint:
    if not is_symplectic(M):
        raise InvalidArgument("siegel_act needs a symplectic matrix")
    A, B, C, D = M.blocks()
    Zm = Z.matrix()
    num = _m2_add(_m2_mul(A, Zm), B)
    den = _m2_add(_m2_mul(C, Zm), D)
    W = _m2_mul(num, _m2_inv(den))
    if W[0][1] != W[1][0]:
        raise AssertionError("image is not symmetric")
    return SiegelPoint(W[0][0], W[0][1], W[1][1])


# -- the level quotient -----------------------------------------------------


def project_lev(M: GroupElement, t: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """(a11 a13 / a31 a33) mod t for M in Gamma_lev."""
    if not member(M, GAMMA_LEV, t):
        raise InvalidArgument("project_lev needs an element of Gamma_lev")
    e = M.entries
    p = ((int(e[0][0]) % t, int(e[0][2]) % t), (int(e[2][0]) % t, int(e[2][2]) % t))
    if (p[0][0] * p[1][1] - p[0][1] * p[1][0]) % t != 1 % t:
        raise AssertionError("projection does not land in SL(2, Z_t)")
    return p


def mat2_mul_mod(x, y, t):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) % t for j in range(2))
                 for i in range(2))


# -- random members ---------------------------------------------------------


def _elementary_pool() -> list[GroupElement]:
    """Unit-size elementary symplectic matrices (upper, lower and Levi)."""
    out = []
    for S in (((1, 0), (0, 0)), ((0, 0), (0, 1)), ((0, 1), (1, 0))):
        I2, Z2 = ((1, 0), (0, 1)), ((0, 0), (0, 0))
        out.append(GroupElement.from_blocks(I2, S, Z2, I2))
        out.append(GroupElement.from_blocks(I2, Z2, S, I2))
    for A, Dinv in ((((1, 1), (0, 1)), ((1, 0), (-1, 1))),
                    (((1, 0), (1, 1)), ((1, -1), (0, 1)))):
        out.append(GroupElement.from_blocks(A, ((0, 0), (0, 0)), ((0, 0), (0, 0)), Dinv))
    return out


def _scale_unipotent(E: GroupElement, s: Fraction) -> GroupElement:
    """I + s (E - I) for an elementary unipotent E (still symplectic)."""
    diff = E - IDENTITY
    return GroupElement(tuple(tuple(int(i == j) + s * diff[i, j] for j in range(4))
                              for i in range(4)))


def generator_pool(g: GroupId, t: int) -> list[GroupElement]:
    """Pattern-respecting elementary generators of (a finite-index subgroup of) g."""
    base = GroupId(g.tag, g.level)
    scales = [Fraction(1, t), Fraction(1), Fraction(t), Fraction(t * t)]
    if g.tag == "Principal":
        scales = [Fraction(g.level)]
    pool = []
    R = r_matrix(t)
    for E in _elementary_pool():
        for s in scales:
            cand = _scale_unipotent(E, s)
            if g.tilde:
                cand = R @ cand @ R.inverse()
            if member(cand, g if g.tilde else base, t):
                pool.append(cand)
                break
    if g.tag == "Gamma_bil":
        pool.append(R @ ZETA @ R.inverse() if g.tilde else ZETA)
    return pool


def random_member(g: GroupId, t: int, rng: random.Random, length: int = 6) -> GroupElement:
    """Random word of the given length in the generator pool and inverses."""
    pool = generator_pool(g, t)
    if not pool:
        raise InvalidArgument(f"no generators found for {g} at t = {t}")
    out = IDENTITY
    for _ in range(length):
        x = rng.choice(pool)
        out = out @ (x if rng.random() < 0.5 else x.inverse())
    return out


# -- Q_r conjugation checks -------------------------------------------------


@dataclass
class CheckItem:
    item: str
    label: str
    passed: bool
    detail: str = ""


@dataclass
class ConjugationReport:
    t: int
    r: int
    items: list[CheckItem] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.items)

    def by_item(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for c in self.items:
            out[c.item] = out.get(c.item, True) and c.passed
        return out


def gamma_tr_samples(t: int, r: int) -> tuple[list, list]:
    """Sample members and non-members of Gamma(t, r)."""
    up = ((1, t * t), (0, 1))
    low = ((1, 0), (r, 1))

    def mul(x, y):
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
                     for i in range(2))

    members = [((1, 0), (0, 1)), up, low, mul(up, low), mul(low, up),
               mul(mul(up, low), up), ((1, -t * t), (0, 1)), ((1, 0), (-r, 1))]
    non_members = [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((1, -1), (1, 0))]
    return members, non_members


def _in_bil(M: GroupElement, t: int) -> bool:
    return member(M, GAMMA_BIL, t)


def _involution_family(span: int = 1) -> list[GroupElement]:
    """Order-2 elements of the stabiliser of (0,0,0,1) built from small words."""
    base = [ZETA, -ZETA, g1(((-1, 0), (0, -1))), -g1(((-1, 0), (0, -1)))]
    seen = set()
    out = []
    for b in base:
        for m, n, s in itertools.product(range(-span, span + 1), repeat=3):
            g = b @ g3(m, n) @ g4(s)
            if g != IDENTITY and g @ g == IDENTITY and g not in seen:
                seen.add(g)
                out.append(g)
    return out


def conjugation_checks(t: int, r: int, grid: int = 2) -> ConjugationReport:
    """Items (a)-(e) for Q_r, with ``Q g Q^-1`` as the conjugate (see module doc)."""
    if t < 1 or r < 1 or t % r:
        raise InvalidArgument(f"r = {r} must divide t = {t}")
    Q = q_matrix(t, r)
    Qi = Q.inverse()
    rep = ConjugationReport(t, r)

    def conj(g):
        return Q @ g @ Qi

    # (a) translations
    for s in range(-grid, grid + 1):
        rep.items.append(CheckItem("a", f"g4({r * t}*{s})", _in_bil(conj(g4(r * t * s)), t)))

    # (b) Heisenberg part
    h = t // r
    for m, n in itertools.product(range(-grid, grid + 1), repeat=2):
        M = conj(g3(r * m, t * n))
        ok = _in_bil(M, t)
        detail = ""
        if not ok:
            bad = pattern_violations(M, _NAT, t)
            detail = "violations " + ", ".join(f"({i},{j})={v}" for i, j, v in bad)
            kappa = next((k for k in range(-t * t, t * t + 1)
                          if _in_bil(conj(g3(r * m, t * n) @ g4(k)), t)), None)
            detail += f"; central fix g4({kappa})" if kappa is not None else "; no central fix"
        rep.items.append(CheckItem("b", f"g3({r * m},{t * n})", ok, detail))
    failures = [c for c in rep.items if c.item == "b" and not c.passed]
    if failures:
        rep.diagnostics.append(
            f"(b) fails for {len(failures)} grid points; entry (2,4) of Q g3(rm,tn) Q^-1 "
            f"carries 2h(h-1)tn with h = {h}, which lies in t^2 Z only when t | 2h(h-1)n")

    # (c) Gamma(t, r) members in, non-members out
    mem, non = gamma_tr_samples(t, r)
    for gamma in mem:
        rep.items.append(CheckItem("c", f"g1{gamma} in", _in_bil(conj(g1(gamma)), t)))
    for gamma in non:
        rep.items.append(CheckItem("c", f"g1{gamma} out", not _in_bil(conj(g1(gamma)), t)))

    # (d) no 2-torsion for nonstandard r
    if 1 < r < t:
        fam = _involution_family()
        inside = [g for g in fam if _in_bil(conj(g), t)]
        rep.items.append(CheckItem(
            "d", f"{len(fam)} involutions", not inside,
            f"{len(inside)} conjugates land in the group" if inside else "partial: finite family"))

    # (e) extra invariance at standard components
    if r == t:
        rep.items.append(CheckItem("e", "Q_t zeta Q_t^-1", _in_bil(conj(ZETA), t)))
    if r == 1:
        rep.items.append(CheckItem("e", "Q_1 (-zeta) Q_1^-1", _in_bil(conj(-ZETA), t)))
    return rep


def z_v_display(Z: SiegelPoint, h: int) -> SiegelPoint:
    """The printed coordinates Z^v in terms of Z, for comparison with Q^-1(Z)."""
    t1, t2, t3 = Z.tau1, Z.tau2, Z.tau3
    a = h * h * t1 - 2 * h * t2 + t3
    b = -h * (h - 1) * t1 + (2 * h - 1) * t2 - t3
    c = (h - 1) * (h - 1) * t1 - 2 * (h - 1) * t2 + t3
    return SiegelPoint(a, b, c)


def gcd_many(*xs: int) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, int(x))
    return g
