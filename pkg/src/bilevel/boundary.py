"""Boundary divisors: t-divisors, canonical orbit classes, counts and an orbit oracle.

A line is given by a primitive integer row vector v. The group acts on the
residues mod t through

    v2 -> v2 + k v1 + l v3,   v4 -> v4 + k' v1 + l' v3,

together with zeta, (v2, v4) -> (-v2, -v4), and the global sign v -> -v.
Because zeta times -1 flips (v1, v3) alone, the two pairs carry independent
signs. The orbit of v is therefore fixed by +-(v1, v3) mod t and by
+-(v2, v4) mod r, where r = gcd(t, v1, v3).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arith import count_Phi_bar2, divisors
from .errors import InvalidArgument, ResourceLimit, UnsupportedModulus

ORACLE_MAX_T = 45


def _require_odd(t: int) -> None:
    if t < 3 or t % 2 == 0:
        raise UnsupportedModulus(f"t must be odd and >= 3, got {t}")


def _gcd(*xs: int) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, int(x))
    return g


def _check_primitive(v: Sequence[int]) -> tuple[int, int, int, int]:
    if len(v) != 4:
        raise InvalidArgument("boundary vectors have four entries")
    vv = tuple(int(x) for x in v)
    if _gcd(*vv) != 1:
        raise InvalidArgument(f"{vv} is not primitive")
    return vv


def t_divisor(v: Sequence[int], t: int) -> int:
    v1, _, v3, _ = _check_primitive(v)
    return _gcd(t, v1, v3)


def sign_normalize(pair: tuple[int, int], modulus: int) -> tuple[int, int]:
    """Pick the representative of +-pair whose first nonzero entry is <= modulus/2."""
    if modulus == 1:
        return (0, 0)
    a, b = pair[0] % modulus, pair[1] % modulus
    first = a if a else b
    if first > modulus // 2:
        return ((-a) % modulus, (-b) % modulus)
    return (a, b)


@dataclass(frozen=True, order=True)
class DivisorClass:
    t: int
    r: int
    a13: tuple[int, int]
    a24: tuple[int, int]

    def representative(self) -> tuple[int, int, int, int]:
        """A primitive integer vector in this class."""
        return lift_residue((self.a13[0], self.a24[0], self.a13[1], self.a24[1]), self.t)

    @property
    def standard(self) -> bool:
        return self.r in (1, self.t)


def class_of_residue(c: Sequence[int], t: int) -> DivisorClass:
    """Canonical class of a residue vector with gcd(c, t) = 1."""
    c1, c2, c3, c4 = (int(x) % t for x in c)
    if _gcd(c1, c2, c3, c4, t) != 1:
        raise InvalidArgument(f"{tuple(c)} does not lift to a primitive vector mod {t}")
    r = _gcd(t, c1, c3)
    return DivisorClass(t, r, sign_normalize((c1, c3), t), sign_normalize((c2, c4), r))


def normalize_line(v: Sequence[int], t: int) -> DivisorClass:
    _require_odd(t)
    return class_of_residue(_check_primitive(v), t)


def same_orbit(v: Sequence[int], w: Sequence[int], t: int) -> bool:
    return normalize_line(v, t) == normalize_line(w, t)


def paper_positive(v: Sequence[int], t: int) -> tuple[int, ...]:
    """Sign the whole residue vector so its first nonzero entry lies in 1..(t-1)/2."""
    c = [int(x) % t for x in v]
    first = next((x for x in c if x), 0)
    if first > t // 2:
        c = [(-x) % t for x in c]
    return tuple(c)


def paper_criterion(v: Sequence[int], w: Sequence[int], t: int) -> bool:
    """The printed criterion: equal (v1, v3) after full-vector positivity,
    (v2, v4) equal up to sign mod r."""
    pv, pw = paper_positive(v, t), paper_positive(w, t)
    if (pv[0], pv[2]) != (pw[0], pw[2]):
        return False
    r = _gcd(t, pv[0], pv[2])
    a, b = (pv[1] % r, pv[3] % r), (pw[1] % r, pw[3] % r)
    return a == b or a == ((-b[0]) % r, (-b[1]) % r)


def lift_residue(c: Sequence[int], t: int) -> tuple[int, int, int, int]:
    """A primitive integer vector congruent to c mod t (needs gcd(c, t) = 1)."""
    c1, c2, c3, c4 = (int(x) % t for x in c)
    if _gcd(c1, c2, c3, c4, t) != 1:
        raise InvalidArgument("residue vector does not lift to a primitive vector")
    if _gcd(c1, c2, c3, c4) == 1:
        return (c1, c2, c3, c4)
    if c1 == c2 == c3 == 0:
        c1 = t
    g = _gcd(c1, c2, c3)
    m = 0
    while _gcd(g, c4 + m * t) != 1:
        m += 1
    return (c1, c2, c3, c4 + m * t)


def count_boundary_closed(t: int) -> dict[int, int]:
    _require_odd(t)
    return {r: count_Phi_bar2(t // r) * count_Phi_bar2(r) for r in divisors(t)}


# -- orbit oracle -----------------------------------------------------------


class UnionFind:
    """Array-backed union-find with vectorised hooking and path halving."""

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)

    def find_all(self, idx: np.ndarray | None = None) -> np.ndarray:
        p = self.parent
        while True:
            pp = p[p]
            if np.array_equal(pp, p):
                break
            p = pp
        self.parent = p
        return p if idx is None else p[idx]

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = int(p[i])
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def union_many(self, a: np.ndarray, b: np.ndarray) -> None:
        while True:
            ra, rb = self.find_all(a), self.find_all(b)
            diff = ra != rb
            if not diff.any():
                return
            lo = np.minimum(ra[diff], rb[diff])
            hi = np.maximum(ra[diff], rb[diff])
            # Conflicting writes keep one winner; the loop picks up the rest.
            self.parent[hi] = lo


@dataclass(frozen=True)
class OrbitTable:
    t: int
    counts: dict[int, int]
    samples: dict[int, tuple[int, int, int, int]]
    n_residues: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _residue_grid(t: int):
    c = np.indices((t, t, t, t)).reshape(4, -1).astype(np.int64)
    return c


def _encode(c: np.ndarray, t: int) -> np.ndarray:
    return ((c[0] * t + c[1]) * t + c[2]) * t + c[3]


def oracle_orbits(t: int) -> tuple[np.ndarray, np.ndarray, UnionFind]:
    """Union-find over all residue vectors; returns (grid, primitive mask, uf)."""
    if t < 3 or t % 2 == 0:
        raise UnsupportedModulus(f"t must be odd and >= 3, got {t}")
    if t > ORACLE_MAX_T:
        raise ResourceLimit(f"t = {t} exceeds the oracle guard {ORACLE_MAX_T}")
    c = _residue_grid(t)
    prim = np.gcd.reduce(np.vstack([c, np.full(c.shape[1], t)]), axis=0) == 1
    src = _encode(c, t)[prim]
    cp = c[:, prim]
    uf = UnionFind(t**4)
    v1, v2, v3, v4 = cp
    moves = [
        (v1, (v2 + v1) % t, v3, v4),
        (v1, (v2 + v3) % t, v3, v4),
        (v1, v2, v3, (v4 + v1) % t),
        (v1, v2, v3, (v4 + v3) % t),
        (v1, (-v2) % t, v3, (-v4) % t),
        ((-v1) % t, (-v2) % t, (-v3) % t, (-v4) % t),
    ]
    for img in moves:
        uf.union_many(src, _encode(np.vstack(img), t))
    return c, prim, uf


def count_boundary_oracle(t: int) -> OrbitTable:
    c, prim, uf = oracle_orbits(t)
    roots = uf.find_all()
    idx = np.flatnonzero(prim)
    cp = c[:, prim]
    rs = np.gcd(np.gcd(cp[0], cp[2]), t)
    counts: dict[int, int] = {}
    samples: dict[int, tuple[int, int, int, int]] = {}
    for r in divisors(t):
        sel = rs == r
        orbit_roots = np.unique(roots[idx[sel]])
        counts[r] = int(orbit_roots.size)
        if orbit_roots.size:
            samples[r] = lift_residue(decode(int(idx[sel][0]), t), t)
    return OrbitTable(t, counts, samples, int(prim.sum()))


def decode(i: int, t: int) -> tuple[int, int, int, int]:
    digits = []
    for _ in range(4):
        digits.append(i % t)
        i //= t
    return tuple(reversed(digits))


# -- standard components ----------------------------------------------------


def standard_pairs(t: int) -> list[tuple[int, int]]:
    """(a, b) with 0 <= a <= (t-1)/2, 0 <= b < t, gcd(a, b, t) = 1, and
    b <= (t-1)/2 when a = 0 (so each pair is taken once up to sign)."""
    _require_odd(t)
    half = (t - 1) // 2
    out = []
    for a in range(half + 1):
        for b in range(t):
            if a == 0 and b > half:
                continue
            if _gcd(a, b, t) == 1:
                out.append((a, b))
    return out


def standard_components(t: int) -> dict[int, list[tuple[int, int, int, int]]]:
    """Primitive representatives keyed by t-divisor: r = t gives (0,a,0,b), r = 1 gives (a,0,b,0)."""
    pairs = standard_pairs(t)
    return {
        t: [lift_residue((0, a, 0, b), t) for a, b in pairs],
        1: [lift_residue((a, 0, b, 0), t) for a, b in pairs],
    }


# -- export -----------------------------------------------------------------


def sample_for(t: int, r: int) -> tuple[int, int, int, int]:
    """A primitive vector of t-divisor r: (r, 1, 0, 0) when r < t, else (0, 1, 0, 0)."""
    if t % r:
        raise InvalidArgument(f"{r} does not divide {t}")
    return (0, 1, 0, 0) if r == t else lift_residue((r, 1, 0, 0), t)


def orbit_rows(t: int, counts: dict[int, int],
               samples: dict[int, Sequence[int]] | None = None) -> list[tuple[int, int, str]]:
    rows = []
    for r in sorted(counts):
        s = samples.get(r) if samples else None
        s = s if s is not None else sample_for(t, r)
        rows.append((r, counts[r], "(" + ",".join(str(x) for x in s) + ")"))
    return rows


def orbit_table_csv(t: int, counts: dict[int, int],
                    samples: dict[int, Sequence[int]] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "count", "sample_representative"])
    w.writerows(orbit_rows(t, counts, samples))
    return buf.getvalue()


def classes_of(vectors: Iterable[Sequence[int]], t: int) -> set[DivisorClass]:
    return {normalize_line(v, t) for v in vectors}
