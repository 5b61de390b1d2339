"""Partial injections on n points and the congruence lattice of their monoid.

Elements are stored 0-based as image tuples with -1 for "undefined"; the
textual literal format is 1-based with "-" for undefined points, e.g.
``[2,1,-,3]`` for the map 1->2, 2->1, 4->3. Composition is left-to-right:
``(x)(ab) = b(a(x))``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from . import groups
from .errors import ValidationError
from .groups import Subgroup, all_normal_subgroups, symmetric_group

UNDEF = -1


@dataclass(frozen=True)
class PartialInjection:
    """An injective partial map on {0..n-1} as an image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        defined = [v for v in self.images if v != UNDEF]
        if any(not 0 <= v < n for v in defined):
            raise ValidationError(f"image values out of range in {self.images}")
        if len(set(defined)) != len(defined):
            raise ValidationError(f"images are not injective: {self.images}")

    # -- basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def rank(self) -> int:
        return sum(1 for v in self.images if v != UNDEF)

    def apply(self, i: int) -> int:
        return self.images[i]

    def domain(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.images) if v != UNDEF)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(v for v in self.images if v != UNDEF))

    def compose(self, other: "PartialInjection") -> "PartialInjection":
        """self then other."""
        if other.n != self.n:
            raise ValidationError("cannot compose maps on different point sets")
        out = tuple(UNDEF if v == UNDEF else other.images[v] for v in self.images)
        return PartialInjection(out)

    def inverse(self) -> "PartialInjection":
        out = [UNDEF] * self.n
        for i, v in enumerate(self.images):
            if v != UNDEF:
                out[v] = i
        return PartialInjection(tuple(out))

    def is_partial_identity(self) -> bool:
        return all(v == UNDEF or v == i for i, v in enumerate(self.images))

    @staticmethod
    def identity(n: int) -> "PartialInjection":
        return PartialInjection(tuple(range(n)))

    @staticmethod
    def zero(n: int) -> "PartialInjection":
        return PartialInjection((UNDEF,) * n)

    # -- literals -----------------------------------------------------------

    def format(self) -> str:
        return "[" + ",".join("-" if v == UNDEF else str(v + 1)
                              for v in self.images) + "]"

    @staticmethod
    def parse(text: str, n: int | None = None) -> "PartialInjection":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValidationError(f"partial injection literal must be bracketed: {text!r}")
        parts = [p.strip() for p in body[1:-1].split(",")] if body[1:-1].strip() else []
        vals = []
        for p in parts:
            if p == "-":
                vals.append(UNDEF)
            else:
                try:
                    v = int(p)
                except ValueError as exc:
                    raise ValidationError(f"bad entry {p!r} in {text!r}") from exc
                if v < 1:
                    raise ValidationError(f"points are 1-based; got {v} in {text!r}")
                vals.append(v - 1)
        if n is not None and len(vals) != n:
            raise ValidationError(f"expected {n} entries, got {len(vals)} in {text!r}")
        return PartialInjection(tuple(vals))


# -- enumeration -------------------------------------------------------------

def monoid_size(n: int) -> int:
    """|I_n| = sum over k of C(n,k)^2 k!."""
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


@lru_cache(maxsize=None)
def enumerate_partial_injections(n: int) -> tuple[PartialInjection, ...]:
    """All partial injections on n points, lexicographic in the padded tuple."""
    out = []
    for images in itertools.product(range(-1, n), repeat=n):
        defined = [v for v in images if v != UNDEF]
        if len(set(defined)) == len(defined):
            out.append(PartialInjection(images))
    return tuple(out)


# -- Green's relations --------------------------------------------------------

def green_related(a: PartialInjection, b: PartialInjection, rel: str) -> bool:
    """L: equal images; R: equal domains; H: both; D = J: equal ranks."""
    if rel == "L":
        return a.image() == b.image()
    if rel == "R":
        return a.domain() == b.domain()
    if rel == "H":
        return a.domain() == b.domain() and a.image() == b.image()
    if rel in ("D", "J"):
        return a.rank == b.rank
    raise ValidationError(f"unknown Green relation {rel!r}")


def h_class_permutation(a: PartialInjection, b: PartialInjection) -> tuple[int, ...]:
    """The permutation mu with a_i b = c_(i mu), in the frame induced by a.

    Here a_1 < ... < a_k is the sorted domain and c_i := a_i a (unsorted);
    mu(a, a) is always the identity.
    """
    if not green_related(a, b, "H"):
        raise ValidationError("permutation is defined only within an H-class")
    dom = a.domain()
    pos = {a.apply(x): i for i, x in enumerate(dom)}
    return tuple(pos[b.apply(x)] for x in dom)


# -- congruences of the partial injection monoid ------------------------------

@dataclass(frozen=True)
class InCongruenceSpec:
    """Congruence descriptor (k, N): collapse below rank k, N-twist at rank k.

    N is a normal subgroup of the realized S_k; the universal congruence is
    encoded as k = n + 1 with N = None.
    """

    n: int
    k: int
    N: Subgroup | None

    def __post_init__(self):
        if not 1 <= self.k <= self.n + 1:
            raise ValidationError(f"level k={self.k} out of range for n={self.n}")
        if self.k == self.n + 1:
            if self.N is not None:
                raise ValidationError("the universal congruence carries no subgroup")
            return
        if self.N is None:
            raise ValidationError("non-universal congruences need a subgroup of S_k")
        if self.N.group.order != math.factorial(self.k):
            raise ValidationError(f"subgroup lives in the wrong symmetric group")
        if not self.N.is_normal:
            raise ValidationError("the rank-k twist subgroup must be normal in S_k")

    @property
    def is_universal(self) -> bool:
        return self.k == self.n + 1

    def related(self, a: PartialInjection, b: PartialInjection) -> bool:
        if a.n != self.n or b.n != self.n:
            raise ValidationError("elements have the wrong degree")
        if self.is_universal:
            return True
        if a.rank < self.k and b.rank < self.k:
            return True
        if a == b:
            return True
        if a.rank == b.rank == self.k and green_related(a, b, "H"):
            mu = h_class_permutation(a, b)
            sym = self.N.group
            return self.N.contains(sym.index(mu))
        return False

    def describe(self) -> str:
        if self.is_universal:
            return "universal"
        return f"(k={self.k}, N=order {self.N.order} in S{self.k})"


def enumerate_in_congruence_specs(n: int) -> list[InCongruenceSpec]:
    """All congruence descriptors of the rank-n partial injection monoid."""
    out = []
    for k in range(1, n + 1):
        sym = symmetric_group(k)
        for N in all_normal_subgroups(sym):
            out.append(InCongruenceSpec(n, k, N))
    out.append(InCongruenceSpec(n, n + 1, None))
    return out


def count_in_congruences(n: int) -> int:
    """Congruence count via the classical S_k inventory (no realization)."""
    return 1 + sum(len(groups.symmetric_normal_inventory(k)) for k in range(1, n + 1))
