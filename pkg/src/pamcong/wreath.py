"""Partial automorphism monoids of free actions: group-labelled partial injections.

An element of degree n over a group G is a pair (labels; perm) where perm is a
partial injection on n points and labels assigns a group element to each point
of its domain (-1 elsewhere). The product is

    (g; a)(h; b) = (g * h_a ; ab),   (h_a)_i = h_(i a),

with composition left-to-right, matching the action picture: first move by a
carrying labels g, then by b picking up labels along the way.

Literal format: ``(1,2,-,4 ; [2,1,-,3])`` with 0-based group element indices
on the label side and the 1-based partial injection literal on the right.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeBoundError, ValidationError
from .groups import FiniteGroup
from .partial_injections import (UNDEF, PartialInjection,
                                 enumerate_partial_injections, green_related,
                                 h_class_permutation)

MONOID_ENUM_BOUND = 5000


def wreath_size(group_order: int, n: int) -> int:
    """Monoid size: sum over ranks of C(n,k)^2 k! |G|^k."""
    return sum(math.comb(n, k) ** 2 * math.factorial(k) * group_order ** k
               for k in range(n + 1))


@dataclass(frozen=True)
class WreathElement:
    """(labels; perm): a group-labelled partial injection."""

    labels: tuple[int, ...]
    perm: PartialInjection

    def __post_init__(self):
        if len(self.labels) != self.perm.n:
            raise ValidationError("label tuple and injection have different degrees")
        for lab, img in zip(self.labels, self.perm.images):
            if (lab == UNDEF) != (img == UNDEF):
                raise ValidationError(
                    f"labels must be present exactly on the domain: {self}")

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def rank(self) -> int:
        return self.perm.rank

    def format(self) -> str:
        lab = ",".join("-" if v == UNDEF else str(v) for v in self.labels)
        return f"({lab} ; {self.perm.format()})"

    @staticmethod
    def parse(text: str, n: int | None = None) -> "WreathElement":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValidationError(f"wreath element literal must be parenthesized: {text!r}")
        try:
            lab_part, perm_part = body[1:-1].split(";")
        except ValueError as exc:
            raise ValidationError(f"expected '(labels ; [perm])': {text!r}") from exc
        labels = []
        for p in lab_part.split(","):
            p = p.strip()
            if p == "-":
                labels.append(UNDEF)
            else:
                try:
                    v = int(p)
                except ValueError as exc:
                    raise ValidationError(f"bad label {p!r} in {text!r}") from exc
                if v < 0:
                    raise ValidationError(f"labels are 0-based indices; got {v}")
                labels.append(v)
        perm = PartialInjection.parse(perm_part.strip(), n=len(labels))
        if n is not None and len(labels) != n:
            raise ValidationError(f"expected degree {n}, got {len(labels)}")
        return WreathElement(tuple(labels), perm)


def theta_embed(x: WreathElement, n_plus: int | None = None) -> WreathElement:
    """Degree embedding: act on one extra point, undefined there."""
    if n_plus is not None and n_plus != x.n + 1:
        raise ValidationError(f"embedding raises degree {x.n} to {x.n + 1}, not {n_plus}")
    return WreathElement(x.labels + (UNDEF,),
                         PartialInjection(x.perm.images + (UNDEF,)))


class WreathMonoid:
    """The monoid of G-labelled partial injections on n points."""

    def __init__(self, group: FiniteGroup, n: int, bound: int = MONOID_ENUM_BOUND):
        if n < 1:
            raise ValidationError(f"degree must be >= 1, got {n}")
        self.group = group
        self.n = n
        self.bound = bound
        self.size = wreath_size(group.order, n)
        self._elements: tuple[WreathElement, ...] | None = None
        self._index: dict[WreathElement, int] | None = None
        self._table: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"WreathMonoid({self.group.name}, n={self.n}, size={self.size})"

    # -- element constructors ------------------------------------------------

    def identity_element(self) -> WreathElement:
        e = self.group.identity
        return WreathElement((e,) * self.n, PartialInjection.identity(self.n))

    def zero_element(self) -> WreathElement:
        return WreathElement((UNDEF,) * self.n, PartialInjection.zero(self.n))

    def element(self, labels, perm) -> WreathElement:
        x = WreathElement(tuple(labels), perm if isinstance(perm, PartialInjection)
                          else PartialInjection(tuple(perm)))
        return self.validate_element(x)

    def validate_element(self, x: WreathElement) -> WreathElement:
        if x.n != self.n:
            raise ValidationError(f"element degree {x.n} != monoid degree {self.n}")
        for lab in x.labels:
            if lab != UNDEF and lab >= self.group.order:
                raise ValidationError(
                    f"label {lab} out of range for {self.group.name}")
        return x

    def parse_element(self, text: str) -> WreathElement:
        return self.validate_element(WreathElement.parse(text, n=self.n))

    # -- operations ------------------------------------------------------------

    def multiply(self, x: WreathElement, y: WreathElement) -> WreathElement:
        if x.n != self.n or y.n != self.n:
            raise ValidationError("degree mismatch")
        G = self.group
        a, b = x.perm, y.perm
        ab = a.compose(b)
        labels = []
        for i in range(self.n):
            j = a.images[i]
            if j == UNDEF or b.images[j] == UNDEF:
                labels.append(UNDEF)
            else:
                labels.append(G.mul(x.labels[i], y.labels[j]))
        return WreathElement(tuple(labels), ab)

    def invert(self, x: WreathElement) -> WreathElement:
        """The unique inverse in the inverse monoid: (g;a)^-1 = (g_(a^-1)^-1; a^-1)."""
        G = self.group
        inv_perm = x.perm.inverse()
        labels = [UNDEF] * self.n
        for i, v in enumerate(x.perm.images):
            if v != UNDEF:
                labels[v] = G.inv(x.labels[i])
        return WreathElement(tuple(labels), inv_perm)

    def is_idempotent(self, x: WreathElement) -> bool:
        e = self.group.identity
        return x.perm.is_partial_identity() and all(
            lab in (UNDEF, e) for lab in x.labels)

    def idempotents(self) -> list[WreathElement]:
        """The 2^n partial identities with identity labels, by domain mask."""
        e = self.group.identity
        out = []
        for mask in range(1 << self.n):
            labels = tuple(e if (mask >> i) & 1 else UNDEF for i in range(self.n))
            perm = PartialInjection(tuple(i if (mask >> i) & 1 else UNDEF
                                          for i in range(self.n)))
            out.append(WreathElement(labels, perm))
        return out

    def idempotent_on(self, points: tuple[int, ...]) -> WreathElement:
        e = self.group.identity
        pts = set(points)
        labels = tuple(e if i in pts else UNDEF for i in range(self.n))
        perm = PartialInjection(tuple(i if i in pts else UNDEF for i in range(self.n)))
        return WreathElement(labels, perm)

    def in_e_centralizer(self, x: WreathElement) -> bool:
        """Whether x commutes with every idempotent: the perm part is a partial identity."""
        return x.perm.is_partial_identity()

    def green_related(self, x: WreathElement, y: WreathElement, rel: str) -> bool:
        """Green's relations are inherited from the partial injection parts."""
        return green_related(x.perm, y.perm, rel)

    def ideal_rank(self, x: WreathElement) -> int:
        return x.rank

    def theta_embed(self, x: WreathElement, n_plus: int | None = None) -> WreathElement:
        return theta_embed(self.validate_element(x), n_plus)

    # -- enumeration -----------------------------------------------------------

    def enumerate(self) -> tuple[WreathElement, ...]:
        if self._elements is None:
            if self.size > self.bound:
                raise SizeBoundError(
                    f"{self!r}: size {self.size} exceeds the bound {self.bound}")
            out = []
            order = self.group.order
            for perm in enumerate_partial_injections(self.n):
                dom = perm.domain()
                for assignment in itertools.product(range(order), repeat=len(dom)):
                    labels = [UNDEF] * self.n
                    for p, g in zip(dom, assignment):
                        labels[p] = g
                    out.append(WreathElement(tuple(labels), perm))
            assert len(out) == self.size
            self._elements = tuple(out)
            self._index = {x: i for i, x in enumerate(out)}
        return self._elements

    def index_of(self, x: WreathElement) -> int:
        self.enumerate()
        return self._index[x]

    def product_table(self) -> np.ndarray:
        """Dense int32 multiplication table over enumerate() indexing."""
        if self._table is None:
            elems = self.enumerate()
            idx = self._index
            s = len(elems)
            table = np.empty((s, s), dtype=np.int32)
            for i, x in enumerate(elems):
                for j, y in enumerate(elems):
                    table[i, j] = idx[self.multiply(x, y)]
            self._table = table
        return self._table
