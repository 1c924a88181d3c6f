"""Finite abelian groups, their subgroups and the subgroup lattice.

Groups are given as products of cyclic factors ``Z/n1 x ... x Z/nk`` and their
elements are residue tuples. Subgroups are stored as the sorted tuple of their
elements, which makes equality and hashing trivial at the sizes we care about.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError, SizeLimitError, VerificationError

DEFAULT_MAX_ORDER = 200

Element = tuple[int, ...]

_FACTOR_RE = re.compile(r"^c(\d+)$")


def _prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, r) with n == p**r, r >= 1, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return (p, r) if n == 1 else None


@dataclass(frozen=True)
class AbelianGroup:
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if not orders or any(n < 1 for n in orders):
            raise InputError(f"cyclic orders must be integers >= 1, got {self.cyclic_orders!r}")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def parse(cls, spec: str) -> "AbelianGroup":
        """Parse ``C12`` or ``C2xC4`` (case-insensitive)."""
        if not isinstance(spec, str) or not spec.strip():
            raise InputError("empty group spec")
        parts = spec.strip().lower().split("x")
        orders = []
        for part in parts:
            m = _FACTOR_RE.match(part.strip())
            if m is None or int(m.group(1)) < 1:
                raise InputError(f"malformed group spec {spec!r}; expected C<n> or C<n1>xC<n2>...")
            orders.append(int(m.group(1)))
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def name(self) -> str:
        return "x".join(f"C{n}" for n in self.cyclic_orders)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.cyclic_orders)

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.cyclic_orders))

    def element_order(self, a: Element) -> int:
        out = 1
        for x, n in zip(a, self.cyclic_orders):
            out = math.lcm(out, n // math.gcd(x, n))
        return out

    def cyclic_subgroup(self, g: Element) -> "Subgroup":
        elems = [self.identity]
        cur = g
        while cur != self.identity:
            elems.append(cur)
            cur = self.add(cur, g)
        return Subgroup(self, tuple(sorted(elems)))

    def generated(self, gens) -> "Subgroup":
        """Closure of ``gens`` under addition."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.add(a, g)
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
            frontier = nxt
        return Subgroup(self, tuple(sorted(elems)))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Subgroup:
    group: AbelianGroup = field(repr=False)
    elements: tuple[Element, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def exponent(self) -> int:
        out = 1
        for e in self.elements:
            out = math.lcm(out, self.group.element_order(e))
        return out

    @property
    def is_cyclic(self) -> bool:
        return self.exponent == self.order

    @property
    def cyclic_order(self) -> int | None:
        return self.order if self.is_cyclic else None

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __le__(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and self <= other

    def is_closed(self) -> bool:
        s = set(self.elements)
        if self.group.identity not in s:
            return False
        return all(self.group.add(a, b) in s for a in s for b in s) and all(
            self.group.neg(a) in s for a in s
        )

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.elements]

    def sort_key(self):
        return (self.order, self.elements)


@dataclass(frozen=True)
class CyclicPSubgroup:
    """A nontrivial cyclic subgroup of order ``prime**exponent``."""

    subgroup: Subgroup
    prime: int
    exponent: int
    parent: Subgroup | None  # maximal proper subgroup, None when exponent == 1


def enumerate_subgroups(group: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> list[Subgroup]:
    """All subgroups, each once, sorted by (order, elements).

    Starts from the cyclic subgroups and closes under pairwise joins.
    """
    if group.order > max_order:
        raise SizeLimitError(f"|{group.name}| = {group.order} exceeds the bound {max_order}")
    found = {group.cyclic_subgroup(g) for g in group.elements()}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                if a <= b or b <= a:
                    continue
                j = group.generated(a.elements + b.elements)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    subs = sorted(found, key=Subgroup.sort_key)
    for s in subs:
        if not s.is_closed():
            raise VerificationError(f"enumerated set {s.elements} is not a subgroup")
    return subs


def cyclic_p_subgroups(K: Subgroup) -> list[CyclicPSubgroup]:
    """Nontrivial cyclic subgroups of prime-power order contained in ``K``.

    Sorted by (prime, exponent, elements).
    """
    G = K.group
    subs = {G.cyclic_subgroup(g) for g in K.elements}
    out = []
    for L in subs:
        pp = _prime_power(L.order)
        if pp is None:
            continue
        p, r = pp
        parent = None
        if r > 1:
            gen = next(g for g in L.elements if G.element_order(g) == L.order)
            pg = gen
            for _ in range(p - 1):
                pg = G.add(pg, gen)
            parent = G.cyclic_subgroup(pg)
        out.append(CyclicPSubgroup(L, p, r, parent))
    out.sort(key=lambda c: (c.prime, c.exponent, c.subgroup.elements))
    return out


class SubgroupLattice:
    """The subgroup lattice of ``group`` with containments and covers.

    Nodes are indexed in (order, elements) order, so index 0 is the trivial
    subgroup and the last index is the whole group.
    """

    def __init__(self, group: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER):
        self.group = group
        self.nodes: list[Subgroup] = enumerate_subgroups(group, max_order)
        self.index = {s: i for i, s in enumerate(self.nodes)}
        n = len(self.nodes)
        sets = [set(s.elements) for s in self.nodes]
        self.containments: set[tuple[int, int]] = {
            (i, j) for i in range(n) for j in range(n) if sets[i] <= sets[j]
        }
        self.covers: list[tuple[int, int]] = sorted(
            (i, j)
            for (i, j) in self.containments
            if i != j
            and not any(
                k not in (i, j) and (i, k) in self.containments and (k, j) in self.containments
                for k in range(n)
            )
        )
        self._chains: dict[tuple[int, int], list[list[Subgroup]]] = {}
        self.ids = self._make_ids()
        self.by_id = {sid: self.nodes[i] for i, sid in enumerate(self.ids)}
        self.verify()

    def _make_ids(self) -> list[str]:
        base = []
        for s in self.nodes:
            if s.is_trivial:
                base.append("e")
            elif s.is_cyclic:
                base.append(f"C{s.order}")
            else:
                base.append(f"N{s.order}")
        counts: dict[str, int] = {}
        for b in base:
            counts[b] = counts.get(b, 0) + 1
        seen: dict[str, int] = {}
        ids = []
        for b in base:
            if counts[b] == 1:
                ids.append(b)
            else:
                seen[b] = seen.get(b, 0) + 1
                ids.append(f"{b}_{seen[b]}")
        return ids

    def id_of(self, s: Subgroup) -> str:
        return self.ids[self.index[s]]

    @property
    def bottom(self) -> Subgroup:
        return self.nodes[0]

    @property
    def top(self) -> Subgroup:
        return self.nodes[-1]

    def leq(self, a: Subgroup, b: Subgroup) -> bool:
        return (self.index[a], self.index[b]) in self.containments

    def cover_edges(self) -> list[tuple[Subgroup, Subgroup]]:
        return [(self.nodes[i], self.nodes[j]) for i, j in self.covers]

    def upper_covers(self, s: Subgroup) -> list[Subgroup]:
        i = self.index[s]
        return [self.nodes[j] for a, j in self.covers if a == i]

    def maximal_chains(self, low: Subgroup, high: Subgroup) -> list[list[Subgroup]]:
        """All saturated chains low = c0 < c1 < ... < ck = high."""
        key = (self.index[low], self.index[high])
        if key not in self._chains:
            self._chains[key] = self._maximal_chains(low, high)
        return [list(c) for c in self._chains[key]]

    def _maximal_chains(self, low: Subgroup, high: Subgroup) -> list[list[Subgroup]]:
        if not self.leq(low, high):
            return []
        if low == high:
            return [[low]]
        out = []
        for nxt in self.upper_covers(low):
            if self.leq(nxt, high):
                for tail in self.maximal_chains(nxt, high):
                    out.append([low] + tail)
        return out

    def comparable_pairs(self) -> list[tuple[Subgroup, Subgroup]]:
        return [(self.nodes[i], self.nodes[j]) for i, j in sorted(self.containments) if i != j]

    def verify(self) -> None:
        n = len(self.nodes)
        c = self.containments
        for i in range(n):
            if (i, i) not in c or (0, i) not in c or (i, n - 1) not in c:
                raise VerificationError("lattice lacks reflexivity or a bottom/top element")
        for i, j in c:
            if i != j and (j, i) in c:
                raise VerificationError("containment is not antisymmetric")
        closure = {(i, i) for i in range(n)} | set(self.covers)
        changed = True
        while changed:
            changed = False
            for i, j in list(closure):
                for a, b in self.covers:
                    if a == j and (i, b) not in closure:
                        closure.add((i, b))
                        changed = True
        if closure != c:
            raise VerificationError("transitive closure of covers differs from containment")
        for i, j in self.covers:
            idx = self.nodes[j].order // self.nodes[i].order
            if _prime_power(idx) != (idx, 1):
                raise VerificationError(f"cover with non-prime index {idx}")

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "subgroups": [
                {
                    "id": self.ids[i],
                    "order": s.order,
                    "cyclic": s.is_cyclic,
                    "elements": s.to_json(),
                }
                for i, s in enumerate(self.nodes)
            ],
            "covers": [[self.ids[i], self.ids[j]] for i, j in self.covers],
        }


def build_lattice(group: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> SubgroupLattice:
    return SubgroupLattice(group, max_order)
