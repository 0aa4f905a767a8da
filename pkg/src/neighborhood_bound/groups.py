"""Finite groups as fully validated Cayley tables.

A group is stored as an order x order table with ``table[a][b]`` the index of
a*b.  Construction checks, in order of increasing cost: the table is a Latin
square, a two-sided identity exists, every element has a two-sided inverse,
and associativity holds for all order**3 triples (vectorized with numpy so the
1024-element ceiling stays affordable).  Each failure names the offending
cell, element, or triple.

Built-in families are available through a small spec grammar:

    "C<n>"   cyclic of order n, elements named "0".."n-1"
    "D<n>"   dihedral of order 2n: rotations "r0".."r{n-1}" and reflections
             "s0".."s{n-1}" with s{i} = s * r{i} and s * r{i} * s = r{-i}
    "S<n>"   symmetric on n <= 5 letters; elements in lexicographic order,
             named by one-line images of 1..n (e.g. "213"); a*b applies b first
    "Q8"     quaternions "1", "-1", "i", "-i", "j", "-j", "k", "-k"
    "AxB"    direct product, elements named as tuples of factor names

Subgroups are index sets validated for closure, with closure-of-generators
and full lattice enumeration (guarded at order 64) on top.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_BUILTIN_ORDER = 1024
MAX_SUBGROUP_LATTICE_ORDER = 64


class GroupError(Exception):
    """Base for group construction and parsing failures."""


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class MissingInverse(GroupError):
    pass


class ParseError(GroupError):
    pass


class TooLarge(GroupError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A validated finite group; build through group_from_table or builtin_group."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    element_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.order or len(self.element_names) != self.order:
            raise ValueError("table and name list must both have `order` entries")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def name(self, a: int) -> str:
        return self.element_names[a]

    @property
    def elements(self) -> range:
        return range(self.order)


def _check_latin(table: Sequence[Sequence[int]]) -> None:
    m = len(table)
    for r, row in enumerate(table):
        seen: dict[int, int] = {}
        for c, v in enumerate(row):
            if not 0 <= v < m:
                raise NotLatinSquare(f"cell ({r}, {c}) holds {v}, outside 0..{m - 1}")
            if v in seen:
                raise NotLatinSquare(
                    f"row {r} repeats element {v} at columns {seen[v]} and {c}"
                )
            seen[v] = c
    for c in range(m):
        seen = {}
        for r in range(m):
            v = table[r][c]
            if v in seen:
                raise NotLatinSquare(
                    f"column {c} repeats element {v} at rows {seen[v]} and {r}"
                )
            seen[v] = r


def _find_identity(table: Sequence[Sequence[int]]) -> int:
    m = len(table)
    for e in range(m):
        if all(table[e][b] == b for b in range(m)) and all(
            table[a][e] == a for a in range(m)
        ):
            return e
    raise NoIdentity("no element acts as a two-sided identity")


def _find_inverses(table: Sequence[Sequence[int]], e: int, names: Sequence[str]) -> list[int]:
    m = len(table)
    inverse = []
    for a in range(m):
        b = next(b for b in range(m) if table[a][b] == e)  # unique: row is a permutation
        if table[b][a] != e:
            raise MissingInverse(
                f"element {a} ({names[a]}): right inverse {b} ({names[b]}) "
                "is not a left inverse"
            )
        inverse.append(b)
    return inverse


def _check_associative(table: Sequence[Sequence[int]], names: Sequence[str]) -> None:
    # (a*b)*c vs a*(b*c) for all triples, in row chunks to bound memory.
    t = np.array(table, dtype=np.int32)
    m = len(table)
    chunk = max(1, (1 << 22) // max(1, m * m))
    for start in range(0, m, chunk):
        rows = t[start : start + chunk]
        left = t[rows, :]  # left[i, b, c] = (a*b)*c with a = start + i
        right = rows[:, t]  # right[i, b, c] = a*(b*c)
        if not np.array_equal(left, right):
            i, b, c = (int(x) for x in np.argwhere(left != right)[0])
            a = start + i
            raise NotAssociative(
                f"({names[a]}*{names[b]})*{names[c]} = {names[left[i][b][c]]} but "
                f"{names[a]}*({names[b]}*{names[c]}) = {names[right[i][b][c]]} "
                f"(indices {a}, {b}, {c})"
            )


def group_from_table(
    table: Sequence[Sequence[int]], names: Sequence[str] | None = None
) -> FiniteGroup:
    """Validate a Cayley table into a FiniteGroup.

    Checks run cheapest-first: shape, Latin square, identity, two-sided
    inverses, then the O(order**3) associativity scan.
    """
    m = len(table)
    if m == 0:
        raise ValueError("a group has at least one element")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for r, row in enumerate(rows):
        if len(row) != m:
            raise ValueError(f"table must be square: row {r} has {len(row)} entries, expected {m}")
    if names is None:
        names = [str(i) for i in range(m)]
    name_tuple = tuple(str(x) for x in names)
    if len(name_tuple) != m:
        raise ValueError(f"expected {m} element names, got {len(name_tuple)}")
    if len(set(name_tuple)) != m:
        raise ValueError("element names must be distinct")

    _check_latin(rows)
    e = _find_identity(rows)
    inverse = _find_inverses(rows, e, name_tuple)
    _check_associative(rows, name_tuple)
    return FiniteGroup(
        order=m,
        table=rows,
        identity=e,
        inverse=tuple(inverse),
        element_names=name_tuple,
    )


def is_abelian(g: FiniteGroup) -> bool:
    return all(
        g.table[a][b] == g.table[b][a] for a in range(g.order) for b in range(a + 1, g.order)
    )


# --- built-in families --------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"cyclic order must be at least 1, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_table(table, [str(i) for i in range(n)])


def dihedral_group(n: int) -> FiniteGroup:
    """Order 2n: indices 0..n-1 are r^i, indices n..2n-1 are s*r^i."""
    if n < 1:
        raise ParseError(f"dihedral parameter must be at least 1, got {n}")
    m = 2 * n
    table = [[0] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n  # r^i * r^j
            table[i][n + j] = n + (j - i) % n  # r^i * (s r^j) = s r^(j-i)
            table[n + i][j] = n + (i + j) % n  # (s r^i) * r^j = s r^(i+j)
            table[n + i][n + j] = (j - i) % n  # (s r^i) * (s r^j) = r^(j-i)
    names = [f"r{i}" for i in range(n)] + [f"s{i}" for i in range(n)]
    return group_from_table(table, names)


def quaternion_group() -> FiniteGroup:
    """Q8 with index 2*axis + (0 if positive else 1), axes ordered 1, i, j, k."""

    def mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        s1, a1 = x
        s2, a2 = y
        if a1 == 0:
            return (s1 * s2, a2)
        if a2 == 0:
            return (s1 * s2, a1)
        if a1 == a2:
            return (-s1 * s2, 0)
        sign = 1 if (a1, a2) in {(1, 2), (2, 3), (3, 1)} else -1
        return (s1 * s2 * sign, 6 - a1 - a2)

    units = [(s, a) for a in range(4) for s in (1, -1)]
    index = {u: i for i, u in enumerate(units)}
    table = [[index[mul(x, y)] for y in units] for x in units]
    axis_names = ["1", "i", "j", "k"]
    names = [axis_names[a] if s == 1 else "-" + axis_names[a] for s, a in units]
    return group_from_table(table, names)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n for n <= 5, elements in lexicographic one-line order; (a*b)(x) = a(b(x))."""
    if not 1 <= n <= 5:
        raise ParseError(f"symmetric groups are supported for 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(p[q[i] - 1] for i in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return group_from_table(table, names)


def product_group(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    """Direct product with componentwise multiplication; element names are
    tuples of the factor names."""
    if not factors:
        raise ValueError("product of zero groups is not supported")
    if len(factors) == 1:
        return factors[0]
    combos = list(itertools.product(*(range(f.order) for f in factors)))
    index = {c: i for i, c in enumerate(combos)}
    table = [
        [
            index[tuple(f.table[x[t]][y[t]] for t, f in enumerate(factors))]
            for y in combos
        ]
        for x in combos
    ]
    names = [
        "(" + ",".join(f.element_names[c[t]] for t, f in enumerate(factors)) + ")"
        for c in combos
    ]
    return group_from_table(table, names)


_ATOM_RE = re.compile(r"^([CDS])(\d+)$|^(Q)8$", re.IGNORECASE)


def _atom_order(atom: str) -> int:
    m = _ATOM_RE.match(atom)
    if m is None:
        raise ParseError(
            f"cannot parse group atom {atom!r}; expected C<n>, D<n>, S<n> (n <= 5), or Q8"
        )
    if m.group(3) is not None:
        return 8
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "C":
        if n < 1:
            raise ParseError(f"C<n> needs n >= 1, got {atom!r}")
        return n
    if kind == "D":
        if n < 1:
            raise ParseError(f"D<n> needs n >= 1, got {atom!r}")
        return 2 * n
    if not 1 <= n <= 5:
        raise ParseError(f"S<n> is supported for 1 <= n <= 5, got {atom!r}")
    import math

    return math.factorial(n)


def _build_atom(atom: str) -> FiniteGroup:
    m = _ATOM_RE.match(atom)
    assert m is not None  # callers run _atom_order first
    if m.group(3) is not None:
        return quaternion_group()
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "C":
        return cyclic_group(n)
    if kind == "D":
        return dihedral_group(n)
    return symmetric_group(n)


def builtin_group(spec: str) -> FiniteGroup:
    """Build a group from a name string ("C6", "D4", "S3", "Q8", "C2xC4", ...).

    Raises ParseError for anything outside the grammar and TooLarge when the
    resulting order would exceed 1024.
    """
    atoms = [a.strip() for a in re.split(r"[x]", spec.strip(), flags=re.IGNORECASE)]
    if any(not a for a in atoms):
        raise ParseError(f"cannot parse group spec {spec!r}")
    total = 1
    for atom in atoms:
        total *= _atom_order(atom)
    if total > MAX_BUILTIN_ORDER:
        raise TooLarge(
            f"group spec {spec!r} has order {total}, above the {MAX_BUILTIN_ORDER} ceiling"
        )
    return product_group([_build_atom(a) for a in atoms])


# --- element lookup from user text ---------------------------------------------


def _looks_like_one_line_perms(g: FiniteGroup) -> int:
    """Return n if element names are one-line images of 1..n, else 0."""
    first = g.element_names[g.identity]
    n = len(first)
    if first != "".join(str(i) for i in range(1, n + 1)):
        return 0
    universe = set(first)
    if all(len(nm) == n and set(nm) == universe for nm in g.element_names):
        return n
    return 0


def _parse_cycles(text: str, n: int) -> str:
    """Turn "(12)(345)"-style disjoint cycles over 1..n into a one-line name."""
    image = list(range(1, n + 1))
    body = text.strip()
    if body in ("()", "e"):
        return "".join(str(v) for v in image)
    parts = re.findall(r"\(([0-9]*)\)", body)
    if "".join(f"({p})" for p in parts) != body.replace(" ", ""):
        raise ParseError(f"cannot parse cycle notation {text!r}")
    seen: set[int] = set()
    for part in parts:
        digits = [int(ch) for ch in part]
        if len(digits) < 2:
            continue
        for d in digits:
            if not 1 <= d <= n:
                raise ParseError(f"cycle entry {d} outside 1..{n} in {text!r}")
            if d in seen:
                raise ParseError(f"cycles in {text!r} are not disjoint (repeat {d})")
            seen.add(d)
        for pos, d in enumerate(digits):
            image[d - 1] = digits[(pos + 1) % len(digits)]
    return "".join(str(v) for v in image)


def element_index_from_text(g: FiniteGroup, text: str) -> int:
    """Resolve user-facing element text to an index.

    Accepts the canonical element name, "e" for the identity, "a" for the
    element at index 1, cycle notation like "(12)" when the group's elements
    are named as one-line permutations, and a bare element index.
    """
    token = text.strip()
    if not token:
        raise ParseError("empty element name")
    try:
        return g.element_names.index(token)
    except ValueError:
        pass
    if token == "e":
        return g.identity
    if token == "a" and g.order >= 2:
        return 1
    if token.startswith("(") and "," not in token:
        n = _looks_like_one_line_perms(g)
        if n:
            one_line = _parse_cycles(token, n)
            try:
                return g.element_names.index(one_line)
            except ValueError:
                raise ParseError(
                    f"{text!r} names permutation {one_line!r}, which is not in this group"
                ) from None
    if token.isdigit():
        idx = int(token)
        if idx < g.order:
            return idx
    raise ParseError(f"unknown element {text!r} (names: {', '.join(g.element_names)})")


# --- subgroups ------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A validated subgroup, stored as a sorted tuple of element indices."""

    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        g = self.parent
        member = set(elems)
        if g.identity not in member:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if not 0 <= a < g.order:
                raise ValueError(f"element index {a} out of range")
            if g.inverse[a] not in member:
                raise ValueError(f"subgroup not closed under inverse at {g.name(a)}")
            for b in elems:
                if g.table[a][b] not in member:
                    raise ValueError(
                        f"subgroup not closed under product at {g.name(a)}*{g.name(b)}"
                    )

    @property
    def order(self) -> int:
        return len(self.elements)

    def names(self) -> list[str]:
        return [self.parent.element_names[a] for a in self.elements]


def subgroup_from_generators(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Close gens (plus the identity) under multiplication."""
    member = {g.identity}
    frontier = []
    for x in gens:
        x = int(x)
        if not 0 <= x < g.order:
            raise ValueError(f"generator index {x} out of range for order {g.order}")
        if x not in member:
            member.add(x)
            frontier.append(x)
    while frontier:
        new: list[int] = []
        for x in frontier:
            for y in tuple(member):
                for z in (g.table[x][y], g.table[y][x]):
                    if z not in member:
                        member.add(z)
                        new.append(z)
        frontier = new
    return Subgroup(g, tuple(sorted(member)))


def _closure_mask(g: FiniteGroup, mask: int, extra: int) -> int:
    """Bitmask closure of the subgroup `mask` together with element `extra`."""
    member = mask | (1 << extra)
    elems = [a for a in range(g.order) if (member >> a) & 1]
    frontier = [extra]
    while frontier:
        new: list[int] = []
        for x in frontier:
            for y in elems:
                for z in (g.table[x][y], g.table[y][x]):
                    if not (member >> z) & 1:
                        member |= 1 << z
                        new.append(z)
        elems.extend(new)
        frontier = new
    return member


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by closing known subgroups with one extra generator at a
    time starting from the trivial subgroup; sorted by size then elements."""
    if g.order > MAX_SUBGROUP_LATTICE_ORDER:
        raise TooLarge(
            f"subgroup enumeration is guarded at order {MAX_SUBGROUP_LATTICE_ORDER}; "
            f"this group has order {g.order}"
        )
    trivial = 1 << g.identity
    found = {trivial}
    queue = [trivial]
    while queue:
        mask = queue.pop()
        for x in range(g.order):
            if (mask >> x) & 1:
                continue
            grown = _closure_mask(g, mask, x)
            if grown not in found:
                found.add(grown)
                queue.append(grown)
    subgroups = [
        Subgroup(g, tuple(a for a in range(g.order) if (mask >> a) & 1)) for mask in found
    ]
    subgroups.sort(key=lambda s: (s.order, s.elements))
    return subgroups


# --- serialization --------------------------------------------------------------


def group_to_json_dict(g: FiniteGroup) -> dict:
    return {
        "order": g.order,
        "table": [list(row) for row in g.table],
        "names": list(g.element_names),
    }


def group_from_json_dict(obj: dict) -> FiniteGroup:
    if not isinstance(obj, dict):
        raise ParseError("group JSON must be an object")
    if "table" not in obj:
        raise ParseError('group JSON must carry a "table" key')
    table = obj["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError('"table" must be a 2D array of element indices')
    names = obj.get("names")
    if "order" in obj and int(obj["order"]) != len(table):
        raise ParseError(
            f'"order" is {obj["order"]} but the table has {len(table)} rows'
        )
    try:
        return group_from_table(table, names)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
