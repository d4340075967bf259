"""Root-system combinatorics for the simple types, and dimension arithmetic.

Roots are stored as integer coefficient vectors over the simple basis, so
everything here is exact integer counting; no real coordinates appear.
Node numbering follows the standard Bourbaki convention (see README for
the diagrams):

    A_n   1 - 2 - ... - n
    B_n   1 - 2 - ... - (n-1) => n          (n is the short root)
    C_n   1 - 2 - ... - (n-1) <= n          (n is the long root)
    D_n   1 - ... - (n-2) with branches (n-1), n
    E_n   1 - 3 - 4 - 5 - 6 [- 7 [- 8]] with 2 attached to 4
    F_4   1 - 2 => 3 - 4
    G_2   1 <<= 2                            (1 is the short root)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


class InvalidTypeError(ValueError):
    """Raised for a (family, rank) pair that is not a simple type."""


class LabelError(ValueError):
    """Raised when a subgroup label cannot be resolved."""


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}

#: Classical count of positive roots per type.
POSITIVE_ROOT_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


def validate_type(family: str, rank: int) -> None:
    if family not in _VALID_RANKS or not isinstance(rank, int) or not _VALID_RANKS[family](rank):
        raise InvalidTypeError(f"not a simple type: {family}{rank}")


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix A with A[i][j] = <alpha_j, alpha_i^vee> (0-indexed)."""
    validate_type(family, rank)
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if family in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if family == "B" and rank >= 2:
            a[rank - 1][rank - 2] = -2  # row of the short root
        if family == "C" and rank >= 2:
            a[rank - 2][rank - 1] = -2
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif family == "F":
        bond(0, 1)
        bond(1, 2)
        bond(2, 3)
        a[2][1] = -2  # row of the short root alpha_3
    elif family == "G":
        a[0][1] = -3  # row of the short root alpha_1
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class RootSystem:
    """A simple root system with enumerated positive roots.

    ``positive_roots`` holds coefficient vectors over the simple basis in
    lexicographic order; simple roots are the coefficient unit vectors.
    """

    family: str
    rank: int
    positive_roots: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Enumerate the positive roots from the Cartan matrix by the standard
    closure algorithm: grow height layers using root-string lengths."""
    validate_type(family, rank)
    cartan = cartan_matrix(family, rank)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots: set[tuple[int, ...]] = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                cand = list(beta)
                cand[i] += 1
                cand = tuple(cand)
                if cand in roots:
                    continue
                # alpha_i-string through beta: p - q = <beta, alpha_i^vee>
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if down[i] < 0 or tuple(down) not in roots:
                        break
                    p += 1
                pairing = sum(beta[j] * cartan[i][j] for j in range(rank))
                if p - pairing >= 1:
                    roots.add(cand)
                    nxt.append(cand)
        layer = nxt
    ordered = tuple(sorted(roots))
    expected = POSITIVE_ROOT_COUNTS[family](rank)
    if len(ordered) != expected:
        raise RuntimeError(
            f"closure produced {len(ordered)} positive roots for {family}{rank}, expected {expected}"
        )
    return RootSystem(family=family, rank=rank, positive_roots=ordered, cartan=cartan)


def dim_group(rs: RootSystem) -> int:
    """Dimension of the adjoint group: 2 * #positive roots + rank."""
    return 2 * len(rs.positive_roots) + rs.rank


@dataclass(frozen=True)
class ParabolicDescriptor:
    """Maximal parabolic of ``ambient`` obtained by deleting one node."""

    ambient: RootSystem
    deleted_node: int  # 1-based Bourbaki index

    def __post_init__(self):
        if not 1 <= self.deleted_node <= self.ambient.rank:
            raise InvalidTypeError(
                f"node {self.deleted_node} out of range for {self.ambient.name}"
            )


def levi_positive_roots(p: ParabolicDescriptor) -> tuple[tuple[int, ...], ...]:
    """Positive roots of the Levi subsystem: those not supported on the
    deleted node."""
    i = p.deleted_node - 1
    return tuple(r for r in p.ambient.positive_roots if r[i] == 0)


def parabolic_quotient_dim(p: ParabolicDescriptor) -> int:
    """dim of the flag variety G/P = #Phi^+(G) - #Phi^+(Levi)."""
    return len(p.ambient.positive_roots) - len(levi_positive_roots(p))


# ---------------------------------------------------------------------------
# Subgroup labels

_FACTOR_RE = re.compile(r"(~?)([A-G])(\d+)(?:\^(\d+))?|T(\d+)")


def _canonical_label(label: str) -> str:
    s = label.replace(" ", "").replace("Ã", "~").replace("̃", "~")
    # component-group suffixes like ".2" name N(X)/X, not X itself
    s = re.sub(r"\.\d+$", "", s)
    return s


def parse_subsystem_label(label: str) -> tuple[list[tuple[str, int]], int]:
    """Parse a product-of-simple-types label like ``A1E7``, ``A4^2``,
    ``D5T1`` or ``A2~A2`` into (simple factors, torus rank).

    Tilde factors (short-root subsystems) have the same rank and dimension
    as their untilded type, so the tilde is dropped here.
    """
    s = _canonical_label(label)
    factors: list[tuple[str, int]] = []
    torus = 0
    pos = 0
    for m in _FACTOR_RE.finditer(s):
        if m.start() != pos:
            raise LabelError(f"unresolvable label {label!r}")
        pos = m.end()
        if m.group(5) is not None:
            torus += int(m.group(5))
            continue
        fam, rank = m.group(2), int(m.group(3))
        mult = int(m.group(4)) if m.group(4) else 1
        validate_type(fam, rank)
        factors.extend([(fam, rank)] * mult)
    if pos != len(s) or (not factors and torus == 0):
        raise LabelError(f"unresolvable label {label!r}")
    return factors, torus


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A (possibly reducible) subsystem subgroup plus torus factors."""

    label: str
    rank: int
    dimension: int
    component_group_order: int


def subgroup_dim(label: str) -> int:
    """Dimension of the subsystem subgroup named by ``label``."""
    factors, torus = parse_subsystem_label(label)
    d = torus
    for fam, rank in factors:
        d += dim_group(build_root_system(fam, rank))
    return d


def subgroup_rank(label: str) -> int:
    factors, torus = parse_subsystem_label(label)
    return torus + sum(rank for _, rank in factors)


#: N_G(X)/X orders for the reductive maximal subgroups of the exceptional
#: groups, keyed by (ambient group, canonical label).
COMPONENT_GROUP_ORDERS: dict[tuple[str, str], int] = {
    ("E8", "A1"): 1, ("E8", "B2"): 1, ("E8", "A1A2"): 2, ("E8", "A1G2^2"): 2,
    ("E8", "G2F4"): 1, ("E8", "D8"): 1, ("E8", "A1E7"): 1, ("E8", "A8"): 2,
    ("E8", "A2E6"): 2, ("E8", "A4^2"): 4, ("E8", "D4^2"): 12, ("E8", "A2^4"): 48,
    ("E8", "A1^8"): 432, ("E8", "T8"): 696729600,
    ("E7", "A1"): 1, ("E7", "A2"): 2, ("E7", "A1^2"): 1, ("E7", "A1G2"): 1,
    ("E7", "A1F4"): 1, ("E7", "G2C3"): 1, ("E7", "T1E6"): 2, ("E7", "A1D6"): 1,
    ("E7", "A7"): 2, ("E7", "A2A5"): 2, ("E7", "A1^3D4"): 6, ("E7", "A1^7"): 168,
    ("E7", "T7"): 2903040,
    ("E6", "A2"): 2, ("E6", "G2"): 1, ("E6", "C4"): 1, ("E6", "F4"): 1,
    ("E6", "A2G2"): 2, ("E6", "T1D5"): 1, ("E6", "T2D4"): 6, ("E6", "A1A5"): 1,
    ("E6", "A2^3"): 6, ("E6", "T6"): 51840,
    ("F4", "A1"): 1, ("F4", "G2"): 1, ("F4", "A1G2"): 1, ("F4", "A1C3"): 1,
    ("F4", "B4"): 1, ("F4", "C4"): 1, ("F4", "D4"): 6, ("F4", "~D4"): 6,
    ("F4", "A2~A2"): 2,
    ("G2", "A1"): 1, ("G2", "A1~A1"): 1, ("G2", "A2"): 2, ("G2", "~A2"): 2,
}

_LABEL_ALIASES = {
    "D5T1": "T1D5", "D4T2": "T2D4", "E6T1": "T1E6", "E7A1": "A1E7",
    "D6A1": "A1D6", "A5A1": "A1A5", "A5A2": "A2A5", "E6A2": "A2E6",
    "A4A4": "A4^2", "D4D4": "D4^2", "A1A1": "A1^2",
}


def canonical_subgroup_label(label: str) -> str:
    s = _canonical_label(label)
    return _LABEL_ALIASES.get(s, s)


def subgroup_descriptor(group: str, label: str) -> SubgroupDescriptor:
    """Descriptor for a subsystem subgroup of an exceptional group, with the
    normalizer component order filled in where tabulated."""
    canon = canonical_subgroup_label(label)
    order = COMPONENT_GROUP_ORDERS.get((group, canon), 1)
    return SubgroupDescriptor(
        label=canon,
        rank=subgroup_rank(canon),
        dimension=subgroup_dim(canon),
        component_group_order=order,
    )


# ---------------------------------------------------------------------------
# Parabolic quotient dimension table for the exceptional groups

EXCEPTIONAL_GROUPS = ("E8", "E7", "E6", "F4", "G2")


def _group_type(name: str) -> tuple[str, int]:
    m = re.fullmatch(r"([A-G])(\d+)", name)
    if not m:
        raise InvalidTypeError(f"bad group name {name!r}")
    fam, rank = m.group(1), int(m.group(2))
    validate_type(fam, rank)
    return fam, rank


def group_dim(name: str) -> int:
    fam, rank = _group_type(name)
    return dim_group(build_root_system(fam, rank))


def group_rank(name: str) -> int:
    return _group_type(name)[1]


def parabolic_table_rows() -> list[tuple[str, int, int]]:
    """(group, node, dim G/P_node) for every maximal parabolic of every
    exceptional group, computed from the root systems."""
    rows = []
    for g in EXCEPTIONAL_GROUPS:
        fam, rank = _group_type(g)
        rs = build_root_system(fam, rank)
        for node in range(1, rank + 1):
            rows.append((g, node, parabolic_quotient_dim(ParabolicDescriptor(rs, node))))
    return rows
