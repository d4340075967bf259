"""Closed-form base-size triples for every primitive action family.

The dispatcher returns a :class:`BaseTriple` of integer intervals for
(connected, exact, generic) base size.  Cases the theory leaves open are
returned as honest intervals with a clause tag; they are never collapsed
to a guess.  Actions that are equivalent to a subspace action are routed
through the subspace dispatcher so both descriptions return identical
triples.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from . import rootsys
from .classdata import InvolutionRecord, involution_record


class SpecValidationError(ValueError):
    """The action specification violates a precondition."""


class UnsupportedLabelError(ValueError):
    """A recognized maximal subgroup that is validated but out of scope."""


# ---------------------------------------------------------------------------
# Action specifications

CLASSICAL_FAMILIES = ("SL", "Sp", "SO")
EXCEPTIONAL_FAMILIES = ("E6", "E7", "E8", "F4", "G2")

SUBSPACE_FLAVORS = (
    "linear",            # SL on d-subspaces (no form)
    "nondeg",            # form restricts nondegenerately
    "totally_singular",  # form vanishes identically
    "nonsingular_1space",  # orthogonal 1-spaces off the quadric, char 2
    "On_in_Spn",         # the full orthogonal group inside Sp_n, char 2
)

CHAR_CASES = ("0", "2", "3", "odd", "not235", "any")


@dataclass(frozen=True)
class Subspace:
    d: int
    flavor: str = "linear"


@dataclass(frozen=True)
class NonSubspace:
    label: str


@dataclass(frozen=True)
class Parabolic:
    node: int


@dataclass(frozen=True)
class TorusNormalizer:
    pass


Subgroup = Union[Subspace, NonSubspace, Parabolic, TorusNormalizer]


@dataclass(frozen=True)
class ActionSpec:
    """A primitive action: group family, point-stabilizer descriptor, and
    the characteristic case the formulas should be read in."""

    family: str
    subgroup: Subgroup
    n: int | None = None  # dimension of the natural module, classical only
    char: str = "any"

    def __post_init__(self):
        if self.family not in CLASSICAL_FAMILIES + EXCEPTIONAL_FAMILIES:
            raise SpecValidationError(f"unknown family {self.family!r}")
        if self.char not in CHAR_CASES:
            raise SpecValidationError(f"unknown characteristic case {self.char!r}")
        if self.family in CLASSICAL_FAMILIES:
            if self.n is None or self.n < 2:
                raise SpecValidationError("classical families need n >= 2")
        elif self.n is not None:
            raise SpecValidationError("exceptional families take no n")
        if isinstance(self.subgroup, Subspace) and self.subgroup.flavor not in SUBSPACE_FLAVORS:
            raise SpecValidationError(f"unknown flavor {self.subgroup.flavor!r}")


def _char_is_two(spec: ActionSpec) -> bool | None:
    """True/False when the characteristic case decides p = 2, else None."""
    if spec.char == "2":
        return True
    if spec.char in ("0", "3", "odd", "not235"):
        return False
    return None


def _char_is_three(spec: ActionSpec) -> bool | None:
    if spec.char == "3":
        return True
    if spec.char in ("0", "2", "not235"):
        return False
    return None


def _require_two_known(spec: ActionSpec, why: str) -> bool:
    two = _char_is_two(spec)
    if two is None:
        raise SpecValidationError(
            f"{why}: the value depends on whether p = 2; give a characteristic case"
        )
    return two


def spec_from_json(obj: dict) -> ActionSpec:
    """Build an ActionSpec from its JSON form (the CLI wire format)."""
    sub = obj.get("subgroup")
    if sub == "torus_normalizer":
        subgroup: Subgroup = TorusNormalizer()
    elif isinstance(sub, dict) and "subspace" in sub:
        s = sub["subspace"]
        subgroup = Subspace(d=int(s["d"]), flavor=s.get("flavor", "linear"))
    elif isinstance(sub, dict) and "nonsubspace" in sub:
        subgroup = NonSubspace(label=str(sub["nonsubspace"]["label"]))
    elif isinstance(sub, dict) and "parabolic" in sub:
        subgroup = Parabolic(node=int(sub["parabolic"]["i"]))
    else:
        raise SpecValidationError(f"unrecognized subgroup spec {sub!r}")
    return ActionSpec(
        family=obj["family"],
        n=obj.get("n"),
        subgroup=subgroup,
        char=str(obj.get("char", "any")),
    )


# ---------------------------------------------------------------------------
# Triples

@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise SpecValidationError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def render(self) -> str:
        return str(self.lo) if self.is_point else f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class BaseTriple:
    """Values or intervals for the (connected, exact, generic) base sizes."""

    b0: Interval
    b: Interval
    b1: Interval
    case_tag: str
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not (self.b0.lo <= self.b.lo <= self.b1.lo and self.b0.hi <= self.b.hi <= self.b1.hi):
            raise SpecValidationError(f"triple not ordered: {self}")
        if self.b0.is_point and self.b1.is_point and self.b1.hi > self.b0.hi + 1:
            raise SpecValidationError(f"generic base exceeds connected base + 1: {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        if not (self.b0.is_point and self.b.is_point and self.b1.is_point):
            raise SpecValidationError("triple is an interval, not a point")
        return (self.b0.lo, self.b.lo, self.b1.lo)

    def to_json(self) -> dict:
        out = {
            "b0": [self.b0.lo, self.b0.hi],
            "b": [self.b.lo, self.b.hi],
            "b1": [self.b1.lo, self.b1.hi],
            "case_tag": self.case_tag,
        }
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def _pt(v: int) -> Interval:
    return Interval(v, v)


def _point_triple(v: int, tag: str, warnings: tuple[str, ...] = ()) -> BaseTriple:
    return BaseTriple(_pt(v), _pt(v), _pt(v), tag, warnings)


def _triple(b0, b, b1, tag: str, warnings: tuple[str, ...] = ()) -> BaseTriple:
    mk = lambda x: _pt(x) if isinstance(x, int) else Interval(*x)
    return BaseTriple(mk(b0), mk(b), mk(b1), tag, warnings)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ---------------------------------------------------------------------------
# Subspace actions

def subspace_triple(spec: ActionSpec) -> BaseTriple:
    """Triple for a classical group acting on an orbit of subspaces of its
    natural module (or an action equivalent to one)."""
    if spec.family not in CLASSICAL_FAMILIES:
        raise SpecValidationError("subspace actions are classical")
    if not isinstance(spec.subgroup, Subspace):
        raise SpecValidationError("subspace_triple needs a Subspace subgroup")
    n, d, flavor = spec.n, spec.subgroup.d, spec.subgroup.flavor

    if spec.family == "SL":
        return _sl_subspace(spec, n, d, flavor)
    if spec.family == "Sp":
        return _sp_subspace(spec, n, d, flavor)
    return _so_subspace(spec, n, d, flavor)


def _sl_subspace(spec: ActionSpec, n: int, d: int, flavor: str) -> BaseTriple:
    if flavor != "linear":
        raise SpecValidationError("SL subspace actions carry no form; use flavor 'linear'")
    if not (1 <= d and 2 * d <= n):
        raise SpecValidationError(f"need 1 <= d <= n/2, got d={d}, n={n}")
    k = _ceil_div(n, d)
    if n % d == 0:
        if d == 1:
            eps, case = 1, "SL.d=1"
        elif 2 * d == n:
            eps, case = 3, "SL.d=n/2"
        else:
            eps, case = 2, "SL.1<d<n/2"
        return _point_triple(k + eps, f"subspace:{case}")
    hi = k + 2 + (1 if k == 3 else 0)
    # the orbit-dimension bound can beat k+1; both ends stay certified
    lo = max(k + 1, _ceil_div(n * n - 1, d * (n - d)))
    return _triple(
        (lo, hi), (lo, hi), (lo, hi),
        "subspace:SL.d-not-dividing-n (open interval; the numeric verifier pins instances)",
    )


def _sp_subspace(spec: ActionSpec, n: int, d: int, flavor: str) -> BaseTriple:
    if n % 2 != 0 or n < 4:
        raise SpecValidationError("Sp needs even n >= 4")
    if flavor == "On_in_Spn":
        if not _require_two_known(spec, "orthogonal subgroup of Sp is maximal only for p = 2"):
            raise SpecValidationError("orthogonal subgroup of Sp requires p = 2")
        return _triple(n, n, n + 1, "subspace:Sp.full-orthogonal-stabilizer.p2")
    if flavor == "nondeg":
        if d % 2 != 0 or not 2 <= d <= n // 2:
            raise SpecValidationError("nondegenerate subspaces of Sp need even 2 <= d <= n/2")
        if 2 * d == n:
            # stabilizer of one half is index 2 in the pair stabilizer:
            # the action is imprimitive; report the pair-action value
            v = 4 if n == 4 else 3
            return _point_triple(
                v, "subspace:Sp.nondeg-halfdim(pair action)",
                warnings=("imprimitive: routed to the complementary-pair action",),
            )
        k = _ceil_div(n, d)
        if (n, d) == (6, 2):
            return _point_triple(4, "subspace:Sp.nondeg.n6d2")
        return _point_triple(k, "subspace:Sp.nondeg.generic-k")
    if flavor == "totally_singular":
        if not 1 <= d <= n // 2:
            raise SpecValidationError(f"need 1 <= d <= n/2, got d={d}, n={n}")
        if 2 * d == n:
            two = _require_two_known(spec, "Sp totally singular half-dimension")
            b1 = 4 if two else 5
            return _triple(4, 4, b1, "subspace:Sp.ts-halfdim")
        k = _ceil_div(n, d)
        if k == 3:
            return _point_triple(3 + (1 if d == 2 else 0), "subspace:Sp.ts.k3")
        return _point_triple(k, "subspace:Sp.ts.generic-k")
    raise SpecValidationError(f"flavor {flavor!r} invalid for Sp")


def _so_subspace(spec: ActionSpec, n: int, d: int, flavor: str) -> BaseTriple:
    if n < 5:
        raise SpecValidationError("SO subspace actions are stated for n >= 5")
    two = _char_is_two(spec)
    if flavor == "nonsingular_1space":
        # for odd n this is the defining-characteristic-2 model of the
        # odd orthogonal group: the symplectic group on a hyperplane
        if two is not True:
            raise SpecValidationError("nonsingular 1-spaces only arise for p = 2")
        if n % 2 == 1:
            return _triple(n - 1, n - 1, n, "subspace:SO.ns1.odd-n(p2)")
        return _point_triple(n - 1, "subspace:SO.ns1.even-n(p2)")
    if n % 2 == 1 and two is not False:
        raise SpecValidationError("SO with odd n requires p != 2")
    if n < 7 and d != 1:
        raise SpecValidationError("SO subspace actions below n = 7 are supported for d = 1 only")
    if flavor == "nondeg":
        if not 1 <= d <= n // 2:
            raise SpecValidationError(f"need 1 <= d <= n/2, got d={d}, n={n}")
        if two is True and d != 1 and d % 2 != 0:
            raise SpecValidationError("for p = 2 a nondegenerate subspace has d = 1 or d even")
        if 2 * d == n:
            if two is True and n % 4 != 0:
                raise SpecValidationError("half-dimension nondegenerate pairs need n = 0 mod 4 when p = 2")
            return _triple(
                2, 2, 3, "subspace:SO.nondeg-halfdim(pair action)",
                warnings=("imprimitive: routed to the complementary-pair action",),
            )
        k = _ceil_div(n, d)
        if n == (k - 1) * d + 1:
            b1 = k - 1 if n % 2 == 0 else k
            return _triple(k - 1, k - 1, b1, "subspace:SO.nondeg.hyperplane-case")
        return _point_triple(k, "subspace:SO.nondeg.generic-k")
    if flavor == "totally_singular":
        if not 1 <= d <= n // 2:
            raise SpecValidationError(f"need 1 <= d <= n/2, got d={d}, n={n}")
        if d == 1:
            b1 = n - 1 if n % 2 == 0 else n
            return _triple(n - 1, n - 1, b1, "subspace:SO.ts.d1")
        if 2 * d == n:
            if n == 10:
                return _triple(5, (5, 6), (5, 6), "subspace:SO.ts-halfdim.n10 (open)")
            c = {8: 7, 12: 6}.get(n, 5)
            return _point_triple(c, "subspace:SO.ts-halfdim.c(n)")
        k = _ceil_div(n, d)
        if k == 3:
            return _point_triple(4 - (1 if n == 3 * d else 0), "subspace:SO.ts.k3")
        if n == (k - 1) * d + 1:
            b1 = k - 1 if n % 2 == 0 else k
            return _triple(k - 1, k - 1, b1, "subspace:SO.ts.hyperplane-case")
        return _point_triple(k, "subspace:SO.ts.generic-k")
    raise SpecValidationError(f"flavor {flavor!r} invalid for SO (use nondeg/totally_singular/nonsingular_1space)")


# ---------------------------------------------------------------------------
# Non-subspace actions

_WREATH_RE = re.compile(r"^(GL|Sp|SO|O)_?\{?(?:n(?:/(\d+))?|(\d+))\}?wrS_?(\d+)$")
_PLAIN_RE = re.compile(r"^(GL|Sp|SO|O)_?\{?(?:n(?:/(\d+))?|(\d+))\}?$")
_TENSOR_RE = re.compile(r"^Sp_?4[x⊗]Sp_?2$")


def _norm_label(label: str) -> str:
    return label.replace(" ", "").replace("Ã", "~")


def _resolve_size(n: int, divisor: str | None, absolute: str | None, label: str) -> int:
    if absolute is not None:
        return int(absolute)
    if divisor is None:
        return n
    t = int(divisor)
    if n % t != 0:
        raise SpecValidationError(f"label {label!r} needs {t} | n, got n={n}")
    return n // t


def nonsubspace_triple(spec: ActionSpec) -> BaseTriple:
    """Triple for a primitive non-subspace action, classical or exceptional.

    Labels listed as equivalent to subspace actions are dispatched through
    :func:`subspace_triple`, so both routes agree by construction.
    """
    if not isinstance(spec.subgroup, NonSubspace):
        raise SpecValidationError("nonsubspace_triple needs a NonSubspace subgroup")
    if spec.family in EXCEPTIONAL_FAMILIES:
        return _exceptional_nonparabolic(spec)
    return _classical_nonsubspace(spec)


def _classical_nonsubspace(spec: ActionSpec) -> BaseTriple:
    n = spec.n
    label = _norm_label(spec.subgroup.label)
    fam = spec.family
    two = _char_is_two(spec)

    if _TENSOR_RE.match(label):
        if fam != "SO" or n != 8:
            raise SpecValidationError("the Sp4 (x) Sp2 tensor stabilizer lives in SO8")
        if two is True:
            raise SpecValidationError("Sp4 (x) Sp2 < SO8 requires p != 2")
        t = subspace_triple(ActionSpec("SO", Subspace(3, "nondeg"), n=8, char="odd"))
        return _retag(t, "nonsubspace:SO8.tensor->nondeg-3spaces")

    m = _WREATH_RE.match(label)
    if m:
        base, divisor, absolute, t = m.group(1), m.group(2), m.group(3), int(m.group(4))
        size = _resolve_size(n, divisor, absolute, label)
        if size * t != n:
            raise SpecValidationError(f"label {label!r} does not decompose n={n}")
        return _classical_wreath(spec, fam, n, base, size, t)

    m = _PLAIN_RE.match(label)
    if m:
        base, divisor, absolute = m.group(1), m.group(2), m.group(3)
        size = _resolve_size(n, divisor, absolute, label)
        return _classical_irreducible(spec, fam, n, base, size)

    if label == "G2":
        if fam == "SO" and n == 7:
            if two is True:
                raise SpecValidationError("G2 < SO7 requires p != 2")
            return _point_triple(4, "nonsubspace:SO7.G2")
        if fam == "Sp" and n == 6:
            if two is False:
                raise SpecValidationError("G2 < Sp6 requires p = 2")
            return _point_triple(4, "nonsubspace:Sp6.G2(p2)")
        raise SpecValidationError("G2 is maximal only in SO7 (p != 2) or Sp6 (p = 2)")

    raise SpecValidationError(f"unknown classical subgroup label {label!r}")


def _classical_wreath(spec, fam, n, base, size, t) -> BaseTriple:
    two = _char_is_two(spec)
    if fam == "SL" and base == "GL":
        if t == 2:
            if n == 2:
                return _triple(2, 2, 3, "nonsubspace:SL2.torus-normalizer")
            return _point_triple(3, "nonsubspace:SL.GLhalf-wr-S2")
        return _point_triple(2, "nonsubspace:SL.GL-wr-St(t>=3)")
    if fam == "Sp" and base == "Sp":
        if size % 2 != 0:
            raise SpecValidationError(f"Sp_{size} factor needs even size")
        if t == 2:
            if n == 4:
                # both characteristics land on the same 1-space value
                if two is True:
                    sub = ActionSpec("SO", Subspace(1, "nonsingular_1space"), n=5, char="2")
                else:
                    sub = ActionSpec("SO", Subspace(1, "nondeg"), n=5, char="odd")
                return _retag(subspace_triple(sub), "nonsubspace:Sp4.Sp2-wr-S2->SO5-1spaces")
            return _point_triple(3, "nonsubspace:Sp.Sphalf-wr-S2")
        if (n, t) == (6, 3):
            return _point_triple(3, "nonsubspace:Sp6.Sp2-wr-S3")
        return _point_triple(2, "nonsubspace:Sp.Sp-wr-St(t>=4 or n>6)")
    if fam == "SO" and base == "O":
        if t == 2:
            if two is False:
                return _triple(2, 2, 3, "nonsubspace:SO.Ohalf-wr-S2(p-odd)")
            if two is True:
                if n % 4 != 0 or n < 8:
                    raise SpecValidationError("O_{n/2} wr S2 < SO_n with p = 2 needs n = 0 mod 4, n >= 8")
                return _triple(2, (2, 3), 3, "nonsubspace:SO.Ohalf-wr-S2(p2, open middle)")
            raise SpecValidationError("O_{n/2} wr S2: give a characteristic case")
        return _point_triple(2, "nonsubspace:SO.O-wr-St(t>=3)")
    raise SpecValidationError(f"wreath label {base} wr S{t} invalid inside {fam}_n")


def _classical_irreducible(spec, fam, n, base, size) -> BaseTriple:
    two = _char_is_two(spec)
    if fam == "SL":
        if base == "Sp":
            if size != n or n % 2 != 0 or n < 4:
                raise SpecValidationError("Sp_n < SL_n needs even n >= 4")
            if n == 4:
                # the same value in every characteristic
                if two is True:
                    sub = ActionSpec("SO", Subspace(1, "nonsingular_1space"), n=6, char="2")
                else:
                    sub = ActionSpec("SO", Subspace(1, "nondeg"), n=6, char="odd")
                return _retag(subspace_triple(sub), "nonsubspace:SL4.Sp4->SO6-1spaces")
            return _point_triple(4 if n == 6 else 3, "nonsubspace:SL.Sp_n")
        if base == "SO":
            if size != n or n < 3:
                raise SpecValidationError("SO_n < SL_n needs the full natural dimension")
            if two is True:
                raise SpecValidationError("SO_n < SL_n is maximal only for p != 2")
            return _triple(2, 2, 3, "nonsubspace:SL.SO_n")
    if fam == "Sp" and base == "GL":
        if 2 * size != n:
            raise SpecValidationError("the Levi-type GL factor of Sp_n has size n/2")
        if two is True:
            raise SpecValidationError("GL_{n/2} < Sp_n is maximal only for p != 2")
        return _triple(2, 2, 3, "nonsubspace:Sp.GLhalf")
    if fam == "SO" and base == "GL":
        if 2 * size != n:
            raise SpecValidationError("the GL factor of SO_n has size n/2")
        if n == 8:
            t = subspace_triple(ActionSpec("SO", Subspace(2, "nondeg"), n=8, char=spec.char))
            return _retag(t, "nonsubspace:SO8.GL4->nondeg-2spaces")
        if n < 10 or n % 2 != 0:
            raise SpecValidationError("GL_{n/2} < SO_n needs even n >= 8")
        return _point_triple(3, "nonsubspace:SO.GLhalf")
    if fam == "SO" and base == "SO" and n == 8 and size == 7:
        if two is True:
            raise SpecValidationError("irreducible SO7 < SO8 requires p != 2")
        t = subspace_triple(ActionSpec("SO", Subspace(1, "nondeg"), n=8, char="odd"))
        return _retag(t, "nonsubspace:SO8.SO7-irreducible->nondeg-1spaces")
    if fam == "SO" and base == "Sp" and n == 8 and size == 6:
        if two is False:
            raise SpecValidationError("irreducible Sp6 < SO8 requires p = 2")
        t = subspace_triple(ActionSpec("SO", Subspace(1, "nonsingular_1space"), n=8, char="2"))
        return _retag(t, "nonsubspace:SO8.Sp6-irreducible->ns-1spaces")
    if fam == "Sp" and base == "O":
        if size != n:
            raise SpecValidationError("the orthogonal subgroup of Sp_n acts on the full module")
        if two is False:
            raise SpecValidationError("O_n < Sp_n is maximal only for p = 2")
        spec2 = ActionSpec("Sp", Subspace(1, "On_in_Spn"), n=n, char="2")
        return _retag(subspace_triple(spec2), "nonsubspace:Sp.On->hyperplane-action")
    raise SpecValidationError(f"label {spec.subgroup.label!r} invalid inside {fam}_{n}")


def _retag(t: BaseTriple, tag: str) -> BaseTriple:
    return BaseTriple(t.b0, t.b, t.b1, f"{tag};{t.case_tag}",
                      t.warnings + ("subspace-equivalent action",))


# Exceptional groups: reductive maximal subgroups and their triples.
# Entries absent from the special tables give the default (2,2,2).
_EXC_TABLE_B: dict[tuple[str, str], int] = {
    ("E8", "A1E7"): 3,
    ("E7", "A1D6"): 3,
    ("E7", "T1E6"): 3,
    ("E6", "F4"): 4,
    ("E6", "T1D5"): 3,
    ("F4", "B4"): 4,
    ("F4", "D4"): 3,
    ("G2", "A2"): 3,
}

# labels valid per group, with an optional characteristic requirement
_EXC_LABELS: dict[str, dict[str, str | None]] = {
    "E8": {
        "A1": None, "B2": None, "A1A2": None, "A1G2^2": "p!=2", "G2F4": None,
        "D8": None, "A1E7": None, "A8": None, "A2E6": None, "A4^2": None,
        "D4^2": None, "A2^4": None, "A1^8": None, "T8": None,
    },
    "E7": {
        "A1": None, "A2": None, "A1^2": None, "A1G2": None, "A1F4": None,
        "G2C3": None, "T1E6": None, "A1D6": None, "A7": None, "A2A5": None,
        "A1^3D4": None, "A1^7": None, "T7": None,
    },
    "E6": {
        "A2": None, "G2": None, "C4": "p!=2", "F4": None, "A2G2": None,
        "T1D5": None, "T2D4": None, "A1A5": None, "A2^3": None, "T6": None,
    },
    "F4": {
        "A1": None, "G2": "p=7", "A1G2": "p!=2", "A1C3": "p!=2", "B4": None,
        "C4": "p=2", "D4": None, "~D4": "p=2", "A2~A2": None,
    },
    "G2": {"A1": None, "A1~A1": None, "A2": None, "~A2": "p=3"},
}

_OUT_OF_SCOPE_LABELS = {("E7", "(2^2xD4).S3"), ("E8", "A1xS5")}


def _check_char_requirement(spec: ActionSpec, req: str | None, label: str) -> None:
    if req is None:
        return
    two, three = _char_is_two(spec), _char_is_three(spec)
    if req == "p!=2" and two is True:
        raise SpecValidationError(f"{label} < {spec.family} requires p != 2")
    if req == "p=2" and two is False:
        raise SpecValidationError(f"{label} < {spec.family} requires p = 2")
    if req == "p=3" and three is False:
        raise SpecValidationError(f"{label} < {spec.family} requires p = 3")
    # "p=7" is finer than the characteristic cases we model; accept.


def _exceptional_nonparabolic(spec: ActionSpec) -> BaseTriple:
    g = spec.family
    label = rootsys.canonical_subgroup_label(spec.subgroup.label)
    if (g, _norm_label(spec.subgroup.label)) in _OUT_OF_SCOPE_LABELS:
        raise UnsupportedLabelError(
            f"{spec.subgroup.label} < {g}: validated but outside the formula tables"
        )
    if label.startswith("T") and label[1:].isdigit() and int(label[1:]) == rootsys.group_rank(g):
        return torus_normalizer_triple(ActionSpec(g, TorusNormalizer(), char=spec.char))
    labels = _EXC_LABELS[g]
    if label not in labels:
        raise SpecValidationError(f"unknown maximal subgroup label {label!r} for {g}")
    _check_char_requirement(spec, labels[label], label)
    two = _char_is_two(spec)

    if (g, label) in _EXC_TABLE_B:
        return _point_triple(_EXC_TABLE_B[(g, label)], f"nonsubspace:{g}.{label}")
    if g == "E6" and label == "A1A5":
        if two is None:
            raise SpecValidationError("E6 with A1A5: give a characteristic case")
        if two:
            return _triple(2, (2, 3), (2, 3), "nonsubspace:E6.A1A5(p2, open)")
        return _point_triple(3, "nonsubspace:E6.A1A5")
    if g == "F4" and label == "C4":
        return _point_triple(4, "nonsubspace:F4.C4(p2)")
    if g == "F4" and label == "~D4":
        return _point_triple(3, "nonsubspace:F4.~D4(p2)")
    if g == "G2" and label == "~A2":
        return _point_triple(3, "nonsubspace:G2.~A2(p3)")
    # involution-type centralizers with the (2,2,3) / open-p2 split
    if (g, label) in (("E8", "D8"), ("E7", "A7"), ("E6", "C4"), ("F4", "A1C3"), ("G2", "A1~A1")):
        if (g, label) == ("E6", "C4") or (g, label) == ("F4", "A1C3"):
            return _triple(2, 2, 3, f"nonsubspace:{g}.{label}(torus-inverting centralizer)")
        if two is None:
            raise SpecValidationError(f"{g} with {label}: give a characteristic case")
        if not two:
            return _triple(2, 2, 3, f"nonsubspace:{g}.{label}(torus-inverting centralizer)")
        if (g, label) == ("E8", "D8"):
            return _point_triple(2, "nonsubspace:E8.D8(p2)")
        return _triple(2, (2, 3), (2, 3), f"nonsubspace:{g}.{label}(p2, open)")
    return _point_triple(2, f"nonsubspace:{g}.{label}(generic)")


# ---------------------------------------------------------------------------
# Parabolic actions of the exceptional groups

#: (value, asterisk) per node; an asterisk widens the triple to [c-1, c].
PARABOLIC_TABLE: dict[str, tuple[tuple[int, bool], ...]] = {
    "E8": ((4, False), (3, False), (3, False), (3, False), (3, False), (3, False), (4, False), (5, False)),
    "E7": ((5, False), (4, False), (4, False), (3, False), (3, False), (4, False), (6, False)),
    "E6": ((6, False), (5, False), (4, False), (4, True), (4, False), (6, False)),
    "F4": ((5, True), (4, True), (4, True), (5, True)),
    "G2": ((4, True), (4, True)),
}


def parabolic_triple(group: str, node: int) -> BaseTriple:
    """Triple for an exceptional group acting on G/P_node."""
    if group not in PARABOLIC_TABLE:
        raise SpecValidationError(f"parabolic table covers exceptional groups only, not {group!r}")
    table = PARABOLIC_TABLE[group]
    if not 1 <= node <= len(table):
        raise SpecValidationError(f"{group} has no node {node}")
    c, star = table[node - 1]
    tag = f"parabolic:{group}.P{node}"
    if star:
        iv = (c - 1, c)
        return _triple(iv, iv, iv, tag + " (open)")
    return _point_triple(c, tag)


def parabolic_table_rows() -> list[tuple[str, int, str]]:
    rows = []
    for g, entries in PARABOLIC_TABLE.items():
        for node, (c, star) in enumerate(entries, start=1):
            rows.append((g, node, f"{c}*" if star else str(c)))
    return rows


# ---------------------------------------------------------------------------
# Involution centralizers and torus normalizers

@dataclass(frozen=True)
class InvolutionActionReport:
    record: InvolutionRecord
    triple: BaseTriple | None
    b0_lower_bound: int
    generic_pair_stabilizer_order: int | None


def involution_triple(family: str, rank: int, inverts_maximal_torus: bool = True) -> InvolutionActionReport:
    """Action of G on the centralizer of an involution, p != 2.

    For the torus-inverting class the triple is (2,2,3) and a generic pair
    of points has stabilizer of order 2^rank (the 2-torsion of a maximal
    torus).  Any other involution centralizer has connected base size at
    least 3; only the lower bound is reported for those.
    """
    rec = involution_record(family, rank)
    if not inverts_maximal_torus:
        return InvolutionActionReport(
            record=InvolutionRecord(rec.group, "(other class)", "inner", False),
            triple=None,
            b0_lower_bound=3,
            generic_pair_stabilizer_order=None,
        )
    triple = _triple(2, 2, 3, f"involution:{rec.group}.C({rec.centralizer_type})")
    return InvolutionActionReport(
        record=rec,
        triple=triple,
        b0_lower_bound=2,
        generic_pair_stabilizer_order=2 ** rank,
    )


def torus_normalizer_triple(spec: ActionSpec) -> BaseTriple:
    """Action on cosets of a maximal-torus normalizer: generically base 2,
    except the rank-one group where a generic pair has stabilizer of
    order 2."""
    if not isinstance(spec.subgroup, TorusNormalizer):
        raise SpecValidationError("torus_normalizer_triple needs a TorusNormalizer subgroup")
    if spec.family == "SL" and spec.n == 2:
        return _triple(2, 2, 3, "torus-normalizer:rank1 (generic pair stabilizer order 2)")
    return _point_triple(2, f"torus-normalizer:{spec.family}")


def torus_normalizer_generic_pair_order(family: str, n: int | None = None) -> int:
    return 2 if (family == "SL" and n == 2) else 1


# ---------------------------------------------------------------------------
# Top-level dispatch and the b > 2 predicate

def base_triple(spec: ActionSpec) -> BaseTriple:
    """Dispatch on the subgroup descriptor."""
    if isinstance(spec.subgroup, Subspace):
        return subspace_triple(spec)
    if isinstance(spec.subgroup, Parabolic):
        if spec.family in EXCEPTIONAL_FAMILIES:
            return parabolic_triple(spec.family, spec.subgroup.node)
        raise SpecValidationError(
            "classical parabolic actions are subspace actions; use a Subspace subgroup"
        )
    if isinstance(spec.subgroup, TorusNormalizer):
        return torus_normalizer_triple(spec)
    return nonsubspace_triple(spec)


class ExcludedCaseError(ValueError):
    """The p = 2 variant of the b > 2 test excludes this pair."""


def dimhalf_predicate(spec: ActionSpec, dim_G: int, dim_H: int) -> bool:
    """True exactly when the exact base size exceeds 2 (p != 2): the
    stabilizer is large (dim H > dim G / 2) or the pair is one of the four
    small-stabilizer exceptions."""
    if _char_is_two(spec) is not False:
        raise SpecValidationError(
            "this test is stated for p != 2; use dimhalf_predicate_p2 for p = 2"
        )
    return _dimhalf_clauses(spec, dim_G, dim_H, include_e6_a1a5=True)


def dimhalf_predicate_p2(spec: ActionSpec, dim_G: int, dim_H: int) -> bool:
    """The p = 2 variant: same clauses minus the E6 case, undefined on the
    four excluded pairs (raises ExcludedCaseError there)."""
    lbl = _norm_label(spec.subgroup.label) if isinstance(spec.subgroup, NonSubspace) else ""
    if spec.family == "SO" and lbl.startswith("O") and "wrS2" in lbl and spec.n % 4 == 0:
        raise ExcludedCaseError("SO_n with the half-dimension pair stabilizer, n/2 even")
    if (spec.family, lbl) in (("E7", "A7"), ("E6", "A1A5"), ("G2", "A1~A1")):
        raise ExcludedCaseError(f"({spec.family}, {lbl}) is excluded for p = 2")
    return _dimhalf_clauses(spec, dim_G, dim_H, include_e6_a1a5=False)


def _dimhalf_clauses(spec: ActionSpec, dim_G: int, dim_H: int, include_e6_a1a5: bool) -> bool:
    if 2 * dim_H > dim_G:
        return True
    if (
        spec.family == "SO"
        and isinstance(spec.subgroup, Subspace)
        and spec.subgroup.flavor == "nondeg"
    ):
        d = spec.subgroup.d
        ell = spec.n - 2 * d
        if 2 <= ell <= d and ell * ell <= spec.n:
            return True
    if spec.family == "SL" and isinstance(spec.subgroup, NonSubspace) and spec.n >= 4:
        m = _WREATH_RE.match(_norm_label(spec.subgroup.label))
        if m and m.group(1) == "GL" and int(m.group(4)) == 2:
            return True
    if spec.family == "Sp" and spec.n == 6 and isinstance(spec.subgroup, NonSubspace):
        m = _WREATH_RE.match(_norm_label(spec.subgroup.label))
        if m and m.group(1) == "Sp" and int(m.group(4)) == 3:
            return True
    if include_e6_a1a5 and spec.family == "E6" and isinstance(spec.subgroup, NonSubspace):
        if rootsys.canonical_subgroup_label(spec.subgroup.label) == "A1A5":
            return True
    return False


# ---------------------------------------------------------------------------
# Dimension helpers (for consistency cross-checks against the lower bound)

def classical_group_dim(family: str, n: int) -> int:
    if family == "SL":
        return n * n - 1
    if family == "Sp":
        return n * (n + 1) // 2
    if family == "SO":
        return n * (n - 1) // 2
    raise SpecValidationError(f"not classical: {family}")


def spec_dims(spec: ActionSpec) -> tuple[int, int] | None:
    """(dim G, dim Omega) where computable; None when the label is not
    modelled.  Used to cross-check the orbit-dimension lower bound."""
    if spec.family in EXCEPTIONAL_FAMILIES:
        dim_g = rootsys.group_dim(spec.family)
        if isinstance(spec.subgroup, Parabolic):
            fam, rank = rootsys._group_type(spec.family)
            rs = rootsys.build_root_system(fam, rank)
            return dim_g, rootsys.parabolic_quotient_dim(
                rootsys.ParabolicDescriptor(rs, spec.subgroup.node)
            )
        if isinstance(spec.subgroup, TorusNormalizer):
            return dim_g, dim_g - rootsys.group_rank(spec.family)
        if isinstance(spec.subgroup, NonSubspace):
            try:
                dim_h = rootsys.subgroup_dim(spec.subgroup.label)
            except rootsys.LabelError:
                return None
            return dim_g, dim_g - dim_h
        return None
    n = spec.n
    dim_g = classical_group_dim(spec.family, n)
    sub = spec.subgroup
    if isinstance(sub, TorusNormalizer):
        rank = n - 1 if spec.family == "SL" else n // 2
        return dim_g, dim_g - rank
    if isinstance(sub, Subspace):
        d = sub.d
        if spec.family == "SL":
            return dim_g, d * (n - d)
        if sub.flavor == "nondeg":
            if spec.family == "Sp":
                return dim_g, dim_g - (classical_group_dim("Sp", d) + classical_group_dim("Sp", n - d))
            return dim_g, dim_g - (classical_group_dim("SO", d) + classical_group_dim("SO", n - d))
        if sub.flavor == "totally_singular":
            if spec.family == "Sp":
                return dim_g, d * (n - d) - d * (d - 1) // 2
            return dim_g, d * (n - d) - d * (d + 1) // 2
        if sub.flavor == "On_in_Spn":
            return dim_g, n
        if sub.flavor == "nonsingular_1space":
            return dim_g, n - 1
        return None
    label = _norm_label(sub.label)
    m = _WREATH_RE.match(label)
    if m:
        base, divisor, absolute, t = m.group(1), m.group(2), m.group(3), int(m.group(4))
        size = _resolve_size(n, divisor, absolute, label)
        per = {"GL": lambda s: s * s, "Sp": lambda s: s * (s + 1) // 2,
               "O": lambda s: s * (s - 1) // 2, "SO": lambda s: s * (s - 1) // 2}[base]
        dim_h = t * per(size) - (1 if spec.family == "SL" else 0)
        return dim_g, dim_g - dim_h
    m = _PLAIN_RE.match(label)
    if m:
        base, divisor, absolute = m.group(1), m.group(2), m.group(3)
        size = _resolve_size(n, divisor, absolute, label)
        per = {"GL": size * size, "Sp": size * (size + 1) // 2,
               "SO": size * (size - 1) // 2, "O": size * (size - 1) // 2}[base]
        dim_h = per - (1 if spec.family == "SL" and base == "GL" else 0)
        return dim_g, dim_g - dim_h
    if label == "G2":
        return dim_g, dim_g - 14
    return None


# ---------------------------------------------------------------------------
# Table emitters

def table_c_rows() -> list[tuple[str, str, str, int]]:
    """The classical non-subspace actions with base size above 2, with the
    value pulled from the dispatcher at a witness instance."""
    rows = [
        ("SL_n", "GL_{n/2} wr S2", "n >= 4", ("SL", 4, "GL_{n/2} wr S2", "odd")),
        ("SL_n", "Sp_n", "n = 6", ("SL", 6, "Sp_n", "odd")),
        ("SL_n", "Sp_n", "n >= 8", ("SL", 8, "Sp_n", "odd")),
        ("Sp_n", "Sp_{n/2} wr S2", "n >= 8", ("Sp", 8, "Sp_{n/2} wr S2", "odd")),
        ("Sp_n", "Sp_{n/3} wr S3", "n = 6", ("Sp", 6, "Sp_{n/3} wr S3", "odd")),
        ("Sp_n", "G2", "(n,p) = (6,2)", ("Sp", 6, "G2", "2")),
        ("SO_n", "GL_{n/2}", "n >= 10", ("SO", 10, "GL_{n/2}", "odd")),
        ("SO_n", "G2", "n = 7, p != 2", ("SO", 7, "G2", "odd")),
    ]
    out = []
    for g, h, cond, (fam, n, label, char) in rows:
        t = nonsubspace_triple(ActionSpec(fam, NonSubspace(label), n=n, char=char))
        out.append((g, h, cond, t.b.lo))
    return out


def table_e_rows() -> list[tuple[str, str, str, int]]:
    """The exceptional non-parabolic actions with base size above 2."""
    rows = [
        ("E8", "A1E7", "", "any"),
        ("E7", "A1D6", "", "any"),
        ("E7", "T1E6", "", "any"),
        ("E6", "F4", "", "any"),
        ("E6", "D5T1", "", "any"),
        ("E6", "A1A5", "p != 2", "odd"),
        ("F4", "B4", "", "any"),
        ("F4", "C4", "p = 2", "2"),
        ("F4", "D4", "", "any"),
        ("F4", "~D4", "p = 2", "2"),
        ("G2", "A2", "", "any"),
        ("G2", "~A2", "p = 3", "3"),
    ]
    out = []
    for g, h, cond, char in rows:
        t = nonsubspace_triple(ActionSpec(g, NonSubspace(h), char=char))
        out.append((g, h, cond, t.b.lo))
    return out
