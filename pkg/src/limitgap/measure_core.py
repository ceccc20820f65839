"""Exact discrete (sub)probability measures on the extended real line.

Points live on R-bar = R with two added endpoints -inf and +inf.  All masses
and finite coordinates are `fractions.Fraction`; nothing in this module ever
touches a float, so every comparison and sum is bit-exact.

Sets are finite unions of intervals (each endpoint open or closed) plus a
finite point set, kept in a normal form where structural equality coincides
with set equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Any, Callable, Iterable

from .errors import NegativeMassError, TotalExceedsOneError

_NEG, _FIN, _POS = -1, 0, 1


def rat_str(q: Fraction) -> str:
    """Canonical "num/den" rendering, denominator always present."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" (or a plain integer string) into an exact rational."""
    return Fraction(text.strip())


@total_ordering
@dataclass(frozen=True, slots=True)
class ExtReal:
    """A point of R-bar: -inf, a finite rational, or +inf.

    The total order puts -inf below every finite rational and +inf above;
    finite points compare as rationals.  Instances are immutable and hashable,
    so they can serve as measure support points and dict keys.
    """

    tag: int  # _NEG, _FIN, or _POS
    value: Fraction | None = None

    def __post_init__(self) -> None:
        if self.tag == _FIN:
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", Fraction(self.value))
        elif self.value is not None:
            raise ValueError("infinite points carry no value")

    @property
    def is_finite(self) -> bool:
        return self.tag == _FIN

    def _key(self) -> tuple[int, Fraction]:
        return (self.tag, self.value if self.tag == _FIN else Fraction(0))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ExtReal):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        if self.tag == _NEG:
            return "-inf"
        if self.tag == _POS:
            return "+inf"
        return rat_str(self.value)

    def json_value(self) -> str:
        return str(self)


NEG_INF = ExtReal(_NEG)
POS_INF = ExtReal(_POS)


def finite(value: Fraction | int | str) -> ExtReal:
    """Wrap a rational as a finite point of R-bar."""
    return ExtReal(_FIN, Fraction(value))


def parse_ext_real(text: str) -> ExtReal:
    """Parse "-inf" | "num/den" | "+inf"."""
    stripped = text.strip()
    if stripped == "-inf":
        return NEG_INF
    if stripped == "+inf":
        return POS_INF
    return finite(parse_rational(stripped))


@dataclass(frozen=True, slots=True)
class Interval:
    """An interval of R-bar with independently open/closed endpoints."""

    lo: ExtReal
    lo_closed: bool
    hi: ExtReal
    hi_closed: bool

    @property
    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return not (self.lo_closed and self.hi_closed)
        return False

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi and self.lo_closed and self.hi_closed

    def contains(self, x: ExtReal) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def _merge_candidate(cur: Interval, nxt: Interval) -> Interval | None:
    """Merge two sorted intervals if they overlap or touch, else None."""
    if nxt.lo > cur.hi:
        return None
    if nxt.lo == cur.hi and not (nxt.lo_closed or cur.hi_closed):
        return None
    if nxt.hi > cur.hi:
        hi, hi_closed = nxt.hi, nxt.hi_closed
    elif nxt.hi == cur.hi:
        hi, hi_closed = cur.hi, cur.hi_closed or nxt.hi_closed
    else:
        hi, hi_closed = cur.hi, cur.hi_closed
    return Interval(cur.lo, cur.lo_closed, hi, hi_closed)


@dataclass(frozen=True, slots=True)
class MeasurableSet:
    """A finite union of intervals plus a finite point set, in normal form.

    Normal form: intervals are non-degenerate, sorted, and pairwise disjoint
    with no mergeable gaps; isolated points are sorted and lie strictly
    outside every interval.  Build instances through :meth:`from_pieces` or
    the named constructors so structural equality means set equality.
    """

    intervals: tuple[Interval, ...] = ()
    points: tuple[ExtReal, ...] = ()

    @classmethod
    def from_pieces(
        cls,
        intervals: Iterable[Interval] = (),
        points: Iterable[ExtReal] = (),
    ) -> MeasurableSet:
        pieces = [iv for iv in intervals if not iv.is_empty]
        pieces.extend(Interval(p, True, p, True) for p in points)
        pieces.sort(key=lambda iv: (iv.lo, not iv.lo_closed))
        merged: list[Interval] = []
        for piece in pieces:
            if merged:
                joined = _merge_candidate(merged[-1], piece)
                if joined is not None:
                    merged[-1] = joined
                    continue
            merged.append(piece)
        solid = tuple(iv for iv in merged if not iv.is_point)
        isolated = tuple(iv.lo for iv in merged if iv.is_point)
        return cls(solid, isolated)

    @classmethod
    def empty(cls) -> MeasurableSet:
        return cls()

    @classmethod
    def reals(cls) -> MeasurableSet:
        """All finite points: the open interval (-inf, +inf)."""
        return cls((Interval(NEG_INF, False, POS_INF, False),))

    @classmethod
    def extended_reals(cls) -> MeasurableSet:
        """The whole space R-bar = [-inf, +inf]."""
        return cls((Interval(NEG_INF, True, POS_INF, True),))

    @classmethod
    def from_points(cls, points: Iterable[ExtReal]) -> MeasurableSet:
        return cls.from_pieces((), points)

    @classmethod
    def singleton(cls, point: ExtReal) -> MeasurableSet:
        return cls.from_points((point,))

    @classmethod
    def interval(
        cls,
        lo: ExtReal,
        hi: ExtReal,
        lo_closed: bool = True,
        hi_closed: bool = True,
    ) -> MeasurableSet:
        return cls.from_pieces((Interval(lo, lo_closed, hi, hi_closed),))

    @classmethod
    def lower_ray(cls, x: ExtReal) -> MeasurableSet:
        """The set (-inf, x] of finite points at most x."""
        return cls.from_pieces((Interval(NEG_INF, False, x, True),))

    @property
    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def contains(self, x: ExtReal) -> bool:
        if x in self.points:
            return True
        return any(iv.contains(x) for iv in self.intervals)

    def _all_pieces(self) -> list[Interval]:
        """Every component as an interval, in increasing order."""
        pieces = list(self.intervals)
        pieces.extend(Interval(p, True, p, True) for p in self.points)
        pieces.sort(key=lambda iv: (iv.lo, not iv.lo_closed))
        return pieces

    def union(self, other: MeasurableSet) -> MeasurableSet:
        return MeasurableSet.from_pieces(
            self.intervals + other.intervals, self.points + other.points
        )

    def complement(self, ambient: str) -> MeasurableSet:
        """Complement within "R" (finite points) or "Rbar" (all of R-bar).

        The ambient must be named explicitly: R \\ (-inf, x] and
        R-bar \\ (-inf, x] differ exactly at the two infinities.
        """
        if ambient == "R":
            frame = Interval(NEG_INF, False, POS_INF, False)
        elif ambient == "Rbar":
            frame = Interval(NEG_INF, True, POS_INF, True)
        else:
            raise ValueError(f"unknown ambient {ambient!r} (use 'R' or 'Rbar')")
        gaps: list[Interval] = []
        cursor, cursor_in = frame.lo, frame.lo_closed
        for piece in self._clipped_to(frame):
            gaps.append(Interval(cursor, cursor_in, piece.lo, not piece.lo_closed))
            cursor, cursor_in = piece.hi, not piece.hi_closed
        gaps.append(Interval(cursor, cursor_in, frame.hi, frame.hi_closed))
        return MeasurableSet.from_pieces(gaps)

    def _clipped_to(self, frame: Interval) -> list[Interval]:
        clipped = []
        for piece in self._all_pieces():
            lo, lo_closed = piece.lo, piece.lo_closed
            hi, hi_closed = piece.hi, piece.hi_closed
            if lo < frame.lo:
                lo, lo_closed = frame.lo, frame.lo_closed
            elif lo == frame.lo:
                lo_closed = lo_closed and frame.lo_closed
            if hi > frame.hi:
                hi, hi_closed = frame.hi, frame.hi_closed
            elif hi == frame.hi:
                hi_closed = hi_closed and frame.hi_closed
            out = Interval(lo, lo_closed, hi, hi_closed)
            if not out.is_empty:
                clipped.append(out)
        return clipped

    def intersection(self, other: MeasurableSet) -> MeasurableSet:
        inside_out = self.complement("Rbar").union(other.complement("Rbar"))
        return inside_out.complement("Rbar")

    def __str__(self) -> str:
        parts = [str(iv) for iv in self.intervals]
        if self.points:
            parts.append("{" + ", ".join(str(p) for p in self.points) + "}")
        return " U ".join(parts) if parts else "(empty)"


@dataclass(frozen=True)
class DiscreteMeasure:
    """A finite atom map with exact rational masses and total at most 1.

    Construction normalizes: duplicate points are summed, zero-mass atoms
    dropped, atoms sorted by point.  `total` is computed, never supplied.
    Support points are ExtReal throughout this module; any totally ordered
    hashable point type works (the compactification maps supports into
    [0, 1] unit-interval points).
    """

    atoms: tuple[tuple[Any, Fraction], ...]
    total: Fraction = field(init=False)

    def __post_init__(self) -> None:
        merged: dict[Any, Fraction] = {}
        for point, mass in self.atoms:
            mass = Fraction(mass)
            if mass < 0:
                raise NegativeMassError(f"negative mass {rat_str(mass)} at {point}")
            merged[point] = merged.get(point, Fraction(0)) + mass
        cleaned = tuple(
            (point, mass) for point, mass in sorted(merged.items()) if mass != 0
        )
        total = sum((mass for _, mass in cleaned), Fraction(0))
        if total > 1:
            raise TotalExceedsOneError(rat_str(total))
        object.__setattr__(self, "atoms", cleaned)
        object.__setattr__(self, "total", total)

    @property
    def support(self) -> tuple[Any, ...]:
        return tuple(point for point, _ in self.atoms)

    @property
    def is_probability(self) -> bool:
        return self.total == 1

    @property
    def is_subprobability(self) -> bool:
        return self.total < 1

    def mass_at(self, point: Any) -> Fraction:
        for p, mass in self.atoms:
            if p == point:
                return mass
        return Fraction(0)

    def mass_of_set(self, s: MeasurableSet) -> Fraction:
        """Exact mass of a normal-form set: the sum over atoms it contains."""
        return sum(
            (mass for point, mass in self.atoms if s.contains(point)), Fraction(0)
        )

    def cdf(self, x: ExtReal) -> Fraction:
        """Mass of [-inf, x]; non-decreasing in x, cdf(+inf) = total."""
        return sum((mass for point, mass in self.atoms if point <= x), Fraction(0))

    def restrict_to_reals(self) -> DiscreteMeasure:
        """Drop any atoms at the two infinities; the total shrinks by their mass."""
        kept = tuple(
            (point, mass)
            for point, mass in self.atoms
            if not (isinstance(point, ExtReal) and not point.is_finite)
        )
        return DiscreteMeasure(kept)

    def pushforward(self, f: Callable[[Any], Any]) -> DiscreteMeasure:
        """Transport atom masses through a point map; colliding images sum."""
        return DiscreteMeasure(tuple((f(point), mass) for point, mass in self.atoms))

    def __str__(self) -> str:
        body = ", ".join(f"{point}: {rat_str(mass)}" for point, mass in self.atoms)
        return "{" + body + "}"


def dirac(point: Any) -> DiscreteMeasure:
    """The probability measure with a single atom of mass 1 at `point`."""
    return DiscreteMeasure(((point, Fraction(1)),))


def from_mass_pairs(
    pairs: Iterable[tuple[Any, Fraction | int | str]],
) -> DiscreteMeasure:
    """Build a measure from (point, mass) pairs.

    Points given as plain ints, Fractions, or strings are wrapped as finite
    ExtReal coordinates.  Raises NegativeMassError for any mass < 0 and
    TotalExceedsOneError (with the exact sum) when masses add to more than 1.
    """
    atoms = []
    for point, mass in pairs:
        if isinstance(point, (int, Fraction, str)) and not isinstance(point, bool):
            point = finite(point)
        atoms.append((point, Fraction(mass)))
    return DiscreteMeasure(tuple(atoms))


@dataclass(frozen=True, slots=True)
class AdditivityReport:
    """Whether mass(A) + mass(B) is itself the mass of an event.

    `disjoint` is set-theoretic disjointness of A and B; `eligible` says the
    sum equals mass(A u B), i.e. no atom of the measure sits in the overlap.
    A sum over overlapping events is a well-defined number but not the
    measure of any set.
    """

    mass_a: Fraction
    mass_b: Fraction
    mass_union: Fraction
    mass_sum: Fraction
    disjoint: bool
    eligible: bool


def check_additivity(
    m: DiscreteMeasure, a: MeasurableSet, b: MeasurableSet
) -> AdditivityReport:
    mass_a = m.mass_of_set(a)
    mass_b = m.mass_of_set(b)
    mass_union = m.mass_of_set(a.union(b))
    return AdditivityReport(
        mass_a=mass_a,
        mass_b=mass_b,
        mass_union=mass_union,
        mass_sum=mass_a + mass_b,
        disjoint=a.intersection(b).is_empty,
        eligible=mass_a + mass_b == mass_union,
    )


def _point_json(point: Any) -> Any:
    return point.json_value() if hasattr(point, "json_value") else str(point)


def measure_to_dict(m: DiscreteMeasure) -> dict[str, Any]:
    """The shared JSON shape: sorted {point, mass} records plus the total."""
    return {
        "atoms": [
            {"point": _point_json(point), "mass": rat_str(mass)}
            for point, mass in m.atoms
        ],
        "total": rat_str(m.total),
    }


def measure_from_dict(data: dict[str, Any]) -> DiscreteMeasure:
    pairs = [
        (parse_ext_real(rec["point"]), parse_rational(rec["mass"]))
        for rec in data["atoms"]
    ]
    return from_mass_pairs(pairs)


def interval_to_dict(iv: Interval) -> dict[str, Any]:
    return {
        "lo": str(iv.lo),
        "lo_closed": iv.lo_closed,
        "hi": str(iv.hi),
        "hi_closed": iv.hi_closed,
    }


def set_to_dict(s: MeasurableSet) -> dict[str, Any]:
    return {
        "intervals": [interval_to_dict(iv) for iv in s.intervals],
        "points": [str(p) for p in s.points],
    }


def set_from_dict(data: dict[str, Any]) -> MeasurableSet:
    intervals = [
        Interval(
            parse_ext_real(rec["lo"]),
            bool(rec["lo_closed"]),
            parse_ext_real(rec["hi"]),
            bool(rec["hi_closed"]),
        )
        for rec in data.get("intervals", ())
    ]
    points = [parse_ext_real(p) for p in data.get("points", ())]
    return MeasurableSet.from_pieces(intervals, points)
