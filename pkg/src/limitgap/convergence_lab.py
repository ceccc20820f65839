"""Weak limits, tightness, and the two rival evaluation orders.

A limiting probability can be formed two ways: apply the limiting measure to
the limiting set (order a), or take the numeric limit of the per-n masses
(order b).  For tight families the two agree; for families whose mass escapes
to infinity they need not, and the reports here keep the two results —
a mass of a measure versus a bare number-limit — strictly apart.

All sequence limits are detected, never assumed: a trailing window of exact
rational equality, an exactly geometric tail, or an even/odd pair of
stabilized subsequences; anything else is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import (
    BadEpsilonError,
    BadSequenceSpecError,
    DomainError,
    EvaluationError,
    InconclusiveError,
    NoSetLimitError,
    NoWeakLimitError,
)
from .measure_core import (
    NEG_INF,
    POS_INF,
    DiscreteMeasure,
    ExtReal,
    Interval,
    MeasurableSet,
    dirac,
    finite,
    rat_str,
)
from .process_lab import lambda_measure, mu_closed_form

_WINDOW = 8


def _value_json(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return value


# ---------------------------------------------------------------------------
# exact limit detection for rational sequences


@dataclass(frozen=True, slots=True)
class SequenceAnalysis:
    """How a finite rational sequence settles, if it does.

    kind is "constant" (trailing window equal), "geometric" (trailing diffs
    form an exact geometric tail with |ratio| < 1; value extrapolates it),
    "divergent" (even and odd subsequences stabilize at different values),
    or "inconclusive".
    """

    kind: str
    value: Fraction | None
    witness: str
    pair: tuple[Fraction, Fraction] | None = None


def analyze_rational_sequence(values: Sequence[Fraction]) -> SequenceAnalysis:
    count = len(values)
    if count >= 2:
        window = min(_WINDOW, count)
        tail = values[-window:]
        if all(v == tail[0] for v in tail):
            return SequenceAnalysis(
                "constant",
                tail[0],
                f"last {window} terms (n={count - window + 1}..{count}) all equal "
                f"{rat_str(tail[0])}",
            )
    if count >= 4:
        tail = values[-min(_WINDOW + 1, count):]
        diffs = [b - a for a, b in zip(tail, tail[1:])]
        if all(d != 0 for d in diffs) and len(diffs) >= 3:
            ratios = {b / a for a, b in zip(diffs, diffs[1:])}
            if len(ratios) == 1:
                ratio = ratios.pop()
                if abs(ratio) < 1:
                    value = values[-1] + diffs[-1] * ratio / (1 - ratio)
                    return SequenceAnalysis(
                        "geometric",
                        value,
                        f"trailing differences form an exact geometric tail with "
                        f"ratio {rat_str(ratio)}; summing it gives {rat_str(value)}",
                    )
    if count >= 6:
        window = min(_WINDOW, count if count % 2 == 0 else count - 1)
        tail = values[-window:]
        evens, odds = tail[0::2], tail[1::2]
        if (
            len(evens) >= 2
            and len(odds) >= 2
            and all(v == evens[0] for v in evens)
            and all(v == odds[0] for v in odds)
            and evens[0] != odds[0]
        ):
            gap = abs(evens[0] - odds[0])
            return SequenceAnalysis(
                "divergent",
                None,
                f"two subsequences stabilize at {rat_str(evens[0])} and "
                f"{rat_str(odds[0])}, a gap of {rat_str(gap)}",
                pair=(evens[0], odds[0]),
            )
    return SequenceAnalysis(
        "inconclusive",
        None,
        f"no trailing-window constancy, exact geometric tail, or stabilized "
        f"subsequence pair over {count} terms",
    )


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class MeasureFamily:
    """An indexed sequence n -> probability measure, built-in or tabulated."""

    kind: str  # "mu", "lambda", "dirac_n", or "table"
    table: tuple[DiscreteMeasure, ...] | None = None

    def member(self, n: int) -> DiscreteMeasure:
        if n < 1:
            raise DomainError(f"family index must be at least 1, got {n}")
        if self.kind == "mu":
            return mu_closed_form(n)
        if self.kind == "lambda":
            return lambda_measure()
        if self.kind == "dirac_n":
            return dirac(finite(n))
        if n > len(self.table):
            raise DomainError(
                f"explicit family has {len(self.table)} members, index {n} requested"
            )
        return self.table[n - 1]

    def clip_horizon(self, horizon: int) -> int:
        if self.table is not None:
            return min(horizon, len(self.table))
        return horizon

    def describe(self) -> str:
        if self.kind == "mu":
            return "mu_n (last-argmax law, fair coin)"
        if self.kind == "lambda":
            return "lambda_n (single-flip law)"
        if self.kind == "dirac_n":
            return "dirac_n (unit mass at n)"
        return f"explicit table of {len(self.table)} measures"


def builtin_family(name: str) -> MeasureFamily:
    if name not in ("mu", "lambda", "dirac_n"):
        raise DomainError(f"unknown builtin family {name!r}")
    return MeasureFamily(name)


def table_family(measures: Sequence[DiscreteMeasure]) -> MeasureFamily:
    members = tuple(measures)
    if not members:
        raise DomainError("explicit family needs at least one measure")
    for i, m in enumerate(members, start=1):
        if not m.is_probability:
            raise DomainError(
                f"family member {i} has total {rat_str(m.total)}, not a probability"
            )
    return MeasureFamily("table", members)


@dataclass(frozen=True, slots=True)
class RealSequence:
    """A monotone rational sequence x_n in one of four closed forms.

    kind "affine": x_n = n + q (increasing to +inf); "approach_above":
    x_n = q + 1/n (decreasing to q); "approach_below": x_n = q - 1/n
    (increasing to q); "const": x_n = q.
    """

    kind: str
    q: Fraction

    def value(self, n: int) -> Fraction:
        if self.kind == "affine":
            return n + self.q
        if self.kind == "approach_above":
            return self.q + Fraction(1, n)
        if self.kind == "approach_below":
            return self.q - Fraction(1, n)
        return self.q

    @property
    def limit(self) -> ExtReal:
        return POS_INF if self.kind == "affine" else finite(self.q)

    @property
    def direction(self) -> str:
        if self.kind in ("affine", "approach_below"):
            return "increasing"
        if self.kind == "approach_above":
            return "decreasing"
        return "constant"

    def describe(self) -> str:
        if self.kind == "affine":
            if self.q == 0:
                return "n"
            sign = "+" if self.q > 0 else "-"
            return f"n{sign}{rat_str(abs(self.q))}"
        if self.kind == "approach_above":
            return f"{rat_str(self.q)}+1/n"
        if self.kind == "approach_below":
            return f"{rat_str(self.q)}-1/n"
        return rat_str(self.q)


def parse_sequence_spec(text: str) -> RealSequence:
    """Parse "n", "n+c", "n-c", "q+1/n", "q-1/n", or a constant "q"."""
    spec = text.replace(" ", "")
    if not spec:
        raise BadSequenceSpecError("empty sequence spec")
    try:
        if spec == "n":
            return RealSequence("affine", Fraction(0))
        if spec.startswith(("n+", "n-")):
            return RealSequence("affine", Fraction(spec[1:]))
        if spec.endswith("+1/n"):
            return RealSequence("approach_above", Fraction(spec[:-4]))
        if spec.endswith("-1/n"):
            return RealSequence("approach_below", Fraction(spec[:-4]))
        return RealSequence("const", Fraction(spec))
    except (ValueError, ZeroDivisionError):
        raise BadSequenceSpecError(
            f"unsupported sequence spec {text!r}; use n, n+c, n-c, q+1/n, q-1/n, or q"
        ) from None


@dataclass(frozen=True)
class SetFamily:
    """An indexed sequence n -> measurable set with a declared limit notion.

    Limits exist only for constant, monotone-increasing (limit = union), and
    monotone-decreasing (limit = intersection) families; explicit lists must
    be eventually constant.
    """

    kind: str  # "ray_seq", "singleton", or "table"
    seq: RealSequence | None = None
    point: ExtReal | None = None
    table: tuple[MeasurableSet, ...] | None = None

    def member(self, n: int) -> MeasurableSet:
        if n < 1:
            raise DomainError(f"set index must be at least 1, got {n}")
        if self.kind == "ray_seq":
            return MeasurableSet.lower_ray(finite(self.seq.value(n)))
        if self.kind == "singleton":
            return MeasurableSet.singleton(self.point)
        if n > len(self.table):
            raise DomainError(
                f"explicit set list has {len(self.table)} members, index {n} requested"
            )
        return self.table[n - 1]

    def clip_horizon(self, horizon: int) -> int:
        if self.table is not None:
            return min(horizon, len(self.table))
        return horizon

    def limit(self) -> tuple[MeasurableSet, str]:
        """The limiting set and the monotonicity notion that produced it."""
        if self.kind == "singleton":
            return self.member(1), "constant"
        if self.kind == "ray_seq":
            direction = self.seq.direction
            if direction == "constant":
                return self.member(1), "constant"
            if self.seq.kind == "affine":
                return MeasurableSet.reals(), "increasing (union)"
            q = finite(self.seq.q)
            if direction == "decreasing":
                return MeasurableSet.lower_ray(q), "decreasing (intersection)"
            # x_n = q - 1/n never reaches q, so the union is the open ray.
            return (
                MeasurableSet.from_pieces((Interval(NEG_INF, False, q, False),)),
                "increasing (union)",
            )
        last = self.table[-1]
        settle = min(3, len(self.table))
        if any(s != last for s in self.table[-settle:]):
            raise NoSetLimitError(
                "explicit set list is neither constant nor settled over its "
                "last members; only constant and monotone families have limits"
            )
        return last, "eventually constant"

    def describe(self) -> str:
        if self.kind == "ray_seq":
            return f"I({self.seq.describe()})"
        if self.kind == "singleton":
            return "{" + str(self.point) + "}"
        return f"explicit list of {len(self.table)} sets"


def lower_ray_family(seq: RealSequence) -> SetFamily:
    return SetFamily("ray_seq", seq=seq)


def singleton_family(point: ExtReal) -> SetFamily:
    return SetFamily("singleton", point=point)


def set_table_family(sets: Sequence[MeasurableSet]) -> SetFamily:
    members = tuple(sets)
    if not members:
        raise DomainError("explicit set list needs at least one set")
    return SetFamily("table", table=members)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True, slots=True)
class LimitReport:
    """Result of one limit evaluation.

    value is an exact rational for the order evaluators, a float for test
    functions, or the status string "divergent"/"inconclusive".  measure_tag
    and set_tag name the limiting measure and set the value is a mass of —
    they are attached by construction for order-(a) results only, because an
    order-(b) number is not the mass of anything.  eligible says whether an
    order-(b) number equals the order-(a) value for the same inputs.
    """

    order: str
    value: Fraction | float | str
    horizon_used: int
    witness: str
    measure_tag: str | None = None
    set_tag: str | None = None
    eligible: bool | None = None
    witness_pair: tuple[Any, Any] | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"order": self.order}
        if isinstance(self.value, str):
            data["status"] = self.value
        else:
            data["value"] = _value_json(self.value)
        data["measure_tag"] = self.measure_tag
        data["set_tag"] = self.set_tag
        data["witness"] = self.witness
        data["horizon_used"] = self.horizon_used
        data["eligible"] = self.eligible
        if self.witness_pair is not None:
            data["witness_pair"] = [_value_json(v) for v in self.witness_pair]
        return data


@dataclass(frozen=True, slots=True)
class TightnessVerdict:
    """Whether one interval can hold all but epsilon of every member's mass."""

    tight: bool | str  # True, False, or "inconclusive"
    epsilon: Fraction
    witness: str
    interval: MeasurableSet | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "tight": self.tight,
            "epsilon": rat_str(self.epsilon),
            "interval": str(self.interval) if self.interval is not None else None,
            "witness": self.witness,
        }


# ---------------------------------------------------------------------------
# tightness


def tightness_probe(
    fam: MeasureFamily, epsilon: Fraction, horizon: int
) -> TightnessVerdict:
    """Decide sup_n rho_n(I^c) < epsilon for some bounded interval I.

    Builtins get exact closed-form verdicts.  An explicit table is scanned:
    the convex hull of all finite atoms either retains 1 - epsilon of every
    member's mass (tight) or the verdict is inconclusive — a finite list can
    never exhibit the unbounded atom family a non-tight verdict requires.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise BadEpsilonError(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2, got {horizon}")
    if fam.kind == "lambda":
        return TightnessVerdict(
            tight=True,
            epsilon=epsilon,
            witness="every member is supported on {0, 1}, so each keeps all of "
            "its mass inside [0, 1] and sup_n lambda_n(complement) = 0 < epsilon",
            interval=MeasurableSet.interval(finite(0), finite(1)),
        )
    if fam.kind == "mu":
        k = 0
        while Fraction(1, 2 ** (k + 1)) > 1 - epsilon:
            k += 1
        if k == 0:
            witness = (
                "for every n, mu_n({n}) = 1/2 + 2^-n > 1/2 >= epsilon, and the "
                "atom at n eventually leaves any bounded interval"
            )
        else:
            witness = (
                f"for every n, the top {k + 1} atoms carry "
                f"mu_n({{n-{k}..n}}) = 1 - 2^-{k + 1} + 2^-n >= epsilon, and "
                "they eventually leave any bounded interval"
            )
        return TightnessVerdict(tight=False, epsilon=epsilon, witness=witness)
    if fam.kind == "dirac_n":
        return TightnessVerdict(
            tight=False,
            epsilon=epsilon,
            witness="member n has its whole unit mass at {n}, which leaves any "
            "bounded interval once n passes its right endpoint, so "
            "sup_n rho_n(I^c) = 1 >= epsilon",
        )
    scan = fam.clip_horizon(horizon)
    finite_points = [
        p
        for n in range(1, scan + 1)
        for p in fam.member(n).support
        if isinstance(p, ExtReal) and p.is_finite
    ]
    if finite_points:
        hull = MeasurableSet.interval(min(finite_points), max(finite_points))
        worst_n, worst_outside = 1, Fraction(0)
        for n in range(1, scan + 1):
            m = fam.member(n)
            outside = m.total - m.mass_of_set(hull)
            if outside > worst_outside:
                worst_n, worst_outside = n, outside
        if worst_outside < epsilon:
            return TightnessVerdict(
                tight=True,
                epsilon=epsilon,
                witness=f"all {scan} members keep at least "
                f"{rat_str(1 - worst_outside)} of their mass inside {hull} "
                f"(worst member n={worst_n})",
                interval=hull,
            )
        detail = (
            f"member n={worst_n} parks mass {rat_str(worst_outside)} at the "
            f"infinities, outside every bounded interval"
        )
    else:
        detail = "no member has any finite atom"
    return TightnessVerdict(
        tight="inconclusive",
        epsilon=epsilon,
        witness=f"{detail}; a finite table cannot exhibit the unbounded atom "
        "family a non-tight verdict requires",
    )


# ---------------------------------------------------------------------------
# weak limits


def weak_limit_identify(fam: MeasureFamily, horizon: int) -> DiscreteMeasure:
    """Identify the weak limit as a measure on R-bar.

    Builtins are known in closed form.  For an explicit table the mass at
    every support point must settle (exact trailing window or exact geometric
    tail); mass not claimed by any finite point goes to +inf.
    """
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2, got {horizon}")
    if fam.kind == "mu" or fam.kind == "dirac_n":
        return dirac(POS_INF)
    if fam.kind == "lambda":
        return lambda_measure()
    scan = fam.clip_horizon(horizon)
    if scan < 2:
        raise InconclusiveError("explicit family is too short to scan")
    members = [fam.member(n) for n in range(1, scan + 1)]
    points = sorted({p for m in members for p in m.support})
    limit_pairs: list[tuple[ExtReal, Fraction]] = []
    claimed = Fraction(0)
    for point in points:
        analysis = analyze_rational_sequence([m.mass_at(point) for m in members])
        if analysis.kind not in ("constant", "geometric"):
            raise InconclusiveError(
                f"mass at {point} does not settle within horizon {scan}: "
                f"{analysis.witness}"
            )
        if analysis.value < 0:
            raise InconclusiveError(
                f"mass at {point} extrapolates to the negative value "
                f"{rat_str(analysis.value)}; the tail is not trustworthy"
            )
        if analysis.value:
            limit_pairs.append((point, analysis.value))
            claimed += analysis.value
    if claimed > 1:
        raise InconclusiveError(
            f"identified atom masses sum to {rat_str(claimed)} > 1"
        )
    escaped = 1 - claimed
    if escaped:
        existing = dict(limit_pairs)
        merged = existing.get(POS_INF, Fraction(0)) + escaped
        existing[POS_INF] = merged
        limit_pairs = sorted(existing.items())
    return DiscreteMeasure(tuple(limit_pairs))


# ---------------------------------------------------------------------------
# test-function integrals


def integral_limit(
    fam: MeasureFamily,
    f: Callable[[ExtReal], float],
    horizon: int,
) -> LimitReport:
    """The integral sequence s_n = sum of mass * f(point) over member n.

    Verdicts: "converged" when a trailing window is flat to 1e-9, or when the
    family has an identified weak limit, f is evaluable on its support, and
    the empirical error |s_n - integral over the limit| shrinks along the
    scan; "divergent" when the trailing half spreads by 0.1 or more (two
    subsequence witnesses included); otherwise inconclusive.
    """
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2, got {horizon}")
    scan = fam.clip_horizon(horizon)

    def integral(m: DiscreteMeasure) -> float:
        acc = 0.0
        for point, mass in m.atoms:
            try:
                acc += float(mass) * f(point)
            except (ValueError, TypeError, OverflowError, ZeroDivisionError) as exc:
                raise EvaluationError(
                    f"test function failed at {point}: {exc}"
                ) from exc
        return acc

    series = [integral(fam.member(n)) for n in range(1, scan + 1)]
    window = series[-min(_WINDOW, scan):]
    spread = max(window) - min(window)
    if spread <= 1e-9:
        return LimitReport(
            order="testfn",
            value=series[-1],
            horizon_used=scan,
            witness=f"trailing window of {len(window)} integrals is flat "
            f"(spread {spread:.3g})",
        )
    try:
        limit_measure = weak_limit_identify(fam, horizon)
        candidate = integral(limit_measure)
    except (InconclusiveError, EvaluationError):
        candidate = None
    if candidate is not None:
        errors = [abs(s - candidate) for s in series]
        half_err, last_err = errors[scan // 2], errors[-1]
        if last_err <= 0.75 * half_err and last_err < 0.1:
            return LimitReport(
                order="testfn",
                value=candidate,
                horizon_used=scan,
                witness=f"integral over the identified weak limit is "
                f"{candidate:.17g}; the empirical error fell from "
                f"{half_err:.3g} at n={scan // 2} to {last_err:.3g} at n={scan}",
            )
    half = series[scan // 2 :]
    spread_half = max(half) - min(half)
    if spread_half >= 0.1:
        hi_idx = max(range(len(half)), key=lambda i: half[i])
        lo_idx = min(range(len(half)), key=lambda i: half[i])
        hi_n, lo_n = scan // 2 + 1 + hi_idx, scan // 2 + 1 + lo_idx
        return LimitReport(
            order="testfn",
            value="divergent",
            horizon_used=scan,
            witness=f"s_{hi_n} = {half[hi_idx]:.6g} and s_{lo_n} = "
            f"{half[lo_idx]:.6g} stay {spread_half:.6g} apart over the "
            f"trailing half of the scan",
            witness_pair=(half[hi_idx], half[lo_idx]),
        )
    return LimitReport(
        order="testfn",
        value="inconclusive",
        horizon_used=scan,
        witness=f"trailing spread {spread:.3g} is neither flat (<= 1e-9) nor "
        f"divergent (>= 0.1) and no weak-limit route applies",
    )


# ---------------------------------------------------------------------------
# the two evaluation orders


def order_a_limit(
    fam: MeasureFamily, sets: SetFamily, horizon: int = 32
) -> LimitReport:
    """Order (a): the limiting measure applied to the limiting set.

    The result is always a mass — measure_tag and set_tag name which measure
    and which set produced it.
    """
    try:
        rho = weak_limit_identify(fam, horizon)
    except InconclusiveError as exc:
        raise NoWeakLimitError(str(exc)) from exc
    alpha, notion = sets.limit()
    value = rho.mass_of_set(alpha)
    return LimitReport(
        order="a",
        value=value,
        horizon_used=horizon,
        witness=f"limit measure {rho} applied to limit set {alpha} "
        f"({notion} limit of {sets.describe()})",
        measure_tag=str(rho),
        set_tag=str(alpha),
    )


def order_b_limit(
    fam: MeasureFamily, sets: SetFamily, horizon: int
) -> LimitReport:
    """Order (b): the numeric limit of the per-n masses rho_n(alpha_n).

    The result is a bare number, never tagged with a measure or a set.  It
    is probability-eligible exactly when it equals the order-(a) value for
    the same inputs; the flag is omitted when order (a) is unavailable.
    """
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2, got {horizon}")
    scan = min(fam.clip_horizon(horizon), sets.clip_horizon(horizon))
    values = [fam.member(n).mass_of_set(sets.member(n)) for n in range(1, scan + 1)]
    analysis = analyze_rational_sequence(values)
    if analysis.kind == "inconclusive":
        raise InconclusiveError(
            f"mass sequence has no detectable limit within horizon {scan}: "
            f"{analysis.witness}"
        )
    eligible: bool | None = None
    if analysis.kind in ("constant", "geometric", "divergent"):
        try:
            a_value = order_a_limit(fam, sets, horizon).value
        except (NoWeakLimitError, NoSetLimitError):
            a_value = None
        if a_value is not None:
            eligible = analysis.value == a_value
    if analysis.kind == "divergent":
        return LimitReport(
            order="b",
            value="divergent",
            horizon_used=scan,
            witness=analysis.witness,
            eligible=eligible,
            witness_pair=analysis.pair,
        )
    return LimitReport(
        order="b",
        value=analysis.value,
        horizon_used=scan,
        witness=analysis.witness,
        eligible=eligible,
    )


# ---------------------------------------------------------------------------
# the Lemma-style three-way check


@dataclass(frozen=True, slots=True)
class BranchReport:
    """Both evaluation orders on rho_n(I(x_n)), against the tightness verdict.

    branch "a" covers x_n -> x finite (equality of the orders is predicted
    at continuity points, where the limit measure puts no mass at x);
    branch "b" covers x_n increasing to +inf, where the prediction splits on
    tightness: equal orders for tight families, and for non-tight ones an
    order-(a) value of 1 - rho({+inf}) with the order-(b) number ineligible.
    """

    branch: str
    xs: str
    order_a: LimitReport
    order_b: LimitReport
    tightness: TightnessVerdict
    predicted: str
    holds: bool | None
    continuity_mass: Fraction | None = None
    infinity_mass: Fraction | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "branch": self.branch,
            "xs": self.xs,
            "order_a": self.order_a.to_dict(),
            "order_b": self.order_b.to_dict(),
            "tightness": self.tightness.to_dict(),
            "predicted": self.predicted,
            "holds": self.holds,
            "continuity_mass": (
                rat_str(self.continuity_mass)
                if self.continuity_mass is not None
                else None
            ),
            "infinity_mass": (
                rat_str(self.infinity_mass)
                if self.infinity_mass is not None
                else None
            ),
        }


def branch_check(
    fam: MeasureFamily, xs: RealSequence | str, horizon: int
) -> BranchReport:
    """Run both evaluation orders on rho_n((-inf, x_n]) and grade the outcome.

    The threshold sequence x_n (given as a spec string or a RealSequence)
    either settles at a finite x — where agreement of the orders is predicted
    at continuity points — or climbs to +inf, where the prediction splits on
    the tightness verdict.  The report carries both orders, the verdict, the
    prediction, and whether it held.
    """
    if isinstance(xs, str):
        xs = parse_sequence_spec(xs)
    sets = lower_ray_family(xs)
    order_a = order_a_limit(fam, sets, horizon)
    order_b = order_b_limit(fam, sets, horizon)
    tightness = tightness_probe(fam, Fraction(1, 2), horizon)
    rho = weak_limit_identify(fam, horizon)
    if xs.limit.is_finite:
        continuity_mass = rho.mass_at(xs.limit)
        if continuity_mass == 0:
            predicted = (
                "x_n has a finite limit x and the limit measure puts no mass "
                "at x, so the two orders agree"
            )
            holds = order_a.value == order_b.value
        else:
            predicted = (
                f"x_n has a finite limit x but the limit measure puts mass "
                f"{rat_str(continuity_mass)} at x; no agreement is predicted"
            )
            holds = None
        return BranchReport(
            branch="a",
            xs=xs.describe(),
            order_a=order_a,
            order_b=order_b,
            tightness=tightness,
            predicted=predicted,
            holds=holds,
            continuity_mass=continuity_mass,
        )
    infinity_mass = rho.mass_at(POS_INF)
    if tightness.tight is True:
        predicted = "x_n increases to +inf and the family is tight, so the two orders agree"
        holds = order_a.value == order_b.value
    elif tightness.tight is False:
        predicted = (
            "x_n increases to +inf and the family is not tight: the order-(a) "
            "mass is 1 - rho({+inf}) and the order-(b) number is not "
            "probability-eligible"
        )
        holds = order_a.value == 1 - infinity_mass and order_b.eligible is False
    else:
        predicted = "tightness is inconclusive, so no relation is predicted"
        holds = None
    return BranchReport(
        branch="b",
        xs=xs.describe(),
        order_a=order_a,
        order_b=order_b,
        tightness=tightness,
        predicted=predicted,
        holds=holds,
        infinity_mass=infinity_mass,
    )
