"""The coin-flip process: flips X_i, running maximum Y_n, last-argmax Z_n.

Outcomes of length n are enumerated exhaustively (2**n of them) with exact
rational probabilities.  The hot paths encode an outcome as the integer v
whose bit i-1 is X_i, so Y_n is "v != 0", Z_n is v.bit_length() for v > 0
(and n for the all-zeros outcome, where every index attains the maximum and
the largest is taken), and the outcome probability depends only on the
popcount of v.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import DomainError, KRangeError, NTooLargeError
from .event_dsl import EventPredicate, compile_event, parse_event
from .measure_core import DiscreteMeasure, finite, from_mass_pairs, rat_str

MAX_ENUM_N = 24

FAIR = Fraction(1, 2)


class Outcome(NamedTuple):
    bits: tuple[int, ...]  # bits[i-1] is the i-th flip
    p: Fraction
    prob: Fraction


class ProcessRow(NamedTuple):
    outcome: Outcome
    y: int  # max of the bits
    z: int  # largest index attaining that max


def _validate_horizon(n: int) -> None:
    if n < 1:
        raise DomainError(f"horizon must be at least 1, got {n}")
    if n > MAX_ENUM_N:
        raise NTooLargeError(
            f"horizon {n} exceeds the enumeration cap {MAX_ENUM_N} (2**{n} outcomes)"
        )


def _validate_bias(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"success probability must lie strictly in (0, 1), got {rat_str(p)}")
    return p


def _popcount_probs(n: int, p: Fraction) -> list[Fraction]:
    """prob of any fixed outcome with k ones, for k = 0..n."""
    q = 1 - p
    return [p**k * q ** (n - k) for k in range(n + 1)]


def _chunk_bounds(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    bounds = []
    start = 0
    for i in range(parts):
        end = start + base + (1 if i < extra else 0)
        bounds.append((start, end))
        start = end
    return bounds


def _rows_for_range(n: int, probs: list[Fraction], p: Fraction,
                    start: int, end: int) -> list[ProcessRow]:
    rows = []
    for v in range(start, end):
        bits = tuple((v >> i) & 1 for i in range(n))
        y = 1 if v else 0
        z = v.bit_length() if v else n
        rows.append(ProcessRow(Outcome(bits, p, probs[v.bit_count()]), y, z))
    return rows


def enumerate_outcomes(
    n: int, p: Fraction = FAIR, workers: int = 1
) -> list[ProcessRow]:
    """All 2**n process rows in increasing order of the encoded outcome.

    `workers` splits the range into contiguous chunks evaluated on a thread
    pool and concatenated in chunk order, so the result is bit-identical for
    every worker count.
    """
    _validate_horizon(n)
    p = _validate_bias(p)
    probs = _popcount_probs(n, p)
    bounds = _chunk_bounds(1 << n, workers)
    if len(bounds) == 1:
        return _rows_for_range(n, probs, p, 0, 1 << n)
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        chunks = pool.map(
            lambda se: _rows_for_range(n, probs, p, se[0], se[1]), bounds
        )
        rows: list[ProcessRow] = []
        for chunk in chunks:
            rows.extend(chunk)
    return rows


def z_distribution(n: int, p: Fraction = FAIR, workers: int = 1) -> DiscreteMeasure:
    """The distribution of Z_n obtained by exhaustive enumeration."""
    _validate_horizon(n)
    p = _validate_bias(p)

    def count_range(start: int, end: int) -> list[list[int]]:
        # counts[z][k]: outcomes with Z_n = z and popcount k
        counts = [[0] * (n + 1) for _ in range(n + 1)]
        for v in range(start, end):
            z = v.bit_length() if v else n
            counts[z][v.bit_count()] += 1
        return counts

    bounds = _chunk_bounds(1 << n, workers)
    if len(bounds) == 1:
        totals = count_range(0, 1 << n)
    else:
        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            partials = list(pool.map(lambda se: count_range(se[0], se[1]), bounds))
        totals = partials[0]
        for part in partials[1:]:
            for z in range(n + 1):
                for k in range(n + 1):
                    totals[z][k] += part[z][k]
    probs = _popcount_probs(n, p)
    pairs = []
    for z in range(1, n + 1):
        mass = sum(
            (count * probs[k] for k, count in enumerate(totals[z]) if count),
            Fraction(0),
        )
        if mass:
            pairs.append((finite(z), mass))
    return from_mass_pairs(pairs)


def mu_closed_form(n: int) -> DiscreteMeasure:
    """The Z_n distribution for the fair coin in closed form.

    Mass 2**-(n-j+1) at each j < n and 2**-1 + 2**-n at j = n; the total is
    exactly 1.  Valid for p = 1/2 only.
    """
    if n < 1:
        raise DomainError(f"horizon must be at least 1, got {n}")
    pairs: list[tuple[int, Fraction]] = [
        (j, Fraction(1, 2 ** (n - j + 1))) for j in range(1, n)
    ]
    pairs.append((n, Fraction(1, 2) + Fraction(1, 2**n)))
    return from_mass_pairs(pairs)


def lambda_measure() -> DiscreteMeasure:
    """The common distribution of every single flip: mass 1/2 at 0 and at 1."""
    return from_mass_pairs([(0, FAIR), (1, FAIR)])


def event_probability(
    n: int,
    p: Fraction,
    e: EventPredicate | str,
    workers: int = 1,
) -> Fraction:
    """Exact probability of an event over the length-n process.

    Scans all 2**n outcomes with the predicate compiled to a closure over
    the integer encoding, tallying matches per popcount so the rational
    arithmetic happens once per popcount class rather than once per outcome.
    """
    _validate_horizon(n)
    p = _validate_bias(p)
    if isinstance(e, str):
        e = parse_event(e)
    pred = compile_event(e, n)  # raises IndexOutOfRangeError for X[i], i > n

    def count_range(start: int, end: int) -> list[int]:
        counts = [0] * (n + 1)
        for v in range(start, end):
            y = 1 if v else 0
            z = v.bit_length() if v else n
            if pred(v, y, z):
                counts[v.bit_count()] += 1
        return counts

    bounds = _chunk_bounds(1 << n, workers)
    if len(bounds) == 1:
        totals = count_range(0, 1 << n)
    else:
        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            partials = list(pool.map(lambda se: count_range(se[0], se[1]), bounds))
        totals = [sum(col) for col in zip(*partials)]
    probs = _popcount_probs(n, p)
    return sum(
        (count * probs[k] for k, count in enumerate(totals) if count), Fraction(0)
    )


@dataclass(frozen=True, slots=True)
class IdentityReport:
    """Outcome-by-outcome verification of the process identities at horizon n.

    Checks Z_n <= n, X_{Z_n} = Y_n, and the event identity
    {X_n = 0, Z_n < n} = {Z_n < n} on every outcome, and reports the exact
    probability of both sides of the latter.
    """

    n: int
    rows_checked: int
    z_in_range: bool
    argmax_attains_max: bool
    set_identity: bool
    violations: tuple[str, ...]
    p_last_zero_and_z_below: Fraction
    p_z_below: Fraction

    @property
    def all_hold(self) -> bool:
        return self.z_in_range and self.argmax_attains_max and self.set_identity


def verify_process_identities(n: int, p: Fraction = FAIR) -> IdentityReport:
    """Check the defining identities on all 2**n outcomes.

    Deliberately recomputes Y_n and Z_n from first principles (max over an
    explicit bit tuple, last index attaining it) rather than reusing the
    integer-encoding shortcuts, so this doubles as an oracle for them.
    """
    _validate_horizon(n)
    p = _validate_bias(p)
    probs = _popcount_probs(n, p)
    z_in_range = argmax_attains = set_identity = True
    violations: list[str] = []
    p_both = p_z_below = Fraction(0)
    for bits in product((0, 1), repeat=n):
        y = max(bits)
        z = max(i + 1 for i, bit in enumerate(bits) if bit == y)
        prob = probs[sum(bits)]
        if not z <= n:
            z_in_range = False
            violations.append(f"{bits}: Z={z} exceeds n={n}")
        if bits[z - 1] != y:
            argmax_attains = False
            violations.append(f"{bits}: X[{z}]={bits[z - 1]} but Y={y}")
        in_left = bits[-1] == 0 and z < n
        in_right = z < n
        if in_left != in_right:
            set_identity = False
            violations.append(f"{bits}: X[N]==0&&Z<N is {in_left} but Z<N is {in_right}")
        if in_left:
            p_both += prob
        if in_right:
            p_z_below += prob
    return IdentityReport(
        n=n,
        rows_checked=1 << n,
        z_in_range=z_in_range,
        argmax_attains_max=argmax_attains,
        set_identity=set_identity,
        violations=tuple(violations[:8]),
        p_last_zero_and_z_below=p_both,
        p_z_below=p_z_below,
    )


def escaped_mass_profile(n: int, k_max: int) -> list[tuple[int, Fraction]]:
    """Masses mu_n({n-k}) for k = 0..k_max: the atoms marching off to +inf.

    k = 0 carries 1/2 + 2**-n; every k >= 1 carries exactly 2**-(k+1),
    independent of n — the mass that no bounded interval can retain.
    """
    if n < 1:
        raise DomainError(f"horizon must be at least 1, got {n}")
    if not 0 <= k_max < n:
        raise KRangeError(f"k_max must lie in [0, {n - 1}], got {k_max}")
    m = mu_closed_form(n)
    return [(k, m.mass_at(finite(n - k))) for k in range(k_max + 1)]
