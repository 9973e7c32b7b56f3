"""Finite orbits by reverse search from the recurrent cycle.

The whole orbit of a necklace hangs, via reverse moves, off its cycle of
recurrent partitions.  Walking that digraph breadth-first yields levels,
the level census polynomial, orbit sizes for the geometric-ratio probe,
and the truncated limit series once the low coefficients stop changing.

Counting work is delegated to a census kernel over byte-encoded states:
bsol._census_cy (C++) when the compiled module is importable, else
bsol._census_py.  Set BSOL_KERNEL=py or =cy to force one.  Boards whose
chip count exceeds a single byte fall back to a tuple-based walk here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping

from .necklaces import check_word, cycle_length, cycle_partitions, weight
from .partitions import forward_move, predecessors
from .polyrat import IntPoly

DEFAULT_MAX_STATES = 10**7
DEFAULT_MAX_POWER = 8


def _pick_kernel():
    mode = os.environ.get("BSOL_KERNEL", "auto")
    if mode == "py":
        from . import _census_py as kernel

        return kernel, "py"
    if mode == "cy":
        from . import _census_cy as kernel  # surface the ImportError, it was asked for

        return kernel, "cy"
    try:
        from . import _census_cy as kernel

        return kernel, "cy"
    except ImportError:
        from . import _census_py as kernel

        return kernel, "py"


_KERNEL, _KERNEL_NAME = _pick_kernel()


def kernel_name() -> str:
    """Which census kernel this process selected ("py" or "cy")."""
    return _KERNEL_NAME


def max_states_default() -> int:
    """State budget for censuses: BS_MAX_STATES env override or 10^7."""
    raw = os.environ.get("BS_MAX_STATES")
    if raw is None:
        return DEFAULT_MAX_STATES
    value = int(raw)
    if value <= 0:
        raise ValueError("BS_MAX_STATES must be positive")
    return value


class OrbitCapped(RuntimeError):
    """A census hit its state budget before exhausting the orbit.

    Carries the completed level sizes so callers can report partial
    progress; the sizes are correct as far as they go.
    """

    def __init__(self, word: str, power: int, max_states: int, sizes: list[int]):
        self.word = word
        self.power = power
        self.max_states = max_states
        self.sizes = sizes
        super().__init__(
            f"orbit of {word}^{power} exceeds the {max_states}-state budget "
            f"({len(sizes)} levels completed)"
        )


def _primitive_word(word: str) -> str:
    w = check_word(word)
    if cycle_length(w) != len(w):
        raise ValueError(f"{w!r} is not a primitive necklace word")
    return w


def _census_wide(seeds: list[tuple[int, ...]], max_states: int) -> tuple[list[int], bool]:
    # Tuple-state fallback for boards with more than 255 chips, where the
    # one-byte-per-part encoding of the kernels cannot hold a pile.
    seen: set[tuple[int, ...]] = set()
    frontier: list[tuple[int, ...]] = []
    for s in seeds:
        if s not in seen:
            seen.add(s)
            frontier.append(s)
    sizes: list[int] = []
    while frontier:
        sizes.append(len(frontier))
        nxt = []
        for state in frontier:
            for pred in predecessors(state):
                if pred not in seen:
                    seen.add(pred)
                    nxt.append(pred)
            if len(seen) > max_states:
                return sizes, True
        frontier = nxt
    return sizes, False


def _level_sizes(word: str, power: int, max_states: int) -> list[int]:
    full = word * power
    seeds = cycle_partitions(full)
    if weight(full) <= 255:
        sizes, capped = _KERNEL.census_levels([bytes(p) for p in seeds], max_states)
    else:
        sizes, capped = _census_wide(seeds, max_states)
    if capped:
        raise OrbitCapped(word, power, max_states, sizes)
    return sizes


@dataclass(frozen=True)
class OrbitDigraph:
    """An orbit with its level map; forward-move edges are implied.

    levels maps each partition to its distance from the recurrent cycle,
    roots are the cycle in forward-move order (all at level 0).  Treat
    instances as immutable; nothing here mutates the dict after build.
    """

    word: str
    power: int
    levels: Mapping[tuple[int, ...], int]
    roots: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.levels)

    def depth(self) -> int:
        return max(self.levels.values())

    def level_sizes(self) -> list[int]:
        sizes = [0] * (self.depth() + 1)
        for lvl in self.levels.values():
            sizes[lvl] += 1
        return sizes

    def level_census(self) -> IntPoly:
        return IntPoly({i: c for i, c in enumerate(self.level_sizes()) if c})


def build_orbit(word: str, power: int = 1, max_states: int | None = None) -> OrbitDigraph:
    """The full orbit digraph of word^power, levels assigned by reverse BFS.

    Stores every partition, so this is for structural work at small scale;
    d_series and orbit_size run the counting kernels instead and should be
    preferred whenever only sizes are needed.
    """
    word = _primitive_word(word)
    if power < 1:
        raise ValueError("power must be positive")
    if max_states is None:
        max_states = max_states_default()
    roots = tuple(cycle_partitions(word * power))
    levels: dict[tuple[int, ...], int] = {}
    frontier: list[tuple[int, ...]] = []
    for r in roots:
        if r not in levels:
            levels[r] = 0
            frontier.append(r)
    depth = 0
    sizes = [len(frontier)]
    while frontier:
        depth += 1
        nxt = []
        for state in frontier:
            for pred in predecessors(state):
                if pred not in levels:
                    levels[pred] = depth
                    nxt.append(pred)
            if len(levels) > max_states:
                raise OrbitCapped(word, power, max_states, sizes)
        if nxt:
            sizes.append(len(nxt))
        frontier = nxt
    return OrbitDigraph(word=word, power=power, levels=levels, roots=roots)


def d_series(word: str, power: int = 1, max_states: int | None = None) -> IntPoly:
    """Level census polynomial: coefficient of x^i counts level-i states."""
    word = _primitive_word(word)
    if power < 1:
        raise ValueError("power must be positive")
    if max_states is None:
        max_states = max_states_default()
    sizes = _level_sizes(word, power, max_states)
    return IntPoly({i: c for i, c in enumerate(sizes) if c})


def orbit_size(word: str, power: int = 1, max_states: int | None = None) -> int:
    word = _primitive_word(word)
    if power < 1:
        raise ValueError("power must be positive")
    if max_states is None:
        max_states = max_states_default()
    return sum(_level_sizes(word, power, max_states))


@dataclass(frozen=True)
class StabilizedSeries:
    """Truncated limit series with the power that pinned it down.

    coeffs are the low level-census counts once two consecutive powers
    agree on all of them; power_used is the first power of the agreeing
    pair.  stabilized=False flags a cap (reason "power-cap" or
    "state-cap") and then coeffs hold the last complete census instead.
    """

    coeffs: tuple[int, ...]
    power_used: int
    stabilized: bool
    reason: str | None = None


def stabilized_h_series(
    word: str,
    m: int,
    max_power: int = DEFAULT_MAX_POWER,
    max_states: int | None = None,
) -> StabilizedSeries:
    """First m+1 limit-series coefficients by consecutive-power agreement.

    Censuses word^power for power = 1, 2, ... and stops when two in a row
    agree on coefficients 0..m.  A census is only comparable once it is
    deeper than m: a shallow orbit pads the window with zeros that the
    limit never contains, so those powers are skipped.  There is no
    a-priori bound for how deep the agreement has to go; the power cap is
    policy, not mathematics, and a capped result says so rather than
    guessing.
    """
    word = _primitive_word(word)
    if m < 0:
        raise ValueError("coefficient count must be nonnegative")
    prev: tuple[int, ...] | None = None
    prev_power = 0
    for power in range(1, max_power + 1):
        try:
            sizes = _level_sizes(word, power, max_states or max_states_default())
        except OrbitCapped:
            if prev is None:
                raise
            return StabilizedSeries(prev, prev_power, False, "state-cap")
        if len(sizes) <= m + 1:
            continue
        window = tuple(sizes[: m + 1])
        if window == prev:
            return StabilizedSeries(window, prev_power, True)
        prev = window
        prev_power = power
    if prev is None:
        return StabilizedSeries((), max_power, False, "power-cap")
    return StabilizedSeries(prev, prev_power, False, "power-cap")


def c_ratio_probe(
    word: str,
    max_power: int,
    max_states: int | None = None,
) -> dict:
    """Orbit sizes of word^k for k = 1..max_power and their common ratio.

    The ratio is reported only when the sizes form an exact geometric
    progression with an integer ratio, and is evidence, not a theorem.
    Powers abandoned at the state budget are listed under "skipped".
    """
    word = _primitive_word(word)
    if len(word) < 3:
        raise ValueError("the ratio probe needs a necklace of length at least 3")
    if max_power < 1:
        raise ValueError("max_power must be positive")
    sizes: list[int] = []
    skipped: list[int] = []
    for power in range(1, max_power + 1):
        try:
            sizes.append(orbit_size(word, power, max_states))
        except OrbitCapped:
            skipped = list(range(power, max_power + 1))
            break
    ratio: int | None = None
    if len(sizes) >= 2 and sizes[0] > 0 and sizes[1] % sizes[0] == 0:
        q = sizes[1] // sizes[0]
        if all(sizes[i + 1] == sizes[i] * q for i in range(len(sizes) - 1)):
            ratio = q
    return {"sizes": sizes, "ratio": ratio, "skipped": skipped}


def forest_identity_check(
    word: str,
    power: int = 1,
    m: int = 4,
    max_states: int | None = None,
) -> bool:
    """Count cycle-rooted directed paths by length against level sums.

    For each j <= m the number of directed reverse-move paths of length j
    starting on the cycle must equal the number of states at level <= j.
    The path count iterates honestly: a path ending at v extends to each
    preimage of v, so counts propagate by N_{j+1}(v) = N_j(beta(v)).
    """
    orbit = build_orbit(word, power, max_states)
    census = orbit.level_sizes()
    counts = {state: (1 if lvl == 0 else 0) for state, lvl in orbit.levels.items()}
    running = 0
    for j in range(m + 1):
        running += census[j] if j < len(census) else 0
        if sum(counts.values()) != running:
            return False
        counts = {state: counts[forward_move(state)] for state in counts}
    return True
