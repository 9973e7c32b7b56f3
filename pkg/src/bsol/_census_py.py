"""Pure-Python census kernel.

States are partitions encoded as bytes, one part per byte, parts in
descending order.  The kernel only counts: it walks the reverse-move
digraph breadth-first from the seed layer and reports how many new states
each layer contributes.  Structure (which state sits where) is the caller's
business; see orbit.build_orbit for the small-scale structural variant.
"""

from __future__ import annotations

__all__ = ["census_levels"]


def _push_predecessors(state: bytes, seen: set[bytes], out: list[bytes]) -> None:
    # Undoing the move: pick the pile that was stacked last.  A pile of size
    # v works when v >= (number of other piles); the undone board is every
    # other pile plus one chip, padded with single chips for the piles the
    # move wiped out.  Equal piles give equal predecessors, so only the
    # first of a run is tried.
    m = len(state)
    prev = -1
    for j in range(m):
        v = state[j]
        if v == prev:
            continue
        prev = v
        if v < m - 1:
            break  # descending order: later piles are no larger
        rest = state[:j] + state[j + 1 :]
        pred = bytes(b + 1 for b in rest) + b"\x01" * (v - m + 1)
        if pred not in seen:
            seen.add(pred)
            out.append(pred)


def census_levels(seeds: list[bytes], max_states: int) -> tuple[list[int], bool]:
    """Level sizes of the reverse BFS from the seed states.

    Returns (sizes, capped).  sizes[i] counts states first reached after i
    reverse moves; the seed layer is level 0.  When the visited set would
    pass max_states the walk stops and reports capped=True with the sizes
    of the levels that were fully generated.
    """
    seen: set[bytes] = set()
    frontier: list[bytes] = []
    for s in seeds:
        if s not in seen:
            seen.add(s)
            frontier.append(s)
    sizes: list[int] = []
    while frontier:
        sizes.append(len(frontier))
        nxt: list[bytes] = []
        for state in frontier:
            _push_predecessors(state, seen, nxt)
            if len(seen) > max_states:
                return sizes, True
        frontier = nxt
    return sizes, False
