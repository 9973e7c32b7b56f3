"""Limiting forests over infinite boards and their generating functions.

Each primitive necklace has one recurrent board per distinct rotation.  The
reverse-move tree above each of those boards, with every fuse subtree
collapsed to a single weighted node, is finite whenever the family closes;
the per-level counts g_i then satisfy a linear system over Z[x].  Solving
it and summing gives the limit series of the orbit sizes,
H(x) = (1 - x) * sum_i g_i(x).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fuse import detect_fuse, u_poly, v_norm
from .murep import BAR_WINDOW, InfSeq, drop_head, inf_move, recurrent_element
from .necklaces import canonical, check_word, rotate_left, rotate_right
from .polyrat import ONE, RatFn, IntPoly, LaurentPoly, X, ZERO


def family_words(word: str) -> list[str]:
    """Distinct left rotations, starting from the word itself.

    The order matters: the cycle child of the board of rotation i is the
    board of rotation i+1, so rows come out as g_i = 1 + x g_{i+1} + ...
    """
    out: list[str] = []
    w = check_word(word)
    while w not in out:
        out.append(w)
        w = rotate_left(w)
    return out


def default_depth_cap(n: int) -> int:
    return 4 * n + 8


class NonClosingError(RuntimeError):
    """A branch of the degenerate expansion never reached a recurrent board."""

    def __init__(self, word: str, root: int, branch: tuple[int, ...]):
        self.word = word
        self.root = root
        self.branch = branch
        moves = ", ".join(str(j) for j in branch)
        super().__init__(
            f"forest of {word} does not close: root {root + 1}, branch R[{moves}]"
        )


@dataclass(frozen=True)
class DegenerateTerm:
    """One collapsed subtree: contributes
    x^level * u_poly(fuse_k) * extra * g_target.

    fuse_k = 0 means the node itself belongs to unknown `target` (0-based:
    first the family's rotations, then any auxiliary classes); otherwise
    the node opens with a fuse_k-fuse whose remainder belongs to it.
    `extra`, when nonempty, holds the coefficient items of an additional
    polynomial factor picked up by head reductions on the way to the
    match (burnt fuses and wall heads stripped from the front of the
    board).
    """

    level: int
    fuse_k: int
    target: int
    extra: tuple[tuple[int, int], ...] = ()

    def weight(self) -> IntPoly:
        w = X**self.level * u_poly(self.fuse_k)
        if self.extra:
            w = w * IntPoly(dict(self.extra))
        return w


def saturate(s: InfSeq) -> InfSeq:
    """Values >= 3 capped at 3.

    Any merge involving such an entry stays >= 3 and any bar window
    containing one saturates, so boards with equal saturations generate
    isomorphic trees.  Periods only ever hold 0, 1, 2, and capping cannot
    enable prefix trimming, so the capped board is already canonical.
    """
    return InfSeq(tuple((min(v, 3), b) for v, b in s.prefix), s.period)


def _wall_head(s: InfSeq) -> int | None:
    """Length of a barred-iff-nonzero sub-window head in front of a wall.

    A wall is a barred entry of value >= BAR_WINDOW.  Positions 1..t must
    each be an unbarred zero or a barred sub-window value; the wall sits
    at t + 1.  Unbarred nonzero entries disqualify the head: a later move
    behind the wall can re-bar them, so their event set is not fixed.
    Returns t >= 1, or None (t = 0 would be a 1-fuse, handled as such).
    """
    t = 0
    while t < len(s.prefix):
        v, barred = s.prefix[t]
        if v >= BAR_WINDOW or barred != (v != 0):
            break
        t += 1
    if t == 0 or t >= len(s.prefix):
        return None
    v, barred = s.prefix[t]
    if barred and v >= BAR_WINDOW:
        return t
    return None


def _count_paths(s: InfSeq, fuel: int) -> IntPoly:
    """Sum of x^length over all reverse-move paths from s, plain recursion.

    Only terminates when every branch dies out; callers must know that it
    does (head aftermaths behind a wall do: each move strips the bars past
    its window and drags the wall leftward, so the barred region shrinks).
    """
    if fuel <= 0:
        raise ArithmeticError("path count recursion did not terminate")
    total = ONE
    for j in s.bars():
        total = total + X * _count_paths(inf_move(s, j), fuel - 1)
    return total


def _head_factor(s: InfSeq, t: int) -> IntPoly:
    """The factor with g([head wall nu]) = factor * g(nu), head length t.

    Any move at or left of the wall kills every bar behind it (the re-bar
    window cannot see past a wall), so each path through the board is a
    path of [wall nu] never playing position 1, interleaved with at most
    one head event and its forced aftermath; and a path of [wall nu]
    either avoids position 1 or ends by playing it, so the restricted
    count is g([wall nu]) / (1 + x) = u_poly(1) g(nu) / (1 + x) = g(nu).
    The factor is 1 plus x times the aftermath path count of each head
    event.
    """
    fuel = 4 * len(s.prefix) + 16
    phi = ONE
    for j in s.bars():
        if j > t + 1:
            break
        phi = phi + X * _count_paths(inf_move(s, j), fuel)
    return phi


class _Restart(Exception):
    pass


def _items(p: IntPoly) -> tuple[tuple[int, int], ...]:
    """Coefficient items for DegenerateTerm.extra; () for the constant 1."""
    if p == ONE:
        return ()
    return tuple(sorted(p.coeffs.items()))


class _Expander:
    """Shared state for expanding one family.

    Unknowns start as the recurrent boards of the rotations.  Nodes are
    first head-reduced: a leading fuse factors out as u_k (the fuse burns
    independently of whatever follows it), and a wall-headed board factors
    out per _head_factor; both strictly shorten the board.  If the reduced
    board still matches nothing and repeats the saturation class of one of
    its own ancestors, the class is promoted to a fresh unknown and the
    row is restarted; the promoted class later matches in one step
    wherever it appears.
    """

    def __init__(self, word: str, depth_cap: int):
        self.word = word
        self.depth_cap = depth_cap
        self.words = family_words(word)
        self.roots = [recurrent_element(w) for w in self.words]
        self.unknowns: list[InfSeq] = list(self.roots)
        self.key_of: dict[InfSeq, int] = {
            saturate(r): i for i, r in enumerate(self.roots)
        }

    def expand(self, i: int) -> tuple[IntPoly, list[DegenerateTerm]]:
        while True:
            try:
                return self._expand_once(i)
            except _Restart:
                continue

    def _expand_once(self, i: int) -> tuple[IntPoly, list[DegenerateTerm]]:
        constant = ZERO
        terms: list[DegenerateTerm] = []

        def visit(
            s: InfSeq,
            level: int,
            w: IntPoly,
            branch: tuple[int, ...],
            path: frozenset,
        ) -> None:
            nonlocal constant
            # head reductions: each pass either matches a known class and
            # emits a term, or strips a factorable head and keeps going on
            # the shortened board, with the factor folded into the weight
            key = saturate(s)
            while level > 0:
                j = self.key_of.get(key)
                if j is not None:
                    terms.append(DegenerateTerm(level, 0, j, _items(w)))
                    return
                info = detect_fuse(s)
                if info.kind == "fuse":
                    rem = drop_head(s, info.k)
                    j = self.key_of.get(saturate(rem))
                    if j is not None:
                        terms.append(DegenerateTerm(level, info.k, j, _items(w)))
                        return
                    w = w * u_poly(info.k)
                    s = rem
                else:
                    t = _wall_head(s)
                    if t is None:
                        break
                    w = w * _head_factor(s, t)
                    s = drop_head(s, t + 1)
                key = saturate(s)
            if level > 0 and key in path:
                if len(self.unknowns) >= 64 * len(self.roots):
                    raise NonClosingError(self.word, i, branch)
                self.key_of[key] = len(self.unknowns)
                self.unknowns.append(s)
                raise _Restart
            constant = constant + w * X**level
            if level >= self.depth_cap:
                raise NonClosingError(self.word, i, branch)
            for j in s.bars():
                visit(inf_move(s, j), level + 1, w, branch + (j,), path | {key})

        visit(self.unknowns[i], 0, ONE, (), frozenset())
        return constant, terms


def expand_degenerate_tree(
    word: str, i: int, depth_cap: int | None = None
) -> tuple[IntPoly, list[DegenerateTerm]]:
    """Expand the reverse-move tree of root i of the family of `word`.

    Nodes are matched against the family's recurrent boards, bars
    included: either the node is such a board, or it opens with a fuse
    whose remainder (dropping the fuse positions, keeping later bars) is
    one.  Matches become DegenerateTerms; unmatched fuse or wall heads
    factor out of the subtree sum and the expansion continues on the
    shortened board, the factor recorded in the term's `extra` (or
    multiplying the constant contribution).  Everything else adds the
    accumulated weight times x^level to the constant and is expanded
    further, down to depth_cap.  Term targets past the rotation count
    refer to promoted auxiliary classes.

    Returns (constant, terms).
    """
    ex = _Expander(word, depth_cap or default_depth_cap(len(word)))
    return ex.expand(i)


@dataclass
class LinearSystem:
    """g_i = A[i] + sum_j M[i][j] g_j over Z[x].

    Entries have coefficients >= 0 and M entries are divisible by x.  The
    first len(words) unknowns are the rotations' boards; aux lists the
    representative boards of any promoted saturation classes after them.
    Only the rotation unknowns enter the limit series.
    """

    words: list[str]
    aux: list[InfSeq]
    A: list[IntPoly]
    M: list[list[IntPoly]]

    @property
    def n_roots(self) -> int:
        return len(self.words)

    @property
    def n(self) -> int:
        return len(self.A)

    def to_json(self) -> dict:
        from .polyrat import poly_to_json

        return {
            "rotations": list(self.words),
            "aux_classes": [str(s) for s in self.aux],
            "A": [poly_to_json(a) for a in self.A],
            "M": [[poly_to_json(e) for e in row] for row in self.M],
        }


def assemble_system(word: str, depth_cap: int | None = None) -> LinearSystem:
    ex = _Expander(word, depth_cap or default_depth_cap(len(word)))
    rows: list[tuple[IntPoly, list[DegenerateTerm]]] = []
    i = 0
    while i < len(ex.unknowns):
        row = ex.expand(i)
        # a restart inside a later row never invalidates earlier ones: an
        # already expanded occurrence of the promoted class is merely left
        # uncollapsed, which is still a true equation
        rows.append(row)
        i += 1
    n = len(ex.unknowns)
    A: list[IntPoly] = []
    M: list[list[IntPoly]] = []
    for constant, terms in rows:
        row_poly = [ZERO for _ in range(n)]
        for t in terms:
            row_poly[t.target] = row_poly[t.target] + t.weight()
        A.append(constant)
        M.append(row_poly)
    return LinearSystem(ex.words, ex.unknowns[len(ex.roots):], A, M)


# --- exact solve ----------------------------------------------------------------


def solve_system(sys: LinearSystem) -> list[RatFn]:
    """Solve (I - M) g = A exactly.

    Fraction-free (Bareiss) forward elimination over Z[x], then
    back-substitution in the rational-function field.
    """
    from .polyrat import poly_divexact

    n = sys.n
    B: list[list[IntPoly]] = [
        [(ONE if i == j else ZERO) - sys.M[i][j] for j in range(n)] + [sys.A[i]]
        for i in range(n)
    ]
    prev = ONE
    for k in range(n):
        pivot = next((r for r in range(k, n) if not B[r][k].is_zero()), None)
        if pivot is None:
            raise ArithmeticError("singular limit system")
        if pivot != k:
            B[k], B[pivot] = B[pivot], B[k]
        for r in range(k + 1, n):
            for c in range(k + 1, n + 1):
                B[r][c] = poly_divexact(B[r][c] * B[k][k] - B[r][k] * B[k][c], prev)
            B[r][k] = ZERO
        prev = B[k][k]
    gs: list[RatFn] = [RatFn(0)] * n
    for i in range(n - 1, -1, -1):
        acc: RatFn = RatFn(B[i][n])
        for j in range(i + 1, n):
            acc = acc - B[i][j] * gs[j]
        gs[i] = acc / B[i][i]
    return gs


def h_limit(word: str, depth_cap: int | None = None) -> RatFn:
    """Closed form of the limit series of orbit sizes for the necklace family."""
    sys = assemble_system(word, depth_cap)
    gs = solve_system(sys)
    total = RatFn(0)
    for g in gs[: sys.n_roots]:
        total = total + g
    h = (ONE - X) * total
    assert series_value_at_zero(h) == sys.n_roots
    return h


def series_value_at_zero(f: RatFn) -> int:
    from fractions import Fraction

    v = Fraction(f.num.coeff(0), f.den.coeff(0))
    assert v.denominator == 1
    return int(v)


# --- anchored reduction: the f, h, p coefficient extraction ----------------------


def reduce_system(
    sys: LinearSystem, anchor: int
) -> tuple[list[IntPoly], list[IntPoly], IntPoly, IntPoly] | None:
    """Substitute every non-anchor row into the anchor's.

    Requires the system to be triangular from the anchor: row anchor+d
    (cyclically) may reference only rows strictly farther from the anchor,
    plus the anchor itself.  Then every g_r = alpha[r] + beta[r] g_anchor
    with polynomial alpha, beta, and the anchor row collapses to
    g_a = const + self_coeff * g_a.  Returns (alpha, beta, self_coeff,
    const), or None if not triangular from this anchor.  Only defined for
    systems without auxiliary classes, where the cyclic row order applies.
    """
    if sys.aux:
        return None
    n = sys.n
    order = [(anchor + d) % n for d in range(n)]
    pos = {r: t for t, r in enumerate(order)}
    for t in range(1, n):
        r = order[t]
        for j in range(n):
            if not sys.M[r][j].is_zero() and j != anchor and pos[j] <= t:
                return None
    alpha: list[IntPoly] = [ZERO] * n
    beta: list[IntPoly] = [ZERO] * n
    beta[anchor] = ONE
    for t in range(n - 1, 0, -1):
        r = order[t]
        a_acc, b_acc = sys.A[r], sys.M[r][anchor]
        for j in range(n):
            if j != anchor and not sys.M[r][j].is_zero():
                a_acc = a_acc + sys.M[r][j] * alpha[j]
                b_acc = b_acc + sys.M[r][j] * beta[j]
        alpha[r], beta[r] = a_acc, b_acc
    self_coeff, const = sys.M[anchor][anchor], sys.A[anchor]
    for j in range(n):
        if j != anchor and not sys.M[anchor][j].is_zero():
            const = const + sys.M[anchor][j] * alpha[j]
            self_coeff = self_coeff + sys.M[anchor][j] * beta[j]
    return alpha, beta, self_coeff, const


def anchored_self_coeff(word: str, depth_cap: int | None = None) -> tuple[IntPoly, int]:
    """Self-coefficient f with g_a = const + f g_a, first anchor that works.

    Anchors are tried in rotation order from the word as given.  1 - f is
    the denominator of the solved system up to sign.
    """
    sys = assemble_system(word, depth_cap)
    for a in range(sys.n):
        red = reduce_system(sys, a)
        if red is not None:
            return red[2], a
    raise ArithmeticError(f"no anchor makes the {word} system triangular")


def f_poly(n: int) -> LaurentPoly:
    """Denominator coefficient for the one-black family of size n+1.

    Satisfies g_1 = A + f_n g_1 in the B W^n system; computed by the
    even/odd recurrence from the bases f_2, f_3.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    return _f_cache(n)


_F: dict[int, LaurentPoly] = {}


def _f_cache(n: int) -> LaurentPoly:
    if n in _F:
        return _F[n]
    if n == 2:
        out = v_norm(1).shift(3)
    elif n == 3:
        out = (v_norm(1) + v_norm(2)).shift(4)
    elif n % 2 == 0:
        out = LaurentPoly()
        for i in range((n - 4) // 2 + 1):
            out = out + v_norm(i).shift(2 * i + 1) * _f_cache(n - (2 * i + 1))
        out = out + v_norm((n - 4) // 2).shift(n - 2) * _f_cache(2)
        out = out + v_norm(n // 2).shift(n + 1)
    else:
        out = LaurentPoly()
        for i in range((n - 3) // 2 + 1):
            out = out + v_norm(i).shift(2 * i + 1) * _f_cache(n - (2 * i + 1))
        out = out + v_norm((n + 1) // 2).shift(n + 1)
    _F[n] = out
    return out


_H: dict[int, LaurentPoly] = {}


def h_poly(n: int) -> LaurentPoly:
    """Coefficient h_n with g_2 = B + h_n g_1 in the W B^(n+1) system.

    Extracted from the assembled system: anchor at the all-blacks-first
    rotation, h_n is the anchor coefficient of the anchor's cycle child.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    if n not in _H:
        word = "B" * (n + 1) + "W"
        sys = assemble_system(word)
        red = reduce_system(sys, 0)
        if red is None:
            raise ArithmeticError(f"{word} system not triangular from its head")
        _H[n] = red[1][1].to_laurent()
    return _H[n]


def h_poly_recurrence(n: int) -> LaurentPoly:
    """The h_n recurrence with its unspecified additive part taken as zero.

    Diagnostic only; compare with h_poly to see whether the dropped part
    actually vanishes.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    if n == 2:
        return v_norm(1).shift(3)
    if n == 3:
        return v_norm(1).shift(4) * 2
    out = LaurentPoly()
    if n % 2 == 0:
        for i in range((n - 4) // 2 + 1):
            out = out + v_norm(i).shift(2 * i + 1) * h_poly_recurrence(n - (2 * i + 1))
        out = out + v_norm(n // 2).shift(n + 1)
    else:
        for i in range((n - 3) // 2 + 1):
            out = out + v_norm(i).shift(2 * i + 1) * h_poly_recurrence(n - (2 * i + 1))
        out = out + v_norm((n - 1) // 2).shift(n + 1)
    return out


def p_poly(n: int) -> LaurentPoly:
    """Self-coefficient of the W B^n system: g_1 = A + p_n g_1.

    For n >= 4 it is the stated combination of the h's; the two small
    cases are the known closed forms.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    if n == 2:
        return v_norm(1).shift(3)
    if n == 3:
        return (v_norm(1) + v_norm(2)).shift(4)
    return h_poly(n + 1).shift(-1) - v_norm(1).shift(2) * h_poly(n - 2)


# --- theorem probes --------------------------------------------------------------


def _alternating_shift(word: str) -> str | None:
    """For words that are B(WB)^k or W(BW)^k up to rotation, the rotation
    convention that makes paired roots correspond; None otherwise."""
    n = len(word)
    if n % 2 == 0:
        return None
    k = n // 2
    if canonical(word) == canonical("B" + "WB" * k):
        return word
    if canonical(word) == canonical("W" + "BW" * k):
        return rotate_right(word, 1)
    return None


def verify_tree_isomorphism(word1: str, word2: str, depth: int) -> bool:
    """Do the paired reverse-move trees allow the same moves to `depth`?

    Roots are paired by cyclic position.  For the two alternating families
    the starting rotations are aligned first; other inputs are paired as
    given.  Checks that corresponding nodes have identical barred position
    sets, recursing move by move.
    """
    if len(word1) != len(word2):
        return False
    w1 = _alternating_shift(word1) or word1
    w2 = _alternating_shift(word2) or word2

    def same_tree(s1: InfSeq, s2: InfSeq, d: int) -> bool:
        if s1.bars() != s2.bars():
            return False
        if d == 0:
            return True
        return all(
            same_tree(inf_move(s1, j), inf_move(s2, j), d - 1) for j in s1.bars()
        )

    roots1 = [recurrent_element(w) for w in family_words(w1)]
    roots2 = [recurrent_element(w) for w in family_words(w2)]
    if len(roots1) != len(roots2):
        return False
    return all(same_tree(r1, r2, depth) for r1, r2 in zip(roots1, roots2))


def verify_same_denominator(word1: str, word2: str, depth_cap: int | None = None) -> dict:
    """Compare the closed forms of two families; reports, never asserts."""
    h1 = h_limit(word1, depth_cap)
    h2 = h_limit(word2, depth_cap)
    return {
        "equal_denominator": h1.den == h2.den,
        "equal_function": h1 == h2,
    }
