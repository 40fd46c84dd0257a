"""Realizable orderings of Schmidt coefficient products and their placement maps.

For coefficients a_1 >= ... >= a_m > 0 the products {a_i a_j : i <= j} admit
only certain total orders.  Each realizable order induces a placement map L
sending a symmetric m x m matrix Y into a length-(m n) vector: y_{i,j} goes to
the slot of a_i a_j, the middle m(n-m) slots are zero, and -y_{i,j} fills the
final m(m-1)/2 slots in reverse of the off-diagonal suborder.  The adjoint
L* evaluated on an ascending eigenvalue vector is the m x m matrix whose PSD
character decides absolute-PPT membership.

Realizability is decided exactly: in log space the order becomes a system of
strict linear inequalities with unit margins, solved by integer/rational
Fourier-Motzkin elimination.  Enumeration backtracks over linear extensions
of the dominance order (i <= k and j <= l forces a_i a_j >= a_k a_l) and
prunes with the same exact test, so the returned list is complete and
duplicate-free; every ordering carries a rational coefficient witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, NamedTuple

import numpy as np

from .spectra import Spectrum, ascending_values

Pair = tuple[int, int]

MAX_M = 7


def product_pairs(m: int) -> list[Pair]:
    """Canonical (i, j) index pairs with 1 <= i <= j <= m."""
    return [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]


def dominates(p: Pair, q: Pair) -> bool:
    """Whether a_p >= a_q for every admissible coefficient vector."""
    return p != q and p[0] <= q[0] and p[1] <= q[1]


# ---------------------------------------------------------------------------
# exact feasibility of a (partial) order, in log space
# ---------------------------------------------------------------------------

Row = tuple[tuple[int, ...], Fraction]  # coeffs . beta >= const


def _normalize(rows: list[Row]) -> list[Row] | None:
    """gcd-reduce, deduplicate keeping the tightest constant; None on a
    contradiction (0 >= positive)."""
    best: dict[tuple[int, ...], Fraction] = {}
    for coeffs, const in rows:
        if not any(coeffs):
            if const > 0:
                return None
            continue
        g = 0
        for c in coeffs:
            g = gcd(g, abs(c))
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            const = const / g
        old = best.get(coeffs)
        if old is None or const > old:
            best[coeffs] = const
    return [(k, v) for k, v in best.items()]


def _fm_witness(rows: list[Row], nvars: int) -> list[Fraction] | None:
    """Fourier-Motzkin feasibility of ``coeffs . beta >= const`` with an
    explicit rational solution (None when infeasible)."""
    work = _normalize(rows)
    if work is None:
        return None
    remaining = list(range(nvars))
    steps: list[tuple[int, list[Row], list[Row]]] = []
    while remaining:
        var = min(
            remaining,
            key=lambda v: sum(1 for r in work if r[0][v] > 0)
            * sum(1 for r in work if r[0][v] < 0),
        )
        lows = [r for r in work if r[0][var] > 0]
        ups = [r for r in work if r[0][var] < 0]
        new_rows = [r for r in work if r[0][var] == 0]
        for lc, ld in lows:
            a = lc[var]
            for uc, ud in ups:
                b = -uc[var]
                coeffs = tuple(b * lc[i] + a * uc[i] for i in range(nvars))
                new_rows.append((coeffs, b * ld + a * ud))
        steps.append((var, lows, ups))
        work = _normalize(new_rows)
        if work is None:
            return None
        remaining.remove(var)
    if any(const > 0 for _, const in work):
        return None
    values: dict[int, Fraction] = {}
    for var, lows, ups in reversed(steps):
        lo = hi = None
        for coeffs, const in lows:
            rest = sum(
                (Fraction(coeffs[w]) * values[w] for w in values if coeffs[w]),
                start=Fraction(0),
            )
            bound = (const - rest) / coeffs[var]
            lo = bound if lo is None else max(lo, bound)
        for coeffs, const in ups:
            rest = sum(
                (Fraction(coeffs[w]) * values[w] for w in values if coeffs[w]),
                start=Fraction(0),
            )
            bound = (const - rest) / coeffs[var]
            hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            values[var] = (lo + hi) / 2
        elif lo is not None:
            values[var] = lo
        elif hi is not None:
            values[var] = hi
        else:
            values[var] = Fraction(0)
    return [values[v] for v in range(nvars)]


def _pair_row(p: Pair, q: Pair, margin: int, m: int) -> Row:
    """Constraint beta_p(i)+beta_p(j) - beta_q(i) - beta_q(j) >= margin,
    with beta_m anchored to zero (so nvars = m - 1)."""
    coeffs = [0] * (m - 1)
    for idx in p:
        if idx < m:
            coeffs[idx - 1] += 1
    for idx in q:
        if idx < m:
            coeffs[idx - 1] -= 1
    return tuple(coeffs), Fraction(margin)


def _chain_rows(m: int) -> list[Row]:
    rows = []
    for t in range(1, m):
        coeffs = [0] * (m - 1)
        coeffs[t - 1] += 1
        if t < m - 1:
            coeffs[t] -= 1
        rows.append((tuple(coeffs), Fraction(0)))
    return rows


def realizable(order: list[Pair] | tuple[Pair, ...]) -> tuple[Fraction, ...] | None:
    """Exact feasibility of a full product ordering.

    Returns log-coefficient values beta_1 >= ... >= beta_m (beta_m = 0) whose
    pair sums decrease with margin >= 1 along ``order``, or None when no
    coefficient vector realizes it.
    """
    order = [tuple(p) for p in order]
    if not order:
        raise ValueError("empty order")
    m = max(j for _, j in order)
    if sorted(order) != product_pairs(m):
        raise ValueError("order must be a permutation of all pairs (i <= j)")
    rows = _chain_rows(m)
    for a, b in zip(order, order[1:]):
        rows.append(_pair_row(a, b, 1, m))
    beta = _fm_witness(rows, m - 1)
    if beta is None:
        return None
    return tuple(beta) + (Fraction(0),)


# ---------------------------------------------------------------------------
# enumeration of all realizable orderings
# ---------------------------------------------------------------------------


def _covers(m: int) -> dict[Pair, list[Pair]]:
    """Immediate dominance successors of every pair."""
    succ: dict[Pair, list[Pair]] = {p: [] for p in product_pairs(m)}
    for i, j in product_pairs(m):
        if j + 1 <= m:
            succ[(i, j)].append((i, j + 1))
        if i + 1 <= j:
            succ[(i, j)].append((i + 1, j))
    return succ


def iter_orderings(m: int) -> Iterator[tuple[tuple[Pair, ...], tuple[Fraction, ...]]]:
    """Yield every realizable ordering with a log-space witness.

    Backtracks over linear extensions of dominance; each prefix is certified
    feasible either by the witness inherited from the parent node or by a
    fresh exact solve, so pruning is sound and leaves need no extra check.
    """
    if not 2 <= m <= MAX_M:
        raise ValueError(f"m must be in [2, {MAX_M}], got {m}")
    succ = _covers(m)
    pred_count = {p: 0 for p in product_pairs(m)}
    for p, qs in succ.items():
        for q in qs:
            pred_count[q] += 1
    chain = _chain_rows(m)

    def value(p: Pair, beta: tuple[Fraction, ...]) -> Fraction:
        return beta[p[0] - 1] + beta[p[1] - 1]

    def node_system(placed: list[Pair], avail: list[Pair]) -> list[Row]:
        rows = list(chain)
        for a, b in zip(placed, placed[1:]):
            rows.append(_pair_row(a, b, 1, m))
        if placed:
            last = placed[-1]
            for u in avail:
                rows.append(_pair_row(last, u, 1, m))
        return rows

    placed: list[Pair] = []
    start_beta = tuple(Fraction(m - k) for k in range(1, m + 1))

    def extend(avail: set[Pair], beta: tuple[Fraction, ...]):
        if not avail:
            yield tuple(placed), beta
            return
        for e in sorted(avail):
            placed.append(e)
            opened = []
            for q in succ[e]:
                pred_count[q] -= 1
                if pred_count[q] == 0:
                    opened.append(q)
            new_avail = (avail - {e}) | set(opened)
            ok_beta = beta
            ve = value(e, beta)
            feasible = all(ve >= value(u, beta) + 1 for u in new_avail)
            if not feasible:
                sol = _fm_witness(node_system(placed, sorted(new_avail)), m - 1)
                if sol is not None:
                    ok_beta = tuple(sol) + (Fraction(0),)
                    feasible = True
            if feasible:
                yield from extend(new_avail, ok_beta)
            for q in succ[e]:
                pred_count[q] += 1
            placed.pop()

    yield from extend({(1, 1)}, start_beta)


def _alpha_from_beta(beta: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Rational coefficients 2**beta_i after scaling beta to integers."""
    denom = 1
    for b in beta:
        denom = denom * b.denominator // gcd(denom, b.denominator)
    exps = [int(b * denom) for b in beta]
    shift = min(exps)
    return tuple(Fraction(2) ** (e - shift) for e in exps)


@dataclass(frozen=True, eq=False)
class OrderingMap:
    """One realizable product ordering with its slot tables and witness.

    ``order`` lists the pairs (i, j) by non-increasing product a_i a_j;
    ``witness`` is a rational coefficient vector realizing every comparison
    strictly (certified at construction).
    """

    m: int
    order: tuple[Pair, ...]
    witness: tuple[Fraction, ...]

    def __post_init__(self):
        npos = self.m * (self.m + 1) // 2
        if len(self.order) != npos or sorted(self.order) != product_pairs(self.m):
            raise ValueError("order must list every pair (i <= j) exactly once")
        products = [self.witness[i - 1] * self.witness[j - 1] for i, j in self.order]
        if any(a <= b for a, b in zip(products, products[1:])):
            raise ValueError("witness does not realize the ordering strictly")
        pos = {p: k + 1 for k, p in enumerate(self.order)}
        offs = [p for p in self.order if p[0] != p[1]]
        tail = {p: r + 1 for r, p in enumerate(reversed(offs))}
        object.__setattr__(self, "_positive_slot", pos)
        object.__setattr__(self, "_negative_tail_rank", tail)

    @property
    def positive_slots(self) -> dict[Pair, int]:
        """1-based slot of each product in the descending template."""
        return dict(self._positive_slot)

    def negative_slots(self, n: int) -> dict[Pair, int]:
        """1-based absolute slot of each -a_i a_j entry for second dim n."""
        base = self.m * (self.m + 1) // 2 + self.m * (n - self.m)
        return {p: base + r for p, r in self._negative_tail_rank.items()}


class Placement(NamedTuple):
    positive: dict[Pair, int]
    negative: dict[Pair, int]
    length: int


def build_L(ordm: OrderingMap, n: int) -> Placement:
    """Slot tables of the placement map for dims (m, n)."""
    if n < ordm.m:
        raise ValueError(f"need n >= m, got n={n} < m={ordm.m}")
    return Placement(ordm.positive_slots, ordm.negative_slots(n), ordm.m * n)


def apply_L(ordm: OrderingMap, n: int, y: np.ndarray) -> np.ndarray:
    """Placement of a symmetric m x m matrix into a length-(m n) vector."""
    pl = build_L(ordm, n)
    y = np.asarray(y, dtype=float)
    if y.shape != (ordm.m, ordm.m):
        raise ValueError(f"expected a {ordm.m}x{ordm.m} matrix")
    out = np.zeros(pl.length)
    for (i, j), slot in pl.positive.items():
        out[slot - 1] = y[i - 1, j - 1]
    for (i, j), slot in pl.negative.items():
        out[slot - 1] = -y[i - 1, j - 1]
    return out


def apply_L_adjoint(ordm: OrderingMap, n: int, lam: Spectrum | np.ndarray) -> np.ndarray:
    """Adjoint of the placement map on the ascending sort of ``lam``.

    Entry (k, k) is 2 * lam_up[slot of (k, k)]; entry (k, l) is the value at
    the positive slot minus the value at the negative slot of (k, l).
    """
    pl = build_L(ordm, n)
    asc = ascending_values(lam)
    if asc.size != pl.length:
        raise ValueError(f"expected a spectrum of length {pl.length}, got {asc.size}")
    m = ordm.m
    out = np.zeros((m, m))
    for (i, j), slot in pl.positive.items():
        if i == j:
            out[i - 1, i - 1] = 2 * asc[slot - 1]
        else:
            val = asc[slot - 1] - asc[pl.negative[(i, j)] - 1]
            out[i - 1, j - 1] = out[j - 1, i - 1] = val
    return out


@lru_cache(maxsize=MAX_M + 1)
def enumerate_orderings(m: int) -> tuple[OrderingMap, ...]:
    """All realizable orderings for dimension m, in backtracking order."""
    return tuple(
        OrderingMap(m, order, _alpha_from_beta(beta)) for order, beta in iter_orderings(m)
    )
