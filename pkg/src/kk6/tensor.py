"""Dense 6x6 metrics and index bookkeeping.

Metrics are symmetric grids of canonical expressions over the six
coordinates.  Inversion is exact adjugate-over-determinant with memoized
minor expansion (block sparsity keeps this cheap for the engine's metric
families, whose determinants collapse to +-1 or a single phase factor).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import (
    Expr, MINUS_ONE, ONE, ZERO, add, mul, num, power, simplify, to_text,
)
from .symbols import DEFAULT_TABLE, Symbol
from .zeros import ZeroResult, is_zero, sample_env
from .expr import free_symbols

__all__ = [
    "DIM", "Metric6", "Tensor", "SingularMetricError", "InverseCheck",
    "determinant", "adjugate", "invert_metric", "verify_claimed_inverse",
    "matmul", "identity_residual", "build", "raise_index", "lower_index",
    "diagonal_metric", "flat6",
]

DIM = 6

Grid = tuple[tuple[Expr, ...], ...]


class SingularMetricError(Exception):
    """Raised when a metric determinant vanishes; carries the determinant
    expression and a sample point witnessing the collapse."""

    def __init__(self, det: Expr, witness: dict[str, complex]):
        self.det = det
        self.witness = witness
        super().__init__(f"metric determinant vanishes: det = {to_text(det)}")


def _as_grid(rows) -> Grid:
    grid = tuple(tuple(r) for r in rows)
    if len(grid) != DIM or any(len(r) != DIM for r in grid):
        raise ValueError("metric must be 6x6")
    for r in grid:
        for e in r:
            if not isinstance(e, Expr):
                raise TypeError(f"metric entry is not an expression: {e!r}")
    return grid


class Metric6:
    """Symmetric 6x6 metric with cached derived data (inverse, connection)."""

    def __init__(self, rows, name: str = "metric",
                 coords: tuple[Symbol, ...] | None = None):
        grid = _as_grid(rows)
        for a in range(DIM):
            for b in range(a):
                if grid[a][b] != grid[b][a]:
                    raise ValueError(
                        f"metric not symmetric at ({a},{b}): "
                        f"{to_text(grid[a][b])} vs {to_text(grid[b][a])}")
        self.lower = grid
        self.name = name
        self.coords = coords or DEFAULT_TABLE.coordinates
        self._cache: dict[str, object] = {}

    def entry(self, a: int, b: int) -> Expr:
        return self.lower[a][b]

    def det(self) -> Expr:
        got = self._cache.get("det")
        if got is None:
            got = determinant(self.lower)
            self._cache["det"] = got
        return got

    def upper(self) -> Grid:
        got = self._cache.get("upper")
        if got is None:
            got = invert_metric(self)
            self._cache["upper"] = got
        return got

    def __repr__(self) -> str:
        return f"Metric6({self.name})"


def diagonal_metric(entries, name: str = "diagonal") -> Metric6:
    entries = tuple(entries)
    rows = tuple(tuple(entries[a] if a == b else ZERO for b in range(DIM))
                 for a in range(DIM))
    return Metric6(rows, name=name)


def flat6() -> Metric6:
    return diagonal_metric(
        (ONE, MINUS_ONE, MINUS_ONE, MINUS_ONE, ONE, MINUS_ONE), name="flat")


# ---------------------------------------------------------------------------
# exact inversion

def _minor(grid: Grid, rows: tuple[int, ...], cols: tuple[int, ...],
           memo: dict) -> Expr:
    if len(rows) == 1:
        return grid[rows[0]][cols[0]]
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    r0, rest = rows[0], rows[1:]
    parts = []
    for j, c in enumerate(cols):
        e = grid[r0][c]
        if e == ZERO:
            continue
        sub = _minor(grid, rest, cols[:j] + cols[j + 1:], memo)
        if sub == ZERO:
            continue
        term = mul(e, sub)
        if j % 2:
            term = mul(MINUS_ONE, term)
        parts.append(term)
    out = add(*parts)
    memo[key] = out
    return out


def determinant(grid: Grid) -> Expr:
    idx = tuple(range(DIM))
    return simplify(_minor(grid, idx, idx, {}))


def adjugate(grid: Grid) -> Grid:
    idx = tuple(range(DIM))
    memo: dict = {}
    out = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            rows = tuple(r for r in idx if r != j)
            cols = tuple(c for c in idx if c != i)
            m = _minor(grid, rows, cols, memo)
            if (i + j) % 2:
                m = mul(MINUS_ONE, m)
            row.append(simplify(m))
        out.append(tuple(row))
    return tuple(out)


def invert_metric(metric: Metric6, seed: int = 0) -> Grid:
    """Exact inverse by adjugate over determinant.

    Raises :class:`SingularMetricError` when the determinant is zero
    (structurally or under random evaluation)."""
    det = metric.det()
    if det == ZERO or is_zero(det, seed=seed, trials=16).verdict == "zero":
        syms = sorted(free_symbols(det), key=lambda s: s.name)
        witness = sample_env(syms, random.Random(seed))
        raise SingularMetricError(det, witness)
    inv_det = power(det, -1)
    adj = adjugate(metric.lower)
    return tuple(tuple(simplify(mul(adj[a][b], inv_det)) for b in range(DIM))
                 for a in range(DIM))


def matmul(a: Grid, b: Grid) -> Grid:
    out = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            parts = []
            for k in range(DIM):
                if a[i][k] == ZERO or b[k][j] == ZERO:
                    continue
                parts.append(mul(a[i][k], b[k][j]))
            row.append(simplify(add(*parts)))
        out.append(tuple(row))
    return tuple(out)


def identity_residual(metric: Metric6, claimed_upper: Grid) -> Grid:
    """claimed^{AC} g_{CB} - delta^A_B, entrywise simplified."""
    prod = matmul(claimed_upper, metric.lower)
    return tuple(tuple(simplify(add(prod[a][b], MINUS_ONE if a == b else ZERO))
                       for b in range(DIM))
                 for a in range(DIM))


@dataclass(frozen=True)
class InverseCheck:
    exact: bool
    max_residual: float
    failures: tuple[tuple[int, int, float], ...]
    seed: int
    trials: int
    tol: float


def verify_claimed_inverse(metric: Metric6, claimed_upper, seed: int = 0,
                           trials: int = 32, tol: float = 1e-9) -> InverseCheck:
    """Measure whether a claimed inverse actually inverts the metric.

    Every entry of ``claimed * g - I`` gets a zero verdict; the check is
    exact when all 36 verdicts are zero, otherwise the failing entries and
    their residuals are reported (never silently patched)."""
    claimed = _as_grid(claimed_upper)
    residual = identity_residual(metric, claimed)
    max_resid = 0.0
    failures: list[tuple[int, int, float]] = []
    for a in range(DIM):
        for b in range(DIM):
            r = is_zero(residual[a][b], seed=seed, trials=trials, tol=tol)
            max_resid = max(max_resid, r.max_residual)
            if r.verdict != "zero":
                failures.append((a, b, r.max_residual))
    return InverseCheck(exact=not failures, max_residual=max_resid,
                        failures=tuple(failures), seed=seed, trials=trials, tol=tol)


# ---------------------------------------------------------------------------
# dense tensors

def build(rank: int, fn) -> tuple:
    if rank == 0:
        return fn()

    def rec(prefix):
        if len(prefix) == rank - 1:
            return tuple(fn(*prefix, i) for i in range(DIM))
        return tuple(rec(prefix + (i,)) for i in range(DIM))

    return rec(())


@dataclass(frozen=True)
class Tensor:
    """Dense rank-n tensor of expressions with index variance tags
    ('u' upper / 'l' lower)."""

    variance: tuple[str, ...]
    comps: tuple
    name: str = ""

    def __post_init__(self):
        if any(v not in ("u", "l") for v in self.variance):
            raise ValueError(f"bad variance {self.variance!r}")

    @property
    def rank(self) -> int:
        return len(self.variance)

    def entry(self, *idx: int) -> Expr:
        node = self.comps
        for i in idx:
            node = node[i]
        return node


def _swap_slot(t: Tensor, metric_grid: Grid, slot: int, new_var: str) -> Tensor:
    rank = t.rank

    def fn(*idx):
        parts = []
        for k in range(DIM):
            g = metric_grid[idx[slot]][k]
            if g == ZERO:
                continue
            inner = t.entry(*idx[:slot], k, *idx[slot + 1:])
            if inner == ZERO:
                continue
            parts.append(mul(g, inner))
        return simplify(add(*parts))

    variance = t.variance[:slot] + (new_var,) + t.variance[slot + 1:]
    return Tensor(variance, build(rank, fn), name=t.name)


def raise_index(t: Tensor, metric: Metric6, slot: int) -> Tensor:
    if t.variance[slot] != "l":
        raise ValueError(f"slot {slot} is already upper")
    return _swap_slot(t, metric.upper(), slot, "u")


def lower_index(t: Tensor, metric: Metric6, slot: int) -> Tensor:
    if t.variance[slot] != "u":
        raise ValueError(f"slot {slot} is already lower")
    return _swap_slot(t, metric.lower, slot, "l")
