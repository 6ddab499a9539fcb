"""Damped 2-D Newton iteration with a forward-difference Jacobian.

The residual callback returns both the system values and a scalar merit;
steps are halved until the merit decreases.  When a step cannot make
progress the iteration reseeds itself from refined candidates of a
coarse grid search over a caller-supplied box.  Several well-separated
candidates are kept because the merit landscape can be flat far from the
basin, which silently kills a single restart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_COARSE_N = 21
_REFINE_N = 9
_REFINE_LEVELS = 3
_RESTART_SEEDS = 4
_CROSS_SEEDS = 32


@dataclass(frozen=True)
class RootResult:
    x: float
    y: float
    residual: float
    iterations: int
    restarts: int
    converged: bool
    residual_history: tuple[float, ...]


def _grid_best(fun, x_lo, x_hi, y_lo, y_hi, n):
    best = (math.inf, 0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi))
    for i in range(n):
        x = x_lo + (x_hi - x_lo) * i / (n - 1)
        for j in range(n):
            y = y_lo + (y_hi - y_lo) * j / (n - 1)
            r = fun(x, y)[2]
            if r < best[0]:
                best = (r, x, y)
    return best


def _refine(fun, start, wx, wy):
    """Shrinking local scans around the incumbent cell."""
    best = start
    for _ in range(_REFINE_LEVELS):
        _, cx, cy = best
        cand = _grid_best(fun, cx - wx, cx + wx, cy - wy, cy + wy, _REFINE_N)
        if cand[0] < best[0]:
            best = cand
        wx *= 2.0 / (_REFINE_N - 1)
        wy *= 2.0 / (_REFINE_N - 1)
    return best


def _restart_seeds(fun, box):
    """Candidate restart points from one coarse scan of the box.

    Two families of grid cells are kept: cells whose corners change the
    sign of both residual components, and the lowest-merit cells.  The
    first family matters when the root's merit dip is narrower than a
    cell: the scan cannot see the dip, but the containing cell is still
    flagged because the zero curves of the system cross inside it.  Every
    flagged cell is kept (the curves can run close together over a long
    chain of cells, and any of them may hold the root), while the merit
    family is held at least two cells apart so it explores distinct
    basins.  All picks are polished by local refinement and returned
    sorted by refined merit.
    """
    x_lo, x_hi, y_lo, y_hi = box
    n = _COARSE_N

    def node(i, j):
        return (
            x_lo + (x_hi - x_lo) * i / (n - 1),
            y_lo + (y_hi - y_lo) * j / (n - 1),
        )

    vals = [[None] * n for _ in range(n)]
    merits = []
    for i in range(n):
        for j in range(n):
            vals[i][j] = fun(*node(i, j))
            merits.append((vals[i][j][2], i, j))

    offs = ((0, 0), (1, 0), (0, 1), (1, 1))
    crossings = []
    for i in range(n - 1):
        for j in range(n - 1):
            corner = tuple(vals[i + di][j + dj] for di, dj in offs)
            if not all(math.isfinite(c[2]) for c in corner):
                continue
            s1 = [c[0] > 0.0 for c in corner]
            s2 = [c[1] > 0.0 for c in corner]
            if any(s1) and not all(s1) and any(s2) and not all(s2):
                k = min(range(4), key=lambda k: corner[k][2])
                crossings.append((corner[k][2], i + offs[k][0], j + offs[k][1]))
    crossings.sort()
    merits.sort()

    picked = []
    seen = set()
    for _, i, j in crossings:
        if (i, j) in seen:
            continue
        seen.add((i, j))
        picked.append((i, j))
        if len(picked) == _CROSS_SEEDS:
            break
    got = 0
    for _, i, j in merits:
        if any(abs(i - pi) <= 2 and abs(j - pj) <= 2 for pi, pj in picked):
            continue
        picked.append((i, j))
        got += 1
        if got == _RESTART_SEEDS:
            break

    wx = (x_hi - x_lo) / (n - 1)
    wy = (y_hi - y_lo) / (n - 1)
    seeds = [
        _refine(fun, (vals[i][j][2], *node(i, j)), wx, wy) for i, j in picked
    ]
    seeds.sort()
    return seeds


def newton2d(
    fun,
    seed: tuple[float, float],
    *,
    tol: float,
    fd_step: float,
    max_iters: int,
    restart_box: tuple[float, float, float, float] | None = None,
    max_backtracks: int = 30,
) -> RootResult:
    """Drive fun(x, y) -> (g1, g2, merit) to merit <= tol.

    Newton steps solve the forward-difference linearization of (g1, g2);
    each step is backtracked (halved up to max_backtracks times) until the
    merit drops.  On stagnation the search reseeds from the next grid
    candidate inside restart_box.  Never raises; inspect `converged` on
    the result.
    """
    x, y = seed
    g1, g2, merit = fun(x, y)
    history = [merit]
    best = (merit, x, y)
    iters = 0
    restarts = 0
    seeds = None

    while merit > tol and iters < max_iters:
        stalled = False
        g1x, g2x, _ = fun(x + fd_step, y)
        g1y, g2y, _ = fun(x, y + fd_step)
        j11 = (g1x - g1) / fd_step
        j21 = (g2x - g2) / fd_step
        j12 = (g1y - g1) / fd_step
        j22 = (g2y - g2) / fd_step
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not math.isfinite(det):
            stalled = True
        else:
            dx = (-g1 * j22 + g2 * j12) / det
            dy = (-g2 * j11 + g1 * j21) / det
            step = 1.0
            accepted = False
            for _ in range(max_backtracks + 1):
                nx, ny = x + step * dx, y + step * dy
                n1, n2, nm = fun(nx, ny)
                if nm < merit:
                    x, y, g1, g2, merit = nx, ny, n1, n2, nm
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                stalled = True
        if not stalled:
            iters += 1
            history.append(merit)
            if merit < best[0]:
                best = (merit, x, y)
            continue
        if restart_box is None:
            break
        if seeds is None:
            seeds = _restart_seeds(fun, restart_box)
        if not seeds:
            break
        _, x, y = seeds.pop(0)
        restarts += 1
        g1, g2, merit = fun(x, y)
        history.append(merit)
        if merit < best[0]:
            best = (merit, x, y)

    if merit < best[0]:
        best = (merit, x, y)
    return RootResult(
        x=best[1],
        y=best[2],
        residual=best[0],
        iterations=iters,
        restarts=restarts,
        converged=best[0] <= tol,
        residual_history=tuple(history),
    )
