"""Ant-colony alignment engine over the pairwise scoring matrix.

Ants start at the bottom-right cell of a width-by-height matrix (x indexes
the first sequence, y the second) and walk toward the top/left edge, choosing
up, left, or diagonal moves from pheromone, match, and region weights.  Good
paths are reinforced each generation and the whole grid decays.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .seqcore import Alignment, ScoringScheme, DEFAULT_SCHEME, Sequence


class Direction(IntEnum):
    DIAG = 0
    LEFT = 1
    UP = 2


class PheromoneError(RuntimeError):
    """A pheromone level dropped to zero or below, which the scoring math forbids."""


@dataclass(frozen=True)
class AcoParams:
    """The ten run parameters, in the tuned-table column order.

    max_gen and num_ants may hold fractional values (the tuner treats every
    gene as a real); they are floored to integers when a run starts.
    """

    max_gen: float
    num_ants: float
    pher_step: float
    pher_weight: float
    match_weight: float
    region_weight: float
    init_pher: float
    local_decay: float
    global_decay: float
    prob_prob: float


class PheromoneGrid:
    """Per-cell, per-direction pheromone levels, shape (height, width, 3)."""

    def __init__(self, width: int, height: int, init_level: float):
        if width < 1 or height < 1:
            raise ValueError("grid dimensions must be positive")
        if init_level <= 0:
            raise ValueError("initial pheromone level must be positive")
        self.levels = np.full((height, width, 3), float(init_level))

    @property
    def width(self) -> int:
        return self.levels.shape[1]

    @property
    def height(self) -> int:
        return self.levels.shape[0]

    def min_level(self) -> float:
        return float(self.levels.min())


@dataclass(frozen=True)
class AntPath:
    """One completed walk from the start cell to a matrix edge.

    cells runs from (width-1, height-1) to the first cell with x == 0 or
    y == 0; moves[i] is the direction taken from cells[i].  score is the full
    alignment score of the extracted alignment, including the edge-cell
    column and any leading gap padding.
    """

    cells: tuple[tuple[int, int], ...]
    moves: tuple[Direction, ...]
    score: int


@dataclass
class RunResult:
    best_score: int
    best_alignment: Alignment
    generations_run: int
    per_generation_best: list[int]
    min_pheromone: float


def direction_scores(
    x: int,
    y: int,
    grid: PheromoneGrid,
    params: AcoParams,
    seq_x: Sequence,
    seq_y: Sequence,
) -> tuple[float, float, float]:
    """Score the three moves available at interior cell (x, y).

    Each direction scores pheromone^w_pher * match^w_match * region^w_region,
    evaluated in the log domain.  The match factor is 2 when the move pairs
    equal symbols, else 1; the region factor steers ants toward the matrix
    diagonal.  Returns (up, diag, left).
    """
    if x < 1 or y < 1:
        raise ValueError("direction scores are defined only at interior cells")
    levels = grid.levels
    ph_d = levels[y, x, Direction.DIAG]
    ph_l = levels[y, x, Direction.LEFT]
    ph_u = levels[y, x, Direction.UP]
    if ph_d <= 0 or ph_l <= 0 or ph_u <= 0:
        raise PheromoneError(f"non-positive pheromone level at cell ({x}, {y})")

    if x == y:
        reg_u, reg_l, reg_d = 1.0, 1.0, 2.0
    elif x > y:
        reg_u, reg_l, reg_d = 1.0, 2.0, 1.5
    else:
        reg_u, reg_l, reg_d = 2.0, 1.0, 1.5

    m_u = 2.0 if seq_x[x] == seq_y[y - 1] else 1.0
    m_d = 2.0 if seq_x[x - 1] == seq_y[y - 1] else 1.0
    m_l = 2.0 if seq_x[x - 1] == seq_y[y] else 1.0

    w_ph = params.pher_weight
    w_m = params.match_weight
    w_r = params.region_weight
    up = math.exp(math.log(ph_u) * w_ph + math.log(m_u) * w_m + math.log(reg_u) * w_r)
    diag = math.exp(math.log(ph_d) * w_ph + math.log(m_d) * w_m + math.log(reg_d) * w_r)
    left = math.exp(math.log(ph_l) * w_ph + math.log(m_l) * w_m + math.log(reg_l) * w_r)
    return up, diag, left


def choose_direction(
    scores: tuple[float, float, float], prob_prob: float, rng: random.Random
) -> Direction:
    """Pick a move from (up, diag, left) scores.

    With probability 1 - prob_prob the best-scoring direction wins outright
    (ties resolve up, then diag, then left); otherwise the move is drawn by
    roulette with probability proportional to its score.
    """
    up, diag, left = scores
    if rng.random() > prob_prob:
        high = max(up, diag, left)
        if high == up:
            return Direction.UP
        if high == diag:
            return Direction.DIAG
        return Direction.LEFT
    total = up + diag + left
    r = rng.uniform(0.0, total)
    total -= up
    if r > total:
        return Direction.UP
    total -= diag
    if r > total:
        return Direction.DIAG
    return Direction.LEFT


def local_update(
    grid: PheromoneGrid,
    x: int,
    y: int,
    direction: Direction,
    pher_step: float,
    local_decay: float,
) -> None:
    """Deposit-and-decay applied to the one entry an ant just used."""
    levels = grid.levels
    levels[y, x, direction] = (levels[y, x, direction] + pher_step) * local_decay


def reinforce_best_path(
    grid: PheromoneGrid,
    path: AntPath,
    gen_score: int,
    best_score: int,
    pher_step: float,
) -> None:
    """Add pher_step * (gen_score / best_score) along the path's traversed entries.

    Skipped entirely unless both scores are positive.  The final edge cell has
    no outgoing move and receives nothing.
    """
    if gen_score <= 0 or best_score <= 0:
        return
    boost = pher_step * (gen_score / best_score)
    levels = grid.levels
    for (x, y), move in zip(path.cells, path.moves):
        levels[y, x, move] += boost


def global_decay(grid: PheromoneGrid, factor: float) -> None:
    """Multiply every grid entry by the decay factor."""
    if not 0 < factor <= 1:
        raise ValueError("global decay factor must be in (0, 1]")
    grid.levels *= factor


def _check_path(path: AntPath, width: int, height: int) -> None:
    cells = path.cells
    if len(cells) < 2:
        raise ValueError("path must contain at least a start and an edge cell")
    if cells[0] != (width - 1, height - 1):
        raise ValueError("path must start at the bottom-right cell")
    if len(path.moves) != len(cells) - 1:
        raise ValueError("path needs exactly one move per step")
    for idx in range(len(cells) - 1):
        x, y = cells[idx]
        nx, ny = cells[idx + 1]
        if idx > 0 and (x == 0 or y == 0):
            raise ValueError("only the final cell may touch the matrix edge")
        dx, dy = x - nx, y - ny
        move = path.moves[idx]
        expected = {
            (1, 1): Direction.DIAG,
            (1, 0): Direction.LEFT,
            (0, 1): Direction.UP,
        }.get((dx, dy))
        if expected is None or expected != move:
            raise ValueError(f"illegal step {cells[idx]} -> {cells[idx + 1]}")
    ex, ey = cells[-1]
    if ex != 0 and ey != 0:
        raise ValueError("path must end on the x == 0 or y == 0 edge")


def extract_alignment(path: AntPath, seq_x: Sequence, seq_y: Sequence) -> Alignment:
    """Turn a completed ant walk into the alignment it encodes.

    The walk is replayed from the edge cell back to the start cell, one
    column per cell: a diagonal step pairs two symbols, an up step gaps x,
    a left step gaps y.  When the walk stopped short of the matrix corner,
    the unconsumed prefix of the other sequence is emitted first as leading
    gap columns.
    """
    _check_path(path, len(seq_x), len(seq_y))
    cells = path.cells
    ex, ey = cells[-1]
    columns: list[tuple[str | None, str | None]] = []
    if ex > 0:
        columns.extend((seq_x[i], None) for i in range(ex))
    elif ey > 0:
        columns.extend((None, seq_y[i]) for i in range(ey))
    columns.append((seq_x[ex], seq_y[ey]))
    last_x, last_y = ex, ey
    for x, y in reversed(cells[:-1]):
        if x == last_x:
            columns.append((None, seq_y[y]))
            last_y = y
        elif y == last_y:
            columns.append((seq_x[x], None))
            last_x = x
        else:
            columns.append((seq_x[x], seq_y[y]))
            last_x, last_y = x, y
    return Alignment.from_columns(columns)


def _simulate_generation(
    grid: PheromoneGrid,
    params: AcoParams,
    num_ants: int,
    seq_x: Sequence,
    seq_y: Sequence,
    scheme: ScoringScheme,
    rng: random.Random,
) -> list[AntPath]:
    """Walk one batch of ants to completion, interleaving their steps.

    Ants are stepped round-robin in a fixed order, so each ant sees the
    pheromone deposits of the ants stepped before it in the same round.
    """
    n, m = len(seq_x), len(seq_y)
    match, mismatch, gap = scheme.match_bonus, scheme.mismatch_penalty, scheme.gap_penalty
    xs = [n - 1] * num_ants
    ys = [m - 1] * num_ants
    scores = [0] * num_ants
    cells = [[(n - 1, m - 1)] for _ in range(num_ants)]
    moves: list[list[Direction]] = [[] for _ in range(num_ants)]
    done = [False] * num_ants
    pending = num_ants
    while pending:
        for ant in range(num_ants):
            if done[ant]:
                continue
            x, y = xs[ant], ys[ant]
            dir_scores = direction_scores(x, y, grid, params, seq_x, seq_y)
            move = choose_direction(dir_scores, params.prob_prob, rng)
            local_update(grid, x, y, move, params.pher_step, params.local_decay)
            if move == Direction.DIAG:
                nx, ny = x - 1, y - 1
                scores[ant] += match if seq_x[x] == seq_y[y] else mismatch
            elif move == Direction.UP:
                nx, ny = x, y - 1
                scores[ant] += gap
            else:
                nx, ny = x - 1, y
                scores[ant] += gap
            xs[ant], ys[ant] = nx, ny
            cells[ant].append((nx, ny))
            moves[ant].append(move)
            if nx == 0 or ny == 0:
                scores[ant] += match if seq_x[nx] == seq_y[ny] else mismatch
                # columns for the unconsumed prefix of the longer side
                scores[ant] += gap * (nx + ny)
                done[ant] = True
                pending -= 1
    return [
        AntPath(tuple(cells[a]), tuple(moves[a]), scores[a]) for a in range(num_ants)
    ]


def run_aco(
    seq_x: Sequence,
    seq_y: Sequence,
    params: AcoParams,
    rng: random.Random,
    *,
    scheme: ScoringScheme = DEFAULT_SCHEME,
    use_global_decay: bool = True,
    convergence_repeats: int = 5,
) -> RunResult:
    """Run the full ant-colony alignment search.

    Every grid entry starts at init_pher.  Each generation walks num_ants
    ants, reinforces the generation's best path against the running best,
    and (unless disabled) decays the whole grid once.  The loop stops at
    max_gen generations or earlier once the generation-best score has
    repeated convergence_repeats times in a row.
    """
    n, m = len(seq_x), len(seq_y)
    if n < 2 or m < 2:
        raise ValueError("both sequences need at least 2 symbols")
    generations = int(params.max_gen)
    num_ants = int(params.num_ants)
    if generations < 1 or num_ants < 1:
        raise ValueError("max_gen and num_ants must floor to at least 1")

    grid = PheromoneGrid(n, m, params.init_pher)
    best_path: AntPath | None = None
    best_score = 0
    per_gen_best: list[int] = []
    min_pheromone = math.inf
    prev_gen_score = 0
    repeats = 0
    generations_run = 0

    for gen in range(generations):
        generations_run += 1
        paths = _simulate_generation(grid, params, num_ants, seq_x, seq_y, scheme, rng)
        gen_best = paths[0]
        for path in paths[1:]:
            if path.score > gen_best.score:
                gen_best = path
        per_gen_best.append(gen_best.score)

        if gen == 0 or gen_best.score > best_score:
            best_score = gen_best.score
            best_path = gen_best

        reinforce_best_path(grid, gen_best, gen_best.score, best_score, params.pher_step)
        if use_global_decay:
            global_decay(grid, params.global_decay)
        min_pheromone = min(min_pheromone, grid.min_level())

        if gen_best.score == prev_gen_score:
            repeats += 1
        else:
            prev_gen_score = gen_best.score
            repeats = 0
        if repeats >= convergence_repeats:
            break

    assert best_path is not None
    return RunResult(
        best_score=best_score,
        best_alignment=extract_alignment(best_path, seq_x, seq_y),
        generations_run=generations_run,
        per_generation_best=per_gen_best,
        min_pheromone=min_pheromone,
    )
