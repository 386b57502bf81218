"""Sequences, alignments, shared scoring, and the exact Needleman-Wunsch aligner."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

GAP = "-"
MATCH_MARK = "|"

DNA_DIGITS = "0123"
DNA_LETTERS = "ACGT"
DNA_ALPHABET = tuple(DNA_DIGITS)

_LETTERS_TO_DIGITS = str.maketrans(DNA_LETTERS, DNA_DIGITS)
_DIGITS_TO_LETTERS = str.maketrans(DNA_DIGITS, DNA_LETTERS)


@dataclass(frozen=True)
class ScoringScheme:
    """Per-column scoring constants shared by every aligner in the package."""

    match_bonus: int = 5
    mismatch_penalty: int = -3
    gap_penalty: int = -4

    def __post_init__(self):
        if self.match_bonus <= 0:
            raise ValueError("match_bonus must be positive")
        if self.mismatch_penalty >= 0 or self.gap_penalty >= 0:
            raise ValueError("mismatch_penalty and gap_penalty must be negative")

    def column_score(self, cx: str, cy: str) -> int:
        if cx == GAP and cy == GAP:
            raise ValueError("column aligns a gap against a gap")
        if cx == GAP or cy == GAP:
            return self.gap_penalty
        return self.match_bonus if cx == cy else self.mismatch_penalty


DEFAULT_SCHEME = ScoringScheme()


@dataclass(frozen=True)
class Sequence:
    """An immutable symbol string over a fixed alphabet.

    The default alphabet has four symbols and can be spelled either as the
    digits 0-3 or as uppercase ACGT; letter input is stored canonically in
    digit form and rendered back as letters.  Any other text is taken
    verbatim over the set of characters it contains.
    """

    symbols: tuple[str, ...]
    alphabet: frozenset[str] = frozenset(DNA_ALPHABET)
    lettered: bool = field(default=False, compare=False)

    def __post_init__(self):
        for ch in self.alphabet:
            if len(ch) != 1 or ch == GAP or ch.isspace():
                raise ValueError(f"illegal alphabet symbol {ch!r}")
        for sym in self.symbols:
            if sym not in self.alphabet:
                raise ValueError(f"symbol {sym!r} not in alphabet")

    @classmethod
    def from_text(cls, text: str) -> Sequence:
        for ch in text:
            if ch == GAP or ch.isspace():
                raise ValueError(f"illegal sequence character {ch!r}")
        if text and all(ch in DNA_LETTERS for ch in text):
            return cls(tuple(text.translate(_LETTERS_TO_DIGITS)), lettered=True)
        if all(ch in DNA_DIGITS for ch in text):
            return cls(tuple(text))
        return cls(tuple(text), frozenset(text))

    @property
    def text(self) -> str:
        """Canonical symbol string (digit form for the default alphabet)."""
        return "".join(self.symbols)

    def __str__(self) -> str:
        return self.text.translate(_DIGITS_TO_LETTERS) if self.lettered else self.text

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i: int) -> str:
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)


@dataclass(frozen=True)
class Alignment:
    """Two gapped rows plus the per-column match marker line."""

    row_x: str
    row_y: str
    markers: str

    @classmethod
    def from_columns(cls, columns) -> Alignment:
        """Build from (x_symbol | None, y_symbol | None) pairs; None marks a gap."""
        rx, ry, marks = [], [], []
        for cx, cy in columns:
            if cx is None and cy is None:
                raise ValueError("column with gaps on both rows")
            rx.append(cx if cx is not None else GAP)
            ry.append(cy if cy is not None else GAP)
            marks.append(MATCH_MARK if cx is not None and cx == cy else " ")
        return cls("".join(rx), "".join(ry), "".join(marks))

    @property
    def ungapped_x(self) -> str:
        return self.row_x.replace(GAP, "")

    @property
    def ungapped_y(self) -> str:
        return self.row_y.replace(GAP, "")

    def __str__(self) -> str:
        return "\n".join((self.row_x, self.markers, self.row_y))


def score_alignment(alignment: Alignment, scheme: ScoringScheme = DEFAULT_SCHEME) -> int:
    """Sum the match/mismatch/gap points of a finished alignment, column by column."""
    if len(alignment.row_x) != len(alignment.row_y):
        raise ValueError("alignment rows differ in length")
    return sum(
        scheme.column_score(cx, cy)
        for cx, cy in zip(alignment.row_x, alignment.row_y)
    )


def nw_align(
    x: Sequence, y: Sequence, scheme: ScoringScheme = DEFAULT_SCHEME
) -> tuple[int, Alignment]:
    """Optimal global alignment by dynamic programming.

    Returns the maximum achievable score and one alignment attaining it.
    Co-optimal tracebacks are resolved deterministically: diagonal first,
    then a gap in x (consume a y symbol), then a gap in y.
    """
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise ValueError("sequences must be non-empty")
    match, mismatch, gap = scheme.match_bonus, scheme.mismatch_penalty, scheme.gap_penalty

    # score[i][j] = best score aligning x[:i] against y[:j]
    score = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        score[i][0] = i * gap
    for j in range(1, m + 1):
        score[0][j] = j * gap
    for i in range(1, n + 1):
        xi = x[i - 1]
        row = score[i]
        prev = score[i - 1]
        for j in range(1, m + 1):
            sub = match if xi == y[j - 1] else mismatch
            best = prev[j - 1] + sub
            up = row[j - 1] + gap
            if up > best:
                best = up
            left = prev[j] + gap
            if left > best:
                best = left
            row[j] = best

    columns = []
    i, j = n, m
    while i > 0 or j > 0:
        cur = score[i][j]
        if i > 0 and j > 0 and cur == score[i - 1][j - 1] + (
            match if x[i - 1] == y[j - 1] else mismatch
        ):
            columns.append((x[i - 1], y[j - 1]))
            i -= 1
            j -= 1
        elif j > 0 and cur == score[i][j - 1] + gap:
            columns.append((None, y[j - 1]))
            j -= 1
        else:
            columns.append((x[i - 1], None))
            i -= 1
    columns.reverse()
    return score[n][m], Alignment.from_columns(columns)


def random_template(
    length: int,
    alphabet: tuple[str, ...] = DNA_ALPHABET,
    rng: random.Random | None = None,
) -> Sequence:
    """Uniform i.i.d. symbol string of the given length."""
    if length < 0:
        raise ValueError("length must be >= 0")
    rng = rng if rng is not None else random.Random()
    symbols = tuple(alphabet[rng.randrange(len(alphabet))] for _ in range(length))
    return Sequence(symbols, frozenset(alphabet))


def mutate_template(template: Sequence, rng: random.Random | None = None) -> Sequence:
    """Derive a mutated copy of the template.

    Applies floor(len / u) edits with u drawn uniformly from [1.5, 3.5), each
    edit being a point substitution, a single-symbol insertion, or a deletion
    at a position drawn uniformly over the current string.  Positions are
    drawn independently per edit, so they may repeat.
    """
    if len(template) == 0:
        raise ValueError("template must be non-empty")
    rng = rng if rng is not None else random.Random()
    choices = sorted(template.alphabet)
    symbols = list(template.symbols)
    num_edits = int(len(symbols) / rng.uniform(1.5, 3.5))
    for _ in range(num_edits):
        kind = rng.randrange(3)
        pos = rng.randrange(len(symbols))
        if kind == 0:
            symbols[pos] = choices[rng.randrange(len(choices))]
        elif kind == 1:
            symbols.insert(pos, choices[rng.randrange(len(choices))])
        else:
            del symbols[pos]
    return Sequence(tuple(symbols), template.alphabet, lettered=template.lettered)
