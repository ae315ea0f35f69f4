"""Pass moves on Seifert matrices and the signed pass-move count.

A pass move between spine bands ``i`` and ``j`` is a crossing change of the
band cores. On the Seifert matrix a ``+`` move adds 1 to both ``V[i][j]`` and
``V[j][i]`` when ``i != j`` and adds 2 to ``V[i][i]`` when ``i == j``; a ``-``
move subtracts the same. Either way ``sigma^T V sigma`` (sigma the sum of the
basis classes) changes by exactly ``2 * sign``, which is what makes the signed
count of any pass homotopy computable from its endpoints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import SeifertForm, basis_sum, eval_qz
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotEquivalent,
    OddParity,
    ReghomError,
)
from .linalg import as_vector
from .mcg import AutomorphismLike, as_automorphism, realizability_defect


@dataclass(frozen=True)
class PassMove:
    """One signed pass move between bands ``i`` and ``j`` (1-based)."""

    i: int
    j: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"pass move sign must be +1 or -1, got {self.sign!r}")
        if self.i < 1 or self.j < 1:
            raise IndexOutOfRange(f"band indices are 1-based, got ({self.i}, {self.j})")

    def inverse(self) -> "PassMove":
        return PassMove(self.i, self.j, -self.sign)

    def __str__(self) -> str:
        return f"pass {self.i} {self.j} {'+' if self.sign > 0 else '-'}"


PassSequence = tuple[PassMove, ...]


def apply_pass_move(s: SeifertForm, move: PassMove) -> SeifertForm:
    n = s.rank
    if move.i > n or move.j > n:
        raise IndexOutOfRange(f"move {move} on a rank-{n} surface")
    i, j = move.i - 1, move.j - 1
    rows = [list(r) for r in s.matrix]
    if i == j:
        rows[i][i] += 2 * move.sign
    else:
        rows[i][j] += move.sign
        rows[j][i] += move.sign
    return SeifertForm(s.signature, rows)


def apply_sequence(s: SeifertForm, moves: Iterable[PassMove]) -> SeifertForm:
    """Fold :func:`apply_pass_move` over ``moves``, validating once at the end."""
    n = s.rank
    rows = [list(r) for r in s.matrix]
    for move in moves:
        if move.i > n or move.j > n:
            raise IndexOutOfRange(f"move {move} on a rank-{n} surface")
        i, j = move.i - 1, move.j - 1
        if i == j:
            rows[i][i] += 2 * move.sign
        else:
            rows[i][j] += move.sign
            rows[j][i] += move.sign
    return SeifertForm(s.signature, rows)


def net_signed_count(moves: Iterable[PassMove]) -> int:
    """(number of + moves) - (number of - moves)."""
    return sum(m.sign for m in moves)


def _half(delta: int) -> int:
    if delta % 2:
        raise OddParity(
            f"q~ difference {delta} is odd: the mapping class is not realizable "
            "by a regular homotopy"
        )
    return delta // 2


def pass_count_in_basis(s: SeifertForm, phi: AutomorphismLike, base: Sequence[int]) -> int:
    """Half the change of ``q~`` on ``base`` under ``phi``.

    With ``base`` the pushed-forward basis sum of another mapping class this is
    the count relative to the moved spine, which gives the cocycle rule
    ``P(phi psi) = P_{psi S}(phi) + P(psi)``.
    """
    m = as_automorphism(phi, s.signature)
    base = as_vector(base)
    return _half(eval_qz(s, m(base)) - eval_qz(s, base))


def pass_count_formula(s: SeifertForm, phi: AutomorphismLike) -> int:
    """Signed number of pass moves in any pass homotopy from ``f`` to ``f o phi``.

    Raises :class:`OddParity` when ``phi`` is not realizable; the parity of the
    basis-sum difference alone can miss non-members, so membership is checked
    on the whole form first.
    """
    m = as_automorphism(phi, s.signature)
    bad = realizability_defect(s, m)
    if bad is not None:
        raise OddParity(
            f"mapping class changes q on basis class {s.signature.band_name(bad)}: "
            "not realizable by a regular homotopy"
        )
    return pass_count_in_basis(s, m, basis_sum(s.signature))


def regularly_homotopic(s: SeifertForm, other: SeifertForm) -> bool:
    if s.signature != other.signature:
        raise DimensionMismatch(f"forms on {s.signature} and {other.signature}")
    return all((d - e) % 2 == 0 for d, e in zip(s.diagonal, other.diagonal))


def find_pass_sequence(s: SeifertForm, target: SeifertForm) -> PassSequence:
    """A pass sequence taking ``s`` to ``target``.

    Off-diagonal moves first, then diagonal ones, indices ascending.
    """
    if not regularly_homotopic(s, target):
        raise NotEquivalent("forms have different mod-2 quadratic forms")
    n = s.rank
    d = [[target.matrix[i][j] - s.matrix[i][j] for j in range(n)] for i in range(n)]
    moves: list[PassMove] = []
    for i in range(n):
        for j in range(i + 1, n):
            sign = 1 if d[i][j] > 0 else -1
            moves += [PassMove(i + 1, j + 1, sign)] * abs(d[i][j])
    for i in range(n):
        sign = 1 if d[i][i] > 0 else -1
        moves += [PassMove(i + 1, i + 1, sign)] * (abs(d[i][i]) // 2)
    return tuple(moves)


def verify_sequence(s: SeifertForm, moves: Iterable[PassMove], target: SeifertForm) -> bool:
    if s.signature != target.signature:
        return False
    return apply_sequence(s, moves) == target


_PASS_RE = re.compile(r"pass\s+([0-9]+)\s+([0-9]+)\s+([+-])(1?)\Z")


def format_sequence(moves: Iterable[PassMove]) -> str:
    return "".join(f"{m}\n" for m in moves)


def parse_sequence(text: str) -> PassSequence:
    """Read ``pass <i> <j> <+|->`` lines; ``#`` comments and blank lines skipped."""
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PASS_RE.match(line)
        if m is None:
            raise ReghomError(f"line {lineno}: expected 'pass <i> <j> <+|->', got {line!r}")
        sign = 1 if m.group(3) == "+" else -1
        moves.append(PassMove(int(m.group(1)), int(m.group(2)), sign))
    return tuple(moves)
