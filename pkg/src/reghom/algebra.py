"""Surface signatures, the intersection form, Seifert matrices and the two
quadratic forms they define.

Homology of a genus ``g`` surface with ``k`` boundary components has rank
``n = 2g + k - 1``. The basis is the spine basis, ordered

    a1, b1, a2, b2, ..., ag, bg, c1, ..., c(k-1)

with intersection numbers <a_i, b_i> = +1 = -<b_i, a_i> and the c-classes in
the radical. An embedding is represented by its Seifert matrix
``V[i][j] = lk(alpha_i, alpha_j^+)``, which must satisfy ``V - V^T = J``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EntryOverflow, InvalidSignature, NotSeifert
from .linalg import Matrix, Vector, as_matrix, as_vector, bilinear, is_square

# Seifert entries are capped so quadratic evaluations stay inside int64.
ENTRY_BOUND = 2**20

_BAND_RE = re.compile(r"([abc])([0-9]+)\Z")


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    boundary: int

    def __post_init__(self) -> None:
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidSignature(f"genus must be a non-negative integer, got {self.genus!r}")
        if not isinstance(self.boundary, int) or self.boundary < 1:
            raise InvalidSignature(
                f"boundary count must be a positive integer, got {self.boundary!r}"
            )

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.boundary - 1

    def band_names(self) -> tuple[str, ...]:
        names: list[str] = []
        for i in range(1, self.genus + 1):
            names += [f"a{i}", f"b{i}"]
        names += [f"c{i}" for i in range(1, self.boundary)]
        return tuple(names)

    def band_index(self, name: str) -> int | None:
        """0-based basis index of a band name, or None if it does not exist."""
        m = _BAND_RE.match(name)
        if m is None:
            return None
        kind, num = m.group(1), int(m.group(2))
        if m.group(2).startswith("0"):
            return None
        if kind in "ab":
            if not 1 <= num <= self.genus:
                return None
            return 2 * (num - 1) + (kind == "b")
        if not 1 <= num <= self.boundary - 1:
            return None
        return 2 * self.genus + num - 1

    def band_name(self, index: int) -> str:
        return self.band_names()[index]

    def is_radical(self, index: int) -> bool:
        return index >= 2 * self.genus

    def __str__(self) -> str:
        return f"genus={self.genus} boundary={self.boundary}"


@dataclass(frozen=True)
class IntersectionForm:
    signature: SurfaceSignature
    matrix: Matrix

    @property
    def rank(self) -> int:
        return len(self.matrix)


@lru_cache(maxsize=256)
def intersection_form(sig: SurfaceSignature) -> IntersectionForm:
    n = sig.rank
    rows = [[0] * n for _ in range(n)]
    for h in range(sig.genus):
        a, b = 2 * h, 2 * h + 1
        rows[a][b] = 1
        rows[b][a] = -1
    return IntersectionForm(sig, as_matrix(rows))


def pairing(form: IntersectionForm, x: Sequence[int], y: Sequence[int]) -> int:
    """Algebraic intersection number <x, y> = x^T J y."""
    return bilinear(as_vector(x), form.matrix, as_vector(y))


def basis_sum(sig: SurfaceSignature) -> Vector:
    return (1,) * sig.rank


def basis_vector(sig: SurfaceSignature, index: int) -> Vector:
    return tuple(1 if i == index else 0 for i in range(sig.rank))


@dataclass(frozen=True)
class SeifertForm:
    """A validated Seifert matrix on a fixed spine basis.

    Construction checks the shape, the entry bound and ``V - V^T = J``.
    """

    signature: SurfaceSignature
    matrix: Matrix = field(compare=True)

    def __post_init__(self) -> None:
        v = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", v)
        n = self.signature.rank
        if not is_square(v, n):
            raise DimensionMismatch(
                f"Seifert matrix must be {n}x{n} for {self.signature}, "
                f"got {len(v)} rows of lengths {sorted({len(r) for r in v})}"
            )
        for i, row in enumerate(v):
            for j, entry in enumerate(row):
                if abs(entry) > ENTRY_BOUND:
                    raise EntryOverflow(
                        f"entry V[{i + 1}][{j + 1}] = {entry} exceeds bound 2^20"
                    )
        jm = intersection_form(self.signature).matrix
        for i in range(n):
            for j in range(i, n):
                if v[i][j] - v[j][i] != jm[i][j]:
                    raise NotSeifert(
                        f"V - V^T differs from the intersection form at "
                        f"({i + 1},{j + 1}): {v[i][j] - v[j][i]} != {jm[i][j]}"
                    )

    @property
    def rank(self) -> int:
        return self.signature.rank

    @property
    def diagonal(self) -> Vector:
        return tuple(self.matrix[i][i] for i in range(self.rank))

    def q2(self) -> "QuadraticFormZ2":
        return QuadraticFormZ2.from_seifert(self)


def validate_seifert(v: Iterable[Iterable[int]], sig: SurfaceSignature) -> SeifertForm:
    rows = as_matrix(v)
    if not is_square(rows):
        raise DimensionMismatch("Seifert matrix must be square")
    return SeifertForm(sig, rows)


def _check_length(s: SeifertForm, x: Sequence[int]) -> None:
    if len(x) != s.rank:
        raise DimensionMismatch(f"class of length {len(x)} on a rank-{s.rank} surface")


def eval_q2(s: SeifertForm, x: Sequence[int]) -> int:
    """lk(x, x^+) mod 2. Only depends on x mod 2."""
    _check_length(s, x)
    bits = tuple(int(v) % 2 for v in x)
    return bilinear(bits, s.matrix, bits) % 2


def eval_qz(s: SeifertForm, x: Sequence[int]) -> int:
    """lk(x, x^+) as an integer, x^T V x."""
    _check_length(s, x)
    return bilinear(as_vector(x), s.matrix, as_vector(x))


@dataclass(frozen=True)
class QuadraticFormZ2:
    """The mod-2 form on bit masks: bit ``i`` of a mask is the coefficient of
    basis class ``i``.

    ``q(x) = sum_i diag_i x_i + sum_{i<j} J_ij x_i x_j  (mod 2)``.
    """

    rank: int
    diag: int
    bilinear_rows: tuple[int, ...]

    @classmethod
    def from_seifert(cls, s: SeifertForm) -> "QuadraticFormZ2":
        n = s.rank
        diag = sum(1 << i for i in range(n) if s.matrix[i][i] % 2)
        jm = intersection_form(s.signature).matrix
        # upper triangle only, so the cross term counts each pair once
        rows = tuple(
            sum(1 << j for j in range(i + 1, n) if jm[i][j] % 2) for i in range(n)
        )
        return cls(n, diag, rows)

    def __call__(self, mask: int) -> int:
        acc = (self.diag & mask).bit_count()
        m = mask
        i = 0
        while m:
            if m & 1:
                acc += (self.bilinear_rows[i] & mask).bit_count()
            m >>= 1
            i += 1
        return acc & 1

    def bilinear(self, x: int, y: int) -> int:
        """Polar form x^T J y mod 2."""
        return self(x ^ y) ^ self(x) ^ self(y)


def to_mask(x: Sequence[int]) -> int:
    return sum(1 << i for i, v in enumerate(x) if v % 2)


def from_mask(mask: int, n: int) -> Vector:
    return tuple((mask >> i) & 1 for i in range(n))
