"""Homology action of Dehn-twist words and the realizability test.

A mapping class is represented only by its action on H_1(F; Z) in the spine
basis, as an integer matrix acting on column vectors. The mapping classes
realizable by a regular homotopy of the embedding are exactly those whose
action preserves the mod-2 form ``q``; see :func:`is_realizable`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .algebra import (
    SeifertForm,
    SurfaceSignature,
    basis_vector,
    eval_q2,
    intersection_form,
    to_mask,
    validate_seifert,
)
from .errors import (
    DimensionMismatch,
    NotFormPreserving,
    NotPrimitive,
    WordSyntaxError,
    ZeroClass,
)
from .linalg import (
    Matrix,
    Vector,
    as_matrix,
    as_vector,
    checked,
    determinant,
    identity,
    is_square,
    mat_mul,
    mat_vec,
    transpose,
)


@dataclass(frozen=True)
class HomologyAutomorphism:
    """An integer matrix preserving the intersection form, ``M^T J M = J``."""

    signature: SurfaceSignature
    matrix: Matrix

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.signature.rank
        if not is_square(m, n):
            raise DimensionMismatch(f"automorphism must be {n}x{n} for {self.signature}")
        jm = intersection_form(self.signature).matrix
        if mat_mul(mat_mul(transpose(m), jm), m) != jm:
            raise NotFormPreserving("M^T J M != J: matrix does not preserve the intersection form")
        if abs(determinant(m)) != 1:
            raise NotFormPreserving("matrix is not invertible over the integers")

    @property
    def rank(self) -> int:
        return self.signature.rank

    def __matmul__(self, other: "HomologyAutomorphism") -> "HomologyAutomorphism":
        """Composition ``self o other``."""
        if self.signature != other.signature:
            raise DimensionMismatch("automorphisms of different surfaces")
        return HomologyAutomorphism(self.signature, mat_mul(self.matrix, other.matrix))

    def __call__(self, x: Sequence[int]) -> Vector:
        return mat_vec(self.matrix, as_vector(x))

    def inverse(self) -> "HomologyAutomorphism":
        return HomologyAutomorphism(self.signature, _integer_inverse(self.matrix))


AutomorphismLike = Union[HomologyAutomorphism, Sequence[Sequence[int]]]


def as_automorphism(phi: AutomorphismLike, sig: SurfaceSignature) -> HomologyAutomorphism:
    if isinstance(phi, HomologyAutomorphism):
        if phi.signature != sig:
            raise DimensionMismatch(f"automorphism of {phi.signature} used on {sig}")
        return phi
    return HomologyAutomorphism(sig, as_matrix(phi))


def _integer_inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(v.denominator != 1 for v in tail):
            raise NotFormPreserving("matrix is not invertible over the integers")
        out.append(tuple(int(v) for v in tail))
    return tuple(out)


def check_curve(a: Sequence[int], sig: SurfaceSignature) -> Vector:
    """Validate that ``a`` can be the class of a simple closed curve."""
    a = as_vector(a)
    if len(a) != sig.rank:
        raise DimensionMismatch(f"curve of length {len(a)} on a rank-{sig.rank} surface")
    if not any(a):
        raise ZeroClass("the zero class is not represented by an essential simple closed curve")
    if math.gcd(*a) != 1:
        raise NotPrimitive(f"class {a} is not primitive (gcd {math.gcd(*a)})")
    return a


def _dual(a: Vector, sig: SurfaceSignature) -> Vector:
    # w = J a, so that <x, a> = w . x
    return mat_vec(intersection_form(sig).matrix, a)


def transvection_matrix(
    a: Sequence[int], sig: SurfaceSignature, power: int = 1
) -> HomologyAutomorphism:
    """Action of the right-handed Dehn twist about a curve of class ``a``,
    ``x -> x + <x, a> a``, raised to ``power``.

    Since ``<a, a> = 0`` the power has the closed form ``I + power * a (Ja)^T``.
    """
    a = check_curve(a, sig)
    w = _dual(a, sig)
    n = sig.rank
    m = tuple(
        tuple(checked(int(i == j) + power * a[i] * w[j]) for j in range(n)) for i in range(n)
    )
    return HomologyAutomorphism(sig, m)


@dataclass(frozen=True)
class TwistWord:
    """A product of Dehn-twist powers; the leftmost letter is applied last."""

    letters: tuple[tuple[Vector, int], ...] = ()

    def __post_init__(self) -> None:
        letters = tuple((as_vector(c), int(e)) for c, e in self.letters)
        for curve, exp in letters:
            if exp == 0:
                raise WordSyntaxError("twist exponents must be nonzero")
            if not any(curve):
                raise ZeroClass("twist about the zero class")
            if math.gcd(*curve) != 1:
                raise NotPrimitive(f"twist curve {curve} is not primitive")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.letters + other.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((c, -e) for c, e in reversed(self.letters)))


def compile_word(word: TwistWord, sig: SurfaceSignature) -> HomologyAutomorphism:
    n = sig.rank
    m = [list(row) for row in identity(n)]
    for curve, exp in reversed(word.letters):
        a = check_curve(curve, sig)
        w = _dual(a, sig)
        # T_a^e M = M + e a (w^T M)
        r = [sum(w[i] * m[i][j] for i in range(n)) for j in range(n)]
        for i in range(n):
            if a[i]:
                f = exp * a[i]
                row = m[i]
                for j in range(n):
                    if r[j]:
                        row[j] = checked(row[j] + f * r[j])
    return HomologyAutomorphism(sig, as_matrix(m))


_TERM_RE = re.compile(r"\s*T\[([^\]]*)\](?:\^([+-]?[0-9]+))?")
_INT_RE = re.compile(r"\s*[+-]?[0-9]+\s*\Z")


def parse_word(text: str, sig: SurfaceSignature) -> TwistWord:
    """Parse ``T[a1] T[1,0]^-2 ...``. The empty string is the identity."""
    letters: list[tuple[Vector, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"expected a term 'T[curve]' at offset {pos} in {text!r}")
        body = m.group(1).strip()
        idx = sig.band_index(body)
        if idx is not None:
            curve = basis_vector(sig, idx)
        else:
            parts = body.split(",")
            if not all(_INT_RE.match(p) for p in parts):
                raise WordSyntaxError(f"unknown curve {body!r} for {sig}")
            curve = tuple(int(p) for p in parts)
            if len(curve) != sig.rank:
                raise DimensionMismatch(
                    f"curve {body!r} has {len(curve)} coordinates, surface rank is {sig.rank}"
                )
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise WordSyntaxError(f"zero exponent at offset {m.start(2)} in {text!r}")
        check_curve(curve, sig)
        letters.append((curve, exp))
        pos = m.end()
    return TwistWord(tuple(letters))


def format_curve(curve: Sequence[int], sig: SurfaceSignature | None = None) -> str:
    if sig is not None and sum(abs(v) for v in curve) == 1 and 1 in curve:
        return sig.band_name(list(curve).index(1))
    return ",".join(str(v) for v in curve)


def format_word(word: TwistWord, sig: SurfaceSignature | None = None) -> str:
    terms = []
    for curve, exp in word.letters:
        term = f"T[{format_curve(curve, sig)}]"
        if exp != 1:
            term += f"^{exp}"
        terms.append(term)
    return " ".join(terms)


def pushforward_form(s: SeifertForm, phi: AutomorphismLike) -> SeifertForm:
    """Seifert form of ``f o phi``: ``M^T V M``."""
    m = as_automorphism(phi, s.signature).matrix
    return validate_seifert(mat_mul(mat_mul(transpose(m), s.matrix), m), s.signature)


def realizability_defect(s: SeifertForm, phi: AutomorphismLike) -> int | None:
    """First basis index ``i`` with ``q(M e_i) != q(e_i)``, or None.

    Checking the basis suffices: ``q o M`` and ``q`` are quadratic refinements
    of the same bilinear form (M preserves J), so they agree everywhere once
    they agree on a basis.
    """
    m = as_automorphism(phi, s.signature).matrix
    q = s.q2()
    for i in range(s.rank):
        column = to_mask(row[i] for row in m)
        if q(column) != q(1 << i):
            return i
    return None


def is_realizable(s: SeifertForm, phi: AutomorphismLike) -> bool:
    """Whether ``f o phi`` is regularly homotopic to ``f``."""
    return realizability_defect(s, phi) is None


MAX_EXHAUSTIVE_RANK = 16


def is_realizable_exhaustive(s: SeifertForm, phi: AutomorphismLike) -> bool:
    """Brute-force oracle: compare ``q(Mx)`` and ``q(x)`` on all of Z_2^n."""
    m = as_automorphism(phi, s.signature).matrix
    n = s.rank
    if n > MAX_EXHAUSTIVE_RANK:
        raise ValueError(f"exhaustive check limited to rank {MAX_EXHAUSTIVE_RANK}")
    if n == 0:
        return True
    xs = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    v = np.array(s.matrix, dtype=np.int64) % 2
    mm = np.array(m, dtype=np.int64) % 2
    ys = (xs @ mm.T) % 2
    qx = ((xs @ v) * xs).sum(axis=1) % 2
    qy = ((ys @ v) * ys).sum(axis=1) % 2
    return bool(np.array_equal(qx, qy))


def twist_realizability(s: SeifertForm, a: Sequence[int]) -> bool:
    """Fast path for a single twist: ``q(T_a x) = q(x) + <x,a>(q(a) + 1)``."""
    a = check_curve(a, s.signature)
    if eval_q2(s, a) == 1:
        return True
    return all(v % 2 == 0 for v in _dual(a, s.signature))


@dataclass(frozen=True)
class TwistWitness:
    """A class on which two mod-2 forms disagree.

    ``radical`` marks classes whose twist acts trivially on homology; those
    still witness inequivalence through the form values, but membership of
    the twist cannot tell the two embeddings apart.
    """

    curve: Vector
    radical: bool


def distinguishing_twist(s: SeifertForm, other: SeifertForm) -> TwistWitness | None:
    if s.signature != other.signature:
        raise DimensionMismatch(f"forms on {s.signature} and {other.signature}")
    sig = s.signature
    for i, (d, e) in enumerate(zip(s.diagonal, other.diagonal)):
        if (d - e) % 2:
            return TwistWitness(basis_vector(sig, i), sig.is_radical(i))
    # equal bilinear parts, so equal diagonals mod 2 means equal forms
    return None
