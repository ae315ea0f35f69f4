"""Text format for embedded surfaces.

A document describes one surface, either as bands on the standard spine::

    surface genus=1 boundary=1
    twist a1 -1            # full twists of band a1
    twist b1 -1
    cross a1 over b1 +     # signed crossing of band a1 over band b1

or directly as a Seifert matrix::

    seifert genus=1 boundary=1
    -1 1
     0 -1

Either form may be followed by named twist words, ``word NAME = T[a1]^2 ...``.
``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .algebra import SeifertForm, SurfaceSignature, intersection_form
from .errors import (
    DocumentError,
    DocumentSyntaxError,
    DuplicateTwistDeclaration,
    InvalidSignature,
    MissingSurfaceHeader,
    ReghomError,
    SelfCrossing,
    UnknownBandName,
)
from .linalg import INT64_MAX, Matrix, as_matrix
from .mcg import TwistWord, format_word, parse_word

# Keeps parsing total: a header cannot request an absurdly large matrix.
MAX_RANK = 512

_UINT_RE = re.compile(r"[0-9]+\Z")
_SINT_RE = re.compile(r"[+-]?[0-9]+\Z")
_SIGN_RE = re.compile(r"([+-])1?\Z")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Crossing:
    over: str
    under: str
    sign: int


@dataclass(frozen=True)
class BandPresentation:
    signature: SurfaceSignature
    twists: dict[str, int] = field(default_factory=dict)
    crossings: tuple[Crossing, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", tuple(self.crossings))
        for name in list(self.twists) + [n for c in self.crossings for n in (c.over, c.under)]:
            if self.signature.band_index(name) is None:
                raise UnknownBandName(f"no band named {name!r} on a surface with {self.signature}")
        for c in self.crossings:
            if c.over == c.under:
                raise SelfCrossing(f"band {c.over} crosses itself; use a twist instead")
            if c.sign not in (1, -1):
                raise ValueError(f"crossing sign must be +1 or -1, got {c.sign!r}")


@dataclass(frozen=True)
class MatrixBlock:
    signature: SurfaceSignature
    rows: Matrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", as_matrix(self.rows))


@dataclass(frozen=True)
class SurfaceDocument:
    surface: Union[BandPresentation, MatrixBlock]
    words: dict[str, TwistWord] = field(default_factory=dict)

    @property
    def signature(self) -> SurfaceSignature:
        return self.surface.signature


def elaborate_seifert(p: BandPresentation) -> SeifertForm:
    """Seifert matrix of a band presentation.

    ``V = V_flat + C + T``: the flat spine contributes the strictly lower
    triangle of J, each crossing adds its sign to both symmetric entries, and
    each full twist adds its sign to the band's self-linking.
    """
    sig = p.signature
    n = sig.rank
    jm = intersection_form(sig).matrix
    rows = [[jm[i][j] if i > j else 0 for j in range(n)] for i in range(n)]
    for name, t in p.twists.items():
        i = sig.band_index(name)
        rows[i][i] += t
    for c in p.crossings:
        i, j = sig.band_index(c.over), sig.band_index(c.under)
        rows[i][j] += c.sign
        rows[j][i] += c.sign
    return SeifertForm(sig, rows)


def document_form(doc: SurfaceDocument) -> SeifertForm:
    if isinstance(doc.surface, MatrixBlock):
        return SeifertForm(doc.surface.signature, doc.surface.rows)
    return elaborate_seifert(doc.surface)


def _tokens(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _int(tok: tuple[int, str], lineno: int, pattern: re.Pattern[str], what: str) -> int:
    col, text = tok
    if not pattern.match(text) or not text.isascii():
        raise DocumentSyntaxError(lineno, col, what, text)
    value = int(text)
    if abs(value) > INT64_MAX:
        raise DocumentSyntaxError(lineno, col, f"{what} within 64-bit range", text)
    return value


def _header(toks: list[tuple[int, str]], lineno: int) -> SurfaceSignature:
    kw = toks[0][1]
    if len(toks) < 3:
        col = toks[-1][0] + len(toks[-1][1])
        raise DocumentSyntaxError(lineno, col, "genus=<int> boundary=<int>" if len(toks) == 1 else "boundary=<int>")
    if len(toks) > 3:
        raise DocumentSyntaxError(lineno, toks[3][0], "end of line", toks[3][1])
    values = []
    for (col, text), key in zip(toks[1:], ("genus=", "boundary=")):
        if not text.startswith(key):
            raise DocumentSyntaxError(lineno, col, f"{key}<int>", text)
        values.append(_int((col + len(key), text[len(key):]), lineno, _UINT_RE, "unsigned integer"))
    try:
        sig = SurfaceSignature(*values)
    except InvalidSignature as exc:
        raise DocumentError(str(exc), lineno, toks[2][0]) from None
    if sig.rank > MAX_RANK:
        raise DocumentError(f"{kw} of rank {sig.rank} exceeds the supported {MAX_RANK}", lineno, toks[1][0])
    return sig


def _band(tok: tuple[int, str], lineno: int, sig: SurfaceSignature) -> str:
    col, name = tok
    if sig.band_index(name) is None:
        raise UnknownBandName(f"no band named {name!r} on a surface with {sig}", lineno, col)
    return name


def _lines(text: str) -> Iterator[tuple[int, str, list[tuple[int, str]]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if toks:
            yield lineno, line, toks


def _word_line(
    line: str, toks: list[tuple[int, str]], lineno: int, sig: SurfaceSignature,
    words: dict[str, TwistWord],
) -> None:
    if len(toks) < 3 or toks[2][1] != "=":
        col = toks[2][0] if len(toks) > 2 else len(line) + 1
        raise DocumentSyntaxError(lineno, col, "word <name> = <twist word>")
    col, name = toks[1]
    if not _NAME_RE.match(name):
        raise DocumentSyntaxError(lineno, col, "word name", name)
    if name in words:
        raise DocumentError(f"word {name!r} is defined twice", lineno, col)
    body_col = toks[3][0] if len(toks) > 3 else len(line) + 1
    try:
        words[name] = parse_word(line[body_col - 1:], sig)
    except ReghomError as exc:
        raise DocumentError(f"bad twist word: {exc}", lineno, body_col) from None


def parse_document(text: Union[str, bytes]) -> SurfaceDocument:
    """Parse a surface document. Raises a :class:`DocumentError` subclass
    carrying line and column on any malformed input."""
    if isinstance(text, (bytes, bytearray)):
        raw = bytes(text)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            before = raw[: exc.start]
            col = exc.start - (before.rfind(b"\n") + 1) + 1
            raise DocumentSyntaxError(before.count(b"\n") + 1, col, "UTF-8 text") from None
    lines = list(_lines(text))
    if not lines:
        raise MissingSurfaceHeader("document has no 'surface' or 'seifert' header")
    lineno, _, toks = lines[0]
    kw = toks[0][1]
    if kw in ("twist", "cross", "word"):
        raise MissingSurfaceHeader(f"'{kw}' before the surface header", lineno, toks[0][0])
    if kw not in ("surface", "seifert"):
        raise DocumentSyntaxError(lineno, toks[0][0], "'surface' or 'seifert'", kw)
    sig = _header(toks, lineno)
    is_matrix = kw == "seifert"

    pos = 1
    rows: list[tuple[int, ...]] = []
    if is_matrix:
        n = sig.rank
        while len(rows) < n:
            if pos == len(lines):
                last = len(text.splitlines()) + 1
                raise DocumentSyntaxError(last, 1, f"matrix row {len(rows) + 1} of {n}")
            lineno, line, toks = lines[pos]
            if len(toks) != n or not _SINT_RE.match(toks[0][1]):
                col = toks[n][0] if len(toks) > n else toks[0][0] if len(toks) == n else len(line) + 1
                raise DocumentSyntaxError(lineno, col, f"{n} integers for matrix row {len(rows) + 1}")
            rows.append(tuple(_int(t, lineno, _SINT_RE, "signed integer") for t in toks))
            pos += 1

    twists: dict[str, int] = {}
    crossings: list[Crossing] = []
    words: dict[str, TwistWord] = {}
    for lineno, line, toks in lines[pos:]:
        kw = toks[0][1]
        if kw == "word":
            _word_line(line, toks, lineno, sig, words)
        elif kw in ("surface", "seifert"):
            raise DocumentError("a document describes exactly one surface", lineno, toks[0][0])
        elif kw == "twist" and not is_matrix:
            if len(toks) != 3:
                col = toks[3][0] if len(toks) > 3 else len(line) + 1
                raise DocumentSyntaxError(lineno, col, "twist <band> <signed int>")
            name = _band(toks[1], lineno, sig)
            if name in twists:
                raise DuplicateTwistDeclaration(f"band {name} already has a twist", lineno, toks[1][0])
            twists[name] = _int(toks[2], lineno, _SINT_RE, "signed integer")
        elif kw == "cross" and not is_matrix:
            if len(toks) != 5:
                col = toks[5][0] if len(toks) > 5 else len(line) + 1
                raise DocumentSyntaxError(lineno, col, "cross <band> over <band> <sign>")
            over = _band(toks[1], lineno, sig)
            if toks[2][1] != "over":
                raise DocumentSyntaxError(lineno, toks[2][0], "'over'", toks[2][1])
            under = _band(toks[3], lineno, sig)
            if over == under:
                raise SelfCrossing(f"band {over} crosses itself; use a twist instead", lineno, toks[3][0])
            m = _SIGN_RE.match(toks[4][1])
            if m is None:
                raise DocumentSyntaxError(lineno, toks[4][0], "sign '+', '-', '+1' or '-1'", toks[4][1])
            crossings.append(Crossing(over, under, 1 if m.group(1) == "+" else -1))
        else:
            expected = "'word'" if is_matrix else "'twist', 'cross' or 'word'"
            raise DocumentSyntaxError(lineno, toks[0][0], expected, kw)

    if is_matrix:
        return SurfaceDocument(MatrixBlock(sig, tuple(rows)), words)
    return SurfaceDocument(BandPresentation(sig, twists, tuple(crossings)), words)


def serialize(doc: SurfaceDocument) -> str:
    """Canonical text: twists in basis order, crossings and words in
    declaration order."""
    sig = doc.signature
    out: list[str] = []
    if isinstance(doc.surface, MatrixBlock):
        out.append(f"seifert {sig}")
        out += [" ".join(str(v) for v in row) for row in doc.surface.rows]
    else:
        p = doc.surface
        out.append(f"surface {sig}")
        for name in sorted(p.twists, key=sig.band_index):
            out.append(f"twist {name} {p.twists[name]}")
        for c in p.crossings:
            out.append(f"cross {c.over} over {c.under} {'+' if c.sign > 0 else '-'}")
    for name, word in doc.words.items():
        out.append(f"word {name} = {format_word(word, sig)}".rstrip())
    return "".join(line + "\n" for line in out)


def presentation_from_seifert(s: SeifertForm) -> BandPresentation:
    """A band presentation elaborating to ``s``: diagonal surplus becomes twists,
    off-diagonal surplus over the flat spine becomes crossings."""
    sig = s.signature
    names = sig.band_names()
    flat = elaborate_seifert(BandPresentation(sig)).matrix
    n = sig.rank
    twists = {names[i]: s.matrix[i][i] for i in range(n) if s.matrix[i][i]}
    crossings = []
    for i in range(n):
        for j in range(i + 1, n):
            d = s.matrix[i][j] - flat[i][j]
            crossings += [Crossing(names[i], names[j], 1 if d > 0 else -1)] * abs(d)
    return BandPresentation(sig, twists, tuple(crossings))
