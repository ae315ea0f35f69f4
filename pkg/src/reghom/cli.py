"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 negative decision
(not regularly homotopic, or a pass sequence that does not verify).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import __version__
from .algebra import SeifertForm
from .bands import SurfaceDocument, document_form, parse_document
from .errors import DimensionMismatch, DocumentError, OddParity, ReghomError
from .mcg import (
    TwistWord,
    compile_word,
    distinguishing_twist,
    parse_word,
    realizability_defect,
)
from .passes import (
    find_pass_sequence,
    format_sequence,
    net_signed_count,
    parse_sequence,
    pass_count_formula,
    regularly_homotopic,
    verify_sequence,
)
from .selftest import run_all

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_NEGATIVE = 3

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _vec(x: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


def _matrix_block(s: SeifertForm) -> str:
    lines = [f"seifert {s.signature}"] + [" ".join(str(v) for v in row) for row in s.matrix]
    return "\n".join(lines)


def _load(path: str) -> tuple[SurfaceDocument, SeifertForm]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ReghomError(f"cannot read {path}: {exc.strerror}") from None
    doc = parse_document(data)
    return doc, document_form(doc)


def _resolve_word(doc: SurfaceDocument, text: str) -> TwistWord:
    """Inline words win; a bare identifier falls back to the document's words."""
    sig = doc.signature
    try:
        return parse_word(text, sig)
    except ReghomError:
        name = text.strip()
        if _NAME_RE.match(name) and name in doc.words:
            return doc.words[name]
        raise


def _word_arg(args: argparse.Namespace) -> str:
    if args.word_opt is not None:
        return args.word_opt
    return args.word if args.word is not None else ""


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    doc, s = _load(args.file)
    out.write("valid: true\n")
    out.write(f"genus: {s.signature.genus}\n")
    out.write(f"boundary: {s.signature.boundary}\n")
    out.write(f"rank: {s.rank}\n")
    out.write(_matrix_block(s) + "\n")
    return EXIT_OK


def cmd_member(args: argparse.Namespace, out: TextIO) -> int:
    doc, s = _load(args.file)
    phi = compile_word(_resolve_word(doc, _word_arg(args)), s.signature)
    bad = realizability_defect(s, phi)
    out.write(f"member: {'true' if bad is None else 'false'}\n")
    if args.witness and bad is not None:
        e = tuple(int(i == bad) for i in range(s.rank))
        out.write(f"witness: {_vec(e)}\n")
        out.write(f"witness_band: {s.signature.band_name(bad)}\n")
    return EXIT_OK


def cmd_passcount(args: argparse.Namespace, out: TextIO) -> int:
    doc, s = _load(args.file)
    phi = compile_word(_resolve_word(doc, _word_arg(args)), s.signature)
    out.write(f"signed_pass_count: {pass_count_formula(s, phi)}\n")
    return EXIT_OK


def _load_pair(a: str, b: str) -> tuple[SeifertForm, SeifertForm]:
    _, s = _load(a)
    _, t = _load(b)
    if s.signature != t.signature:
        raise DimensionMismatch(f"surfaces differ: {s.signature} vs {t.signature}")
    return s, t


def cmd_sequence(args: argparse.Namespace, out: TextIO) -> int:
    s, t = _load_pair(args.file_a, args.file_b)
    if not regularly_homotopic(s, t):
        w = distinguishing_twist(s, t)
        assert w is not None
        out.write("result: not regularly homotopic\n")
        out.write(f"witness: {_vec(w.curve)}\n")
        out.write(f"witness_radical: {'true' if w.radical else 'false'}\n")
        return EXIT_NEGATIVE
    seq = find_pass_sequence(s, t)
    out.write("result: regularly homotopic\n")
    out.write(f"moves: {len(seq)}\n")
    out.write(format_sequence(seq))
    out.write(f"net_signed_count: {net_signed_count(seq)}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    s, t = _load_pair(args.file_a, args.file_b)
    try:
        text = Path(args.sequence).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ReghomError(f"cannot read {args.sequence}: {exc}") from None
    seq = parse_sequence(text)
    ok = verify_sequence(s, seq, t)
    out.write(f"verified: {'true' if ok else 'false'}\n")
    out.write(f"net_signed_count: {net_signed_count(seq)}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_selftest(args: argparse.Namespace, out: TextIO) -> int:
    out.write(f"seed: {args.seed}\n")
    out.write(f"size: {args.size}\n")
    out.write(f"cases: {args.cases}\n")
    results = run_all(args.seed, args.size, args.cases)
    for r in results:
        status = "pass" if r.passed else "fail"
        out.write(f"{r.name}: {status} cases={r.cases} digest={r.digest}\n")
        if r.detail:
            out.write(f"{r.name}_counterexample: {r.detail}\n")
    ok = all(r.passed for r in results)
    out.write(f"all: {'pass' if ok else 'fail'}\n")
    return EXIT_OK if ok else EXIT_INTERNAL


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reghom",
        description="Regular homotopy and pass moves for surfaces with boundary in S^3.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a surface file and print its Seifert matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in (
        ("member", cmd_member, "is the mapping class realizable by regular homotopy?"),
        ("passcount", cmd_passcount, "signed number of pass moves realizing a mapping class"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("word", nargs="?", help="twist word, e.g. 'T[a1]^2 T[1,1]', or a word name")
        p.add_argument("--word", dest="word_opt", metavar="WORD")
        if name == "member":
            p.add_argument("--witness", action="store_true", help="print a basis class where q changes")
        p.set_defaults(func=func)

    p = sub.add_parser("sequence", help="pass sequence between two embeddings of one surface")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="replay a pass sequence file")
    p.add_argument("file_a")
    p.add_argument("sequence")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the randomized property suite")
    p.add_argument("--seed", type=_u64, default=1)
    p.add_argument("--size", type=_nonneg, default=6, help="maximum homology rank")
    p.add_argument("--cases", type=_nonneg, default=200, help="cases per property")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    func: Callable[[argparse.Namespace, TextIO], int] = args.func
    try:
        return func(args, out)
    except OddParity as exc:
        err.write(f"error: OddParity: not a member of the realizable subgroup: {exc}\n")
        return EXIT_INVALID
    except DocumentError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        if exc.line:
            err.write(f"line: {exc.line}\ncol: {exc.col}\n")
        return EXIT_INVALID
    except ReghomError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        err.write(f"error: internal: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
