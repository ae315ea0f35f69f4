"""Seeded random generators and the randomized property suite behind
``reghom selftest``.

Every property draws its cases from a ``random.Random`` seeded by the run
seed and the property name, so a (seed, size, cases) triple always replays
the same case list. Each property returns a short description of the case it
checked; the descriptions are hashed into a digest printed with the result.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable

from .algebra import (
    SeifertForm,
    SurfaceSignature,
    basis_sum,
    eval_q2,
    eval_qz,
    from_mask,
    intersection_form,
    pairing,
)
from .bands import (
    BandPresentation,
    Crossing,
    MatrixBlock,
    SurfaceDocument,
    elaborate_seifert,
    parse_document,
    presentation_from_seifert,
    serialize,
)
from .errors import EntryOverflow, OddParity
from .linalg import mat_mul, transpose
from .mcg import (
    TwistWord,
    compile_word,
    is_realizable,
    is_realizable_exhaustive,
    pushforward_form,
    transvection_matrix,
    twist_realizability,
)
from .passes import (
    PassMove,
    apply_pass_move,
    apply_sequence,
    find_pass_sequence,
    net_signed_count,
    pass_count_formula,
    pass_count_in_basis,
    verify_sequence,
)


# -- generators ---------------------------------------------------------------


def signatures_up_to(max_rank: int, min_rank: int = 0) -> list[SurfaceSignature]:
    out = []
    for g in range(max_rank // 2 + 1):
        for k in range(1, max_rank - 2 * g + 2):
            if min_rank <= 2 * g + k - 1 <= max_rank:
                out.append(SurfaceSignature(g, k))
    return out


def random_signature(rng: random.Random, max_rank: int, min_rank: int = 0) -> SurfaceSignature:
    return rng.choice(signatures_up_to(max_rank, min_rank))


def random_seifert(rng: random.Random, sig: SurfaceSignature, spread: int = 3) -> SeifertForm:
    n = sig.rank
    jm = intersection_form(sig).matrix
    rows = [[jm[i][j] if i > j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] += rng.randint(-spread, spread)
        for j in range(i + 1, n):
            c = rng.randint(-spread, spread)
            rows[i][j] += c
            rows[j][i] += c
    return SeifertForm(sig, rows)


def random_curve(rng: random.Random, sig: SurfaceSignature, spread: int = 2) -> tuple[int, ...]:
    """A random primitive class; basis classes and sums of two are favoured."""
    n = sig.rank
    if n == 0:
        raise ValueError("the disk has no essential curves")
    r = rng.random()
    if r < 0.3:
        i = rng.randrange(n)
        return tuple(int(t == i) for t in range(n))
    if r < 0.5 and n >= 2:
        i, j = rng.sample(range(n), 2)
        s = rng.choice((1, -1))
        return tuple(1 if t == i else s if t == j else 0 for t in range(n))
    while True:
        a = tuple(rng.randint(-spread, spread) for _ in range(n))
        if any(a) and math.gcd(*a) == 1:
            return a


def random_word(rng: random.Random, sig: SurfaceSignature, max_len: int = 4) -> TwistWord:
    if sig.rank == 0:
        return TwistWord()
    letters = []
    for _ in range(rng.randint(0, max_len)):
        letters.append((random_curve(rng, sig), rng.choice((1, -1, 2, -2))))
    return TwistWord(tuple(letters))


def random_realizable_word(rng: random.Random, s: SeifertForm, max_len: int = 3) -> TwistWord:
    """Product of twists each realizable on its own, hence realizable."""
    sig = s.signature
    if sig.rank == 0:
        return TwistWord()
    letters = []
    for _ in range(rng.randint(0, max_len)):
        c = random_curve(rng, sig)
        if twist_realizability(s, c):
            e = rng.choice((1, -1, 2, -2))
        else:
            e = rng.choice((2, -2))
        letters.append((c, e))
    return TwistWord(tuple(letters))


def random_pass_sequence(
    rng: random.Random, sig: SurfaceSignature, max_len: int = 50
) -> tuple[PassMove, ...]:
    n = sig.rank
    if n == 0:
        return ()
    return tuple(
        PassMove(rng.randint(1, n), rng.randint(1, n), rng.choice((1, -1)))
        for _ in range(rng.randint(0, max_len))
    )


def random_presentation(
    rng: random.Random, sig: SurfaceSignature, max_crossings: int = 8
) -> BandPresentation:
    names = sig.band_names()
    twists = {nm: rng.randint(-3, 3) for nm in names if rng.random() < 0.6}
    crossings = []
    if len(names) >= 2:
        for _ in range(rng.randint(0, max_crossings)):
            over, under = rng.sample(names, 2)
            crossings.append(Crossing(over, under, rng.choice((1, -1))))
    return BandPresentation(sig, twists, tuple(crossings))


def random_equivalent(rng: random.Random, s: SeifertForm, spread: int = 3) -> SeifertForm:
    """A form with the same mod-2 quadratic form: a symmetric perturbation
    with even diagonal."""
    n = s.rank
    rows = [list(r) for r in s.matrix]
    for i in range(n):
        rows[i][i] += 2 * rng.randint(-spread, spread)
        for j in range(i + 1, n):
            c = rng.randint(-spread, spread)
            rows[i][j] += c
            rows[j][i] += c
    return SeifertForm(s.signature, rows)


# -- properties ---------------------------------------------------------------


class PropertyFailure(AssertionError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PropertyFailure(msg)


def _case(rng: random.Random, size: int, min_rank: int = 0) -> tuple[SurfaceSignature, SeifertForm]:
    sig = random_signature(rng, size, min_rank)
    return sig, random_seifert(rng, sig)


def prop_q2_mod2_descent(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    x = tuple(rng.randint(-9, 9) for _ in range(sig.rank))
    y = tuple(rng.randint(-9, 9) for _ in range(sig.rank))
    _require(eval_q2(s, [a + 2 * b for a, b in zip(x, y)]) == eval_q2(s, x), f"{s.matrix} {x} {y}")
    return f"{s.matrix}|{x}|{y}"


def prop_q2_polarization(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 8))
    form = intersection_form(sig)
    n = sig.rank
    vecs = [from_mask(m, n) for m in range(2**n)]
    q = [eval_q2(s, v) for v in vecs]
    for a, b in itertools.product(range(2**n), repeat=2):
        cross = pairing(form, vecs[a], vecs[b]) % 2
        _require(q[a ^ b] == (q[a] + q[b] + cross) % 2, f"{s.matrix} at {vecs[a]}, {vecs[b]}")
    return f"{s.matrix}"


def prop_qz_even(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    x = tuple(rng.randint(-9, 9) for _ in range(sig.rank))
    _require(eval_qz(s, x) == eval_qz(s, tuple(-v for v in x)), f"{s.matrix} {x}")
    return f"{s.matrix}|{x}"


def prop_antisymmetric_part_vanishes(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    x = tuple(rng.randint(-9, 9) for _ in range(sig.rank))
    _require(pairing(intersection_form(sig), x, x) == 0, f"{x}")
    sym = [[s.matrix[i][j] + s.matrix[j][i] for j in range(sig.rank)] for i in range(sig.rank)]
    twice = sum(x[i] * sym[i][j] * x[j] for i in range(sig.rank) for j in range(sig.rank))
    _require(2 * eval_qz(s, x) == twice, f"{s.matrix} {x}")
    return f"{s.matrix}|{x}"


def prop_roundtrip(rng: random.Random, size: int) -> str:
    sig = random_signature(rng, size)
    if rng.random() < 0.5:
        surface = random_presentation(rng, sig)
    else:
        surface = MatrixBlock(sig, random_seifert(rng, sig).matrix)
    words = {f"w{i}": random_word(rng, sig, 3) for i in range(rng.randint(0, 2))}
    doc = SurfaceDocument(surface, words)
    text = serialize(doc)
    _require(parse_document(text) == doc, text)
    return text


def prop_elaboration_is_seifert(rng: random.Random, size: int) -> str:
    sig = random_signature(rng, size)
    p = random_presentation(rng, sig)
    v = elaborate_seifert(p).matrix
    jm = intersection_form(sig).matrix
    n = sig.rank
    _require(all(v[i][j] - v[j][i] == jm[i][j] for i in range(n) for j in range(n)), f"{p}")
    return repr(p)


def prop_crossing_order(rng: random.Random, size: int) -> str:
    sig = random_signature(rng, size)
    p = random_presentation(rng, sig)
    shuffled = list(p.crossings)
    rng.shuffle(shuffled)
    q = BandPresentation(sig, dict(p.twists), tuple(shuffled))
    _require(elaborate_seifert(p) == elaborate_seifert(q), f"{p}")
    return repr(q)


def prop_canceling_pair(rng: random.Random, size: int) -> str:
    sig = random_signature(rng, size, min_rank=2)
    p = random_presentation(rng, sig)
    over, under = rng.sample(sig.band_names(), 2)
    sign = rng.choice((1, -1))
    crossings = list(p.crossings)
    crossings.insert(rng.randint(0, len(crossings)), Crossing(over, under, sign))
    # a crossing contributes symmetrically, so either band order cancels
    if rng.random() < 0.5:
        over, under = under, over
    crossings.insert(rng.randint(0, len(crossings)), Crossing(over, under, -sign))
    q = BandPresentation(sig, dict(p.twists), tuple(crossings))
    _require(elaborate_seifert(p) == elaborate_seifert(q), f"{q}")
    return repr(q)


def prop_surjective_elaboration(rng: random.Random, size: int) -> str:
    _, s = _case(rng, size)
    _require(elaborate_seifert(presentation_from_seifert(s)) == s, f"{s.matrix}")
    return f"{s.matrix}"


def prop_words_preserve_form(rng: random.Random, size: int) -> str:
    sig = random_signature(rng, size)
    m = compile_word(random_word(rng, sig), sig).matrix
    jm = intersection_form(sig).matrix
    _require(mat_mul(mat_mul(transpose(m), jm), m) == jm, f"{m}")
    return f"{m}"


def prop_basis_check_exhaustive(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 12))
    phi = compile_word(random_word(rng, sig), sig)
    _require(is_realizable(s, phi) == is_realizable_exhaustive(s, phi), f"{s.matrix} {phi.matrix}")
    return f"{s.matrix}|{phi.matrix}"


def prop_membership_subgroup(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    phi = compile_word(random_realizable_word(rng, s), sig)
    psi = compile_word(random_realizable_word(rng, s), sig)
    _require(is_realizable(s, phi) and is_realizable(s, psi), "generator produced a non-member")
    _require(is_realizable(s, phi @ psi), f"composition {phi.matrix} {psi.matrix}")
    _require(is_realizable(s, phi.inverse()), f"inverse {phi.matrix}")
    return f"{s.matrix}|{phi.matrix}|{psi.matrix}"


def prop_twist_fast_path(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size, min_rank=1)
    a = random_curve(rng, sig)
    _require(
        twist_realizability(s, a) == is_realizable(s, transvection_matrix(a, sig)),
        f"{s.matrix} {a}",
    )
    return f"{s.matrix}|{a}"


def prop_depends_on_diag_mod2(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    t = random_equivalent(rng, s)
    phi = compile_word(random_word(rng, sig), sig)
    _require(is_realizable(s, phi) == is_realizable(t, phi), f"{s.matrix} {t.matrix} {phi.matrix}")
    return f"{s.matrix}|{t.matrix}|{phi.matrix}"


def prop_pushforward_diagonal(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 6), min_rank=1)
    phi = compile_word(random_word(rng, sig, 3), sig)
    try:
        pushed = pushforward_form(s, phi)
    except EntryOverflow:
        return "overflow-skip"
    same = all((d - e) % 2 == 0 for d, e in zip(pushed.diagonal, s.diagonal))
    _require(same == is_realizable_exhaustive(s, phi), f"{s.matrix} {phi.matrix}")
    return f"{s.matrix}|{phi.matrix}"


def prop_pass_move_q2_invariance(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 8), min_rank=1)
    n = sig.rank
    move = PassMove(rng.randint(1, n), rng.randint(1, n), rng.choice((1, -1)))
    t = apply_pass_move(s, move)
    for m in range(2**n):
        x = from_mask(m, n)
        _require(eval_q2(s, x) == eval_q2(t, x), f"{s.matrix} {move} {x}")
    return f"{s.matrix}|{move}"


def prop_conservation(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    seq = random_pass_sequence(rng, sig)
    t = apply_sequence(s, seq)
    sigma = basis_sum(sig)
    delta = eval_qz(t, sigma) - eval_qz(s, sigma)
    _require(2 * net_signed_count(seq) == delta, f"{s.matrix} {seq}")
    return f"{s.matrix}|{seq}"


def prop_path_independence(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    seq = random_pass_sequence(rng, sig, 20)
    t = apply_sequence(s, seq)
    other = find_pass_sequence(s, t)
    _require(verify_sequence(s, other, t), f"{s.matrix} {seq}")
    _require(net_signed_count(other) == net_signed_count(seq), f"{s.matrix} {seq}")
    return f"{s.matrix}|{seq}"


def prop_cocycle(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 8))
    phi = compile_word(random_realizable_word(rng, s, 2), sig)
    psi = compile_word(random_realizable_word(rng, s, 2), sig)
    sigma = basis_sum(sig)
    try:
        lhs = pass_count_in_basis(s, phi @ psi, sigma)
        rhs = pass_count_in_basis(s, phi, psi(sigma)) + pass_count_in_basis(s, psi, sigma)
    except EntryOverflow:
        return "overflow-skip"
    _require(lhs == rhs, f"{s.matrix} {phi.matrix} {psi.matrix}")
    return f"{s.matrix}|{phi.matrix}|{psi.matrix}"


def prop_parity_soundness(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, min(size, 6))
    phi = compile_word(random_word(rng, sig, 3), sig)
    member = is_realizable_exhaustive(s, phi)
    try:
        pass_count_formula(s, phi)
        raised = False
    except OddParity:
        raised = True
    except EntryOverflow:
        return "overflow-skip"
    _require(raised != member, f"{s.matrix} {phi.matrix}")
    return f"{s.matrix}|{phi.matrix}"


def prop_sequence_length(rng: random.Random, size: int) -> str:
    sig, s = _case(rng, size)
    t = random_equivalent(rng, s)
    seq = find_pass_sequence(s, t)
    n = sig.rank
    d = [[t.matrix[i][j] - s.matrix[i][j] for j in range(n)] for i in range(n)]
    expected = sum(abs(d[i][j]) for i in range(n) for j in range(i + 1, n))
    expected += sum(abs(d[i][i]) // 2 for i in range(n))
    _require(len(seq) == expected, f"{s.matrix} {t.matrix}")
    _require(verify_sequence(s, seq, t), f"{s.matrix} {t.matrix}")
    return f"{s.matrix}|{t.matrix}"


Property = Callable[[random.Random, int], str]

PROPERTIES: dict[str, Property] = {
    "q2_mod2_descent": prop_q2_mod2_descent,
    "q2_polarization": prop_q2_polarization,
    "qz_even": prop_qz_even,
    "antisymmetric_part_vanishes": prop_antisymmetric_part_vanishes,
    "document_roundtrip": prop_roundtrip,
    "elaboration_is_seifert": prop_elaboration_is_seifert,
    "crossing_order_independence": prop_crossing_order,
    "canceling_pair_invariance": prop_canceling_pair,
    "elaboration_surjective": prop_surjective_elaboration,
    "words_preserve_intersection_form": prop_words_preserve_form,
    "basis_check_matches_exhaustive": prop_basis_check_exhaustive,
    "membership_is_subgroup": prop_membership_subgroup,
    "twist_fast_path_agrees": prop_twist_fast_path,
    "membership_depends_on_diagonal_mod2": prop_depends_on_diag_mod2,
    "pushforward_diagonal_matches_membership": prop_pushforward_diagonal,
    "pass_move_preserves_q2": prop_pass_move_q2_invariance,
    "pass_count_conservation": prop_conservation,
    "pass_count_path_independence": prop_path_independence,
    "cocycle_identity": prop_cocycle,
    "parity_soundness": prop_parity_soundness,
    "pass_sequence_length": prop_sequence_length,
}

# properties that need at least this rank to have any case at all
_MIN_RANK = {
    "canceling_pair_invariance": 2,
    "twist_fast_path_agrees": 1,
    "pushforward_diagonal_matches_membership": 1,
    "pass_move_preserves_q2": 1,
}


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    cases: int
    digest: str
    detail: str = ""


def run_property(name: str, seed: int, size: int, cases: int) -> PropertyResult:
    prop = PROPERTIES[name]
    rng = random.Random(f"{seed}:{name}")
    h = hashlib.sha256()
    ran = 0
    if size < _MIN_RANK.get(name, 0):
        return PropertyResult(name, True, 0, h.hexdigest()[:16])
    for _ in range(cases):
        try:
            h.update(prop(rng, size).encode())
        except PropertyFailure as exc:
            return PropertyResult(name, False, ran + 1, h.hexdigest()[:16], str(exc))
        ran += 1
    return PropertyResult(name, True, ran, h.hexdigest()[:16])


def run_all(seed: int, size: int, cases: int) -> list[PropertyResult]:
    if size <= 0 or cases <= 0:
        return [PropertyResult(name, True, 0, hashlib.sha256().hexdigest()[:16]) for name in PROPERTIES]
    return [run_property(name, seed, size, cases) for name in PROPERTIES]
