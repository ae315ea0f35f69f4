"""Regular homotopy of surfaces with boundary embedded in S^3.

Embeddings are represented by Seifert matrices on a fixed spine basis; mapping
classes by their action on first homology.
"""

from .algebra import (
    IntersectionForm,
    QuadraticFormZ2,
    SeifertForm,
    SurfaceSignature,
    basis_sum,
    eval_q2,
    eval_qz,
    intersection_form,
    pairing,
    validate_seifert,
)
from .bands import (
    BandPresentation,
    Crossing,
    MatrixBlock,
    SurfaceDocument,
    document_form,
    elaborate_seifert,
    parse_document,
    presentation_from_seifert,
    serialize,
)
from .mcg import (
    HomologyAutomorphism,
    TwistWitness,
    TwistWord,
    compile_word,
    distinguishing_twist,
    is_realizable,
    is_realizable_exhaustive,
    parse_word,
    pushforward_form,
    transvection_matrix,
    twist_realizability,
)
from .passes import (
    PassMove,
    apply_pass_move,
    find_pass_sequence,
    net_signed_count,
    pass_count_formula,
    pass_count_in_basis,
    regularly_homotopic,
    verify_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "IntersectionForm",
    "QuadraticFormZ2",
    "SeifertForm",
    "SurfaceSignature",
    "basis_sum",
    "eval_q2",
    "eval_qz",
    "intersection_form",
    "pairing",
    "validate_seifert",
    "BandPresentation",
    "Crossing",
    "MatrixBlock",
    "SurfaceDocument",
    "document_form",
    "elaborate_seifert",
    "parse_document",
    "presentation_from_seifert",
    "serialize",
    "HomologyAutomorphism",
    "TwistWitness",
    "TwistWord",
    "compile_word",
    "distinguishing_twist",
    "is_realizable",
    "is_realizable_exhaustive",
    "parse_word",
    "pushforward_form",
    "transvection_matrix",
    "twist_realizability",
    "PassMove",
    "apply_pass_move",
    "find_pass_sequence",
    "net_signed_count",
    "pass_count_formula",
    "pass_count_in_basis",
    "regularly_homotopic",
    "verify_sequence",
]
