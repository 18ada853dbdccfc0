"""Exact-arithmetic certification of coefficient positivity for the GRZ rational function."""

__version__ = "0.1.0"

from .exact import binomial, multinomial, paper_constants  # noqa: E402
from .grz import (  # noqa: E402
    BlockId,
    CertReport,
    block_coefficient,
    build_h,
    lemma1_coefficient,
    lemma2_positivity,
    lemma3_certify,
    lemma4_scan,
    lemma5_scan,
    theorem_block,
    verify_lemma2_identity,
)
from .series import MultiSeries, UniSeries, min_coefficient, multi_inverse_grz, uni_inverse  # noqa: E402
from .unipoly import RootInterval, UniPoly, count_roots, isolate_roots, sturm_chain  # noqa: E402

__all__ = [
    "BlockId", "CertReport", "MultiSeries", "RootInterval", "UniPoly", "UniSeries",
    "binomial", "block_coefficient", "build_h", "count_roots", "isolate_roots",
    "lemma1_coefficient", "lemma2_positivity", "lemma3_certify", "lemma4_scan", "lemma5_scan",
    "min_coefficient", "multi_inverse_grz", "multinomial", "paper_constants", "sturm_chain",
    "theorem_block", "uni_inverse", "verify_lemma2_identity",
]
