"""Checkable claims about genus-2 Heegaard diagrams and their fundamental groups.

Submodules: :mod:`.words` (free group words), :mod:`.presentation` (Tietze
moves and certificates), :mod:`.groupcalc` (coset enumeration, homology,
quotients), :mod:`.diagram` (realizability of relator pairs) and
:mod:`.atlas` (the eight worked examples and their checks).
"""

from .atlas import CheckResult, ManifoldRecord, Report, load_atlas, run_atlas, verify_manifold
from .diagram import RotationSystem, realize
from .groupcalc import AbelianGroup, Index, homology_h1, smith_normal_form, todd_coxeter
from .presentation import (
    ConsequenceCertificate,
    Presentation,
    TietzeCertificate,
    search_consequence,
    simplify_greedy,
    verify_consequence,
    verify_tietze_certificate,
)
from .words import Alphabet, CyclicWord, Word, cyclic_normal_form, format_word, parse_word

__all__ = [
    "AbelianGroup",
    "Alphabet",
    "CheckResult",
    "ConsequenceCertificate",
    "CyclicWord",
    "Index",
    "ManifoldRecord",
    "Presentation",
    "Report",
    "RotationSystem",
    "TietzeCertificate",
    "Word",
    "cyclic_normal_form",
    "format_word",
    "homology_h1",
    "load_atlas",
    "parse_word",
    "realize",
    "run_atlas",
    "search_consequence",
    "simplify_greedy",
    "smith_normal_form",
    "todd_coxeter",
    "verify_consequence",
    "verify_manifold",
    "verify_tietze_certificate",
]
