"""Exact computation in a tower of HNN extensions of AGL(1,Q) * Z.

Each stable letter f_l conjugates j to itself and t = aff(-1,2) to a chosen
minimal involution v_l.
"""

from .affine import IDENTITY, J, T, T_PRIME, AffineMap
from .dihedral import (
    CLASS_OF_T,
    BaseTranslations,
    ClassOfT,
    Cyclic,
    Minimal,
    centralizer,
    centralizer_contains,
    dihedral_membership,
    equiv_key,
    equivalent,
    euclid_centralizer_element,
    nth_root_involution,
)
from .hnn import ONE, DihedralMember, UnknownLetterError, Word
from .tower import (
    TowerState,
    conjugate_to_j,
    conjugator_from_t,
    ensure_letter,
    session_load,
    session_save,
    transporter,
)
from .words import WordSyntaxError, format_word, parse_word

__all__ = [
    "AffineMap", "IDENTITY", "J", "T", "T_PRIME",
    "CLASS_OF_T", "BaseTranslations", "ClassOfT", "Cyclic", "Minimal",
    "centralizer", "centralizer_contains", "dihedral_membership", "equiv_key",
    "equivalent", "euclid_centralizer_element", "nth_root_involution",
    "ONE", "DihedralMember", "UnknownLetterError", "Word",
    "TowerState", "conjugate_to_j", "conjugator_from_t", "ensure_letter",
    "session_load", "session_save", "transporter",
    "WordSyntaxError", "format_word", "parse_word",
]
