"""Valence rules shared by the SMILES reader and writer."""

from typing import Dict, Optional, Tuple

from hyperrxn.models.chem import OTHER_ELEMENT

STANDARD_VALENCES: Dict[str, Tuple[int, ...]] = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "F": (1,),
    "Si": (4,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# aromatic atoms of these elements donate one extra valence to the pi system
PI_DONORS = frozenset({"B", "C", "N", "P"})


def allowed_valences(element: str, charge: int = 0) -> Optional[Tuple[int, ...]]:
    """Return the valences an element may take at a given formal charge.

    Charged atoms shift to their isoelectronic neighbour: ``[N+]`` behaves
    like carbon (4), ``[O-]`` like fluorine (1), ``[B-]`` like carbon (4).

    Args:
        element: Supported element symbol or ``"other"``
        charge: Formal charge

    Returns:
        Ascending valences, or ``None`` when the element is not checked
    """
    if element == OTHER_ELEMENT or element not in STANDARD_VALENCES:
        return None
    base = STANDARD_VALENCES[element]
    if charge == 0:
        return base
    if element in ("C", "Si", "H"):
        shifted = tuple(v - abs(charge) for v in base)
    elif element == "B":
        shifted = tuple(v - charge for v in base)
    else:
        shifted = tuple(v + charge for v in base)
    return tuple(v for v in shifted if v >= 0)


def default_implicit_h(element: str, aromatic: bool, used: int) -> Optional[int]:
    """Hydrogen count of an organic-subset atom written without brackets.

    The lowest standard valence that accommodates ``used`` is chosen. Aromatic
    atoms only ever take their lowest valence.

    Args:
        element: Element symbol
        aromatic: Whether the atom is aromatic
        used: Sum of bond valences (aromatic bonds count as 1) plus any
            hydrogens folded in from explicit ``[H]`` atoms

    Returns:
        The implicit hydrogen count, or ``None`` when ``used`` exceeds every
        allowed valence
    """
    valences = STANDARD_VALENCES[element]
    if aromatic:
        if used > valences[-1]:
            return None
        pi = 1 if element in PI_DONORS else 0
        return max(0, valences[0] - used - pi)
    for valence in valences:
        if valence >= used:
            return valence - used
    return None


def radical_electrons(
    element: str, aromatic: bool, charge: int, used: int
) -> Optional[int]:
    """Unpaired electrons of a bracket atom, or ``None`` on valence overflow.

    Args:
        element: Element symbol or ``"other"``
        aromatic: Whether the atom is aromatic
        charge: Formal charge
        used: Sum of bond valences plus hydrogens

    Returns:
        Radical electron count (0 for unchecked elements and aromatic atoms)
    """
    valences = allowed_valences(element, charge)
    if valences is None:
        return 0
    if not valences or used > valences[-1]:
        return None
    if aromatic:
        return 0
    for valence in valences:
        if valence >= used:
            return valence - used
    return None
