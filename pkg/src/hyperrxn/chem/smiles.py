"""SMILES reader.

Converts one dot-free SMILES fragment into a :class:`MolecularGraph` of heavy
atoms. The supported subset is the organic subset, bracket atoms, branches and
ring closures (including ``%nn``). Stereo marks (``/``, ``\\``, ``@``),
isotopes and atom-map numbers are parsed and discarded. Explicit ``[H]`` atoms
attached to a single heavy atom are folded into that atom's hydrogen count.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hyperrxn.models.chem import (
    OTHER_ELEMENT,
    SUPPORTED_ELEMENTS,
    Atom,
    Bond,
    BondOrder,
    MolecularGraph,
)
from hyperrxn.utils.exceptions import (
    RxnParseError,
    RxnRingClosureError,
    RxnUnsupportedError,
    RxnValenceError,
)

from .valence import default_implicit_h, radical_electrons

logger = logging.getLogger(__name__)

ORGANIC_SUBSET = ("Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I")
AROMATIC_ORGANIC = {"b": "B", "c": "C", "n": "N", "o": "O", "p": "P", "s": "S"}
BRACKET_AROMATIC = ("se", "as", "b", "c", "n", "o", "p", "s")

ELEMENT_SYMBOLS = frozenset(
    """H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe Co Ni
    Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb Te I Xe
    Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf Ta W Re Os Ir Pt Au Hg
    Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es Fm Md No Lr Rf Db Sg
    Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og""".split()
)

BOND_SYMBOLS = {"-": BondOrder.SINGLE, "=": BondOrder.DOUBLE, "#": BondOrder.TRIPLE,
                ":": BondOrder.AROMATIC}
STEREO_BONDS = ("/", "\\")

_CHIRALITY = re.compile(r"@(?:@|TH[12]|AL[12]|SP[123]|TB\d{1,2}|OH\d{1,2})?")
_CHARGE = re.compile(r"(\+\+?\+?\+?|-(?:-?-?-?))(\d*)")


@dataclass
class _AtomDraft:
    element: str
    symbol: str
    aromatic: bool
    bracket: bool
    position: int
    charge: int = 0
    hydrogens: int = 0
    folded_h: int = 0


@dataclass
class _RingBond:
    atom: int
    symbol: Optional[str]
    position: int


@dataclass
class _Draft:
    text: str
    atoms: List[_AtomDraft] = field(default_factory=list)
    bonds: Dict[Tuple[int, int], Tuple[int, int, Optional[str], int]] = field(default_factory=dict)


def parse_molecule(smiles: str) -> MolecularGraph:
    """Parse a single-fragment SMILES string into a molecular graph.

    Args:
        smiles: SMILES text without ``.`` separators

    Returns:
        Heavy-atom graph with implicit hydrogens computed from standard
        valences (the lowest valence consistent with the bonds is chosen)

    Raises:
        RxnParseError: For syntax errors, with the byte offset of the token
        RxnRingClosureError: For unbalanced or conflicting ring closures
        RxnValenceError: For valence overflow or out-of-range H/charge
        RxnUnsupportedError: For wildcard atoms and unsupported bracket content

    Example:
        >>> mol = parse_molecule("[O-]C(=O)C")
        >>> [atom.formal_charge for atom in mol.atoms]
        [-1, 0, 0, 0]
    """
    if not smiles or not smiles.strip():
        raise RxnParseError("Empty SMILES string", text=smiles, position=0)
    draft = _Draft(text=smiles)
    _read_tokens(draft)
    _fold_hydrogens(draft)
    return _finish(draft)


def byte_offset(text: str, index: int) -> int:
    """Convert a character index of ``text`` into a UTF-8 byte offset."""
    return len(text[:index].encode("utf-8"))


def _syntax(draft: _Draft, message: str, index: int) -> RxnParseError:
    return RxnParseError(message, text=draft.text, position=byte_offset(draft.text, index))


def _read_tokens(draft: _Draft) -> None:
    text = draft.text
    prev: Optional[int] = None
    pending: Optional[Tuple[str, int]] = None
    branches: List[int] = []
    rings: Dict[int, _RingBond] = {}
    last = ""
    i = 0

    while i < len(text):
        ch = text[i]

        if ch == "(":
            if prev is None:
                raise _syntax(draft, "Branch opened before any atom", i)
            if pending is not None:
                raise _syntax(draft, "Bond symbol before '('", pending[1])
            branches.append(prev)
            last = "("
            i += 1
            continue

        if ch == ")":
            if not branches:
                raise _syntax(draft, "Unbalanced ')'", i)
            if last == "(":
                raise _syntax(draft, "Empty branch", i)
            if pending is not None:
                raise _syntax(draft, "Dangling bond symbol before ')'", pending[1])
            prev = branches.pop()
            last = ")"
            i += 1
            continue

        if ch in BOND_SYMBOLS or ch in STEREO_BONDS:
            if pending is not None:
                raise _syntax(draft, f"Two bond symbols in a row at {ch!r}", i)
            if prev is None:
                raise _syntax(draft, f"Bond symbol {ch!r} before any atom", i)
            pending = (ch, i)
            last = "bond"
            i += 1
            continue

        if ch == "$":
            raise RxnUnsupportedError(
                "Quadruple bonds are not supported", text=text, position=byte_offset(text, i)
            )

        if ch == ".":
            raise _syntax(draft, "Unexpected '.' inside a single molecule", i)

        if ch.isdigit() or ch == "%":
            start = i
            if ch == "%":
                digits = text[i + 1 : i + 3]
                if len(digits) != 2 or not digits.isdigit():
                    raise _syntax(draft, "Expected two digits after '%'", i)
                number = int(digits)
                i += 3
            else:
                number = int(ch)
                i += 1
            if prev is None:
                raise _syntax(draft, "Ring closure before any atom", start)
            symbol = pending[0] if pending else None
            if number in rings:
                opened = rings.pop(number)
                if symbol and opened.symbol and symbol != opened.symbol:
                    raise RxnRingClosureError(
                        f"Conflicting bond symbols on ring closure {number}",
                        text=text,
                        position=byte_offset(text, start),
                    )
                if opened.atom == prev:
                    raise RxnRingClosureError(
                        f"Ring closure {number} bonds an atom to itself",
                        text=text,
                        position=byte_offset(text, start),
                    )
                _add_bond(draft, opened.atom, prev, symbol or opened.symbol, start, ring=True)
            else:
                rings[number] = _RingBond(atom=prev, symbol=symbol, position=start)
            pending = None
            last = "ring"
            continue

        if ch == "[":
            end = text.find("]", i)
            if end < 0:
                raise _syntax(draft, "Unclosed '['", i)
            atom = _read_bracket(draft, text[i + 1 : end], i)
            i = end + 1
        elif ch == "*":
            raise RxnUnsupportedError(
                "Wildcard atoms are not supported", text=text, position=byte_offset(text, i)
            )
        else:
            atom, width = _read_organic(draft, i)
            i += width

        draft.atoms.append(atom)
        index = len(draft.atoms) - 1
        if prev is not None:
            _add_bond(draft, prev, index, pending[0] if pending else None, atom.position)
        pending = None
        prev = index
        last = "atom"

    if pending is not None:
        raise _syntax(draft, "Bond symbol at end of input", pending[1])
    if branches:
        raise _syntax(draft, "Unclosed '('", len(text))
    if rings:
        number, opened = min(rings.items(), key=lambda item: item[1].position)
        raise RxnRingClosureError(
            f"Unclosed ring bond {number}", text=text, position=byte_offset(text, opened.position)
        )
    if not draft.atoms:
        raise _syntax(draft, "No atoms in SMILES", 0)


def _read_organic(draft: _Draft, i: int) -> Tuple[_AtomDraft, int]:
    text = draft.text
    for symbol in ORGANIC_SUBSET:
        if text.startswith(symbol, i):
            return _AtomDraft(symbol, symbol, False, False, i), len(symbol)
    ch = text[i]
    if ch in AROMATIC_ORGANIC:
        element = AROMATIC_ORGANIC[ch]
        return _AtomDraft(element, element, True, False, i), 1
    raise _syntax(draft, f"Unexpected character {ch!r}", i)


def _read_bracket(draft: _Draft, content: str, start: int) -> _AtomDraft:
    text = draft.text
    j = 0

    def fail(message: str) -> RxnUnsupportedError:
        return RxnUnsupportedError(
            f"{message} in bracket atom [{content}]",
            text=text,
            position=byte_offset(text, start + 1 + j),
        )

    while j < len(content) and content[j].isdigit():
        j += 1  # isotope

    if j < len(content) and content[j] == "*":
        raise fail("Wildcard atom")

    symbol = ""
    aromatic = False
    for candidate in BRACKET_AROMATIC:
        if content.startswith(candidate, j):
            symbol, aromatic = candidate.capitalize(), True
            break
    if not symbol:
        two = content[j : j + 2]
        if len(two) == 2 and two in ELEMENT_SYMBOLS:
            symbol = two
        elif content[j : j + 1] in ELEMENT_SYMBOLS:
            symbol = content[j]
    if not symbol:
        raise fail("Missing element symbol")
    j += len(symbol)

    chirality = _CHIRALITY.match(content, j)
    if chirality:
        j = chirality.end()

    hydrogens = 0
    if j < len(content) and content[j] == "H":
        j += 1
        digits = ""
        while j < len(content) and content[j].isdigit():
            digits += content[j]
            j += 1
        hydrogens = int(digits) if digits else 1

    charge = 0
    match = _CHARGE.match(content, j)
    if match:
        signs, digits = match.group(1), match.group(2)
        if digits and len(signs) > 1:
            raise fail("Malformed charge")
        magnitude = int(digits) if digits else len(signs)
        charge = magnitude if signs[0] == "+" else -magnitude
        j = match.end()

    if j < len(content) and content[j] == ":":
        j += 1
        if j >= len(content) or not content[j:].isdigit():
            raise fail("Malformed atom-map number")
        j = len(content)

    if j != len(content):
        raise fail(f"Unexpected {content[j]!r}")

    if hydrogens > 8:
        raise RxnValenceError(
            f"Too many hydrogens ({hydrogens}) on [{content}]",
            text=text,
            position=byte_offset(text, start),
        )
    if abs(charge) > 4:
        raise RxnValenceError(
            f"Formal charge {charge:+d} out of range on [{content}]",
            text=text,
            position=byte_offset(text, start),
        )

    element = symbol if symbol in SUPPORTED_ELEMENTS else OTHER_ELEMENT
    return _AtomDraft(element, symbol, aromatic, True, start, charge=charge, hydrogens=hydrogens)


def _add_bond(
    draft: _Draft, u: int, v: int, symbol: Optional[str], position: int, ring: bool = False
) -> None:
    key = (u, v) if u < v else (v, u)
    if key in draft.bonds:
        error = RxnRingClosureError if ring else RxnParseError
        raise error(
            f"Duplicate bond between atoms {u} and {v}",
            text=draft.text,
            position=byte_offset(draft.text, position),
        )
    if symbol == ":" and not (draft.atoms[u].aromatic and draft.atoms[v].aromatic):
        raise _syntax(draft, "Aromatic bond between non-aromatic atoms", position)
    draft.bonds[key] = (u, v, symbol, position)


def _bond_order(draft: _Draft, u: int, v: int, symbol: Optional[str]) -> BondOrder:
    if symbol in BOND_SYMBOLS:
        return BOND_SYMBOLS[symbol]
    if draft.atoms[u].aromatic and draft.atoms[v].aromatic:
        return BondOrder.AROMATIC
    return BondOrder.SINGLE


def _fold_hydrogens(draft: _Draft) -> None:
    degree = [0] * len(draft.atoms)
    partner = [-1] * len(draft.atoms)
    for u, v, _, _ in draft.bonds.values():
        degree[u] += 1
        degree[v] += 1
        partner[u], partner[v] = v, u

    def foldable(index: int) -> bool:
        atom = draft.atoms[index]
        if atom.element != "H" or atom.charge != 0 or atom.hydrogens != 0 or degree[index] != 1:
            return False
        return draft.atoms[partner[index]].element != "H"

    removed = {index for index in range(len(draft.atoms)) if foldable(index)}
    if not removed or len(removed) == len(draft.atoms):
        return

    for index in removed:
        draft.atoms[partner[index]].folded_h += 1

    remap: Dict[int, int] = {}
    kept: List[_AtomDraft] = []
    for index, atom in enumerate(draft.atoms):
        if index not in removed:
            remap[index] = len(kept)
            kept.append(atom)

    bonds: Dict[Tuple[int, int], Tuple[int, int, Optional[str], int]] = {}
    for u, v, symbol, position in draft.bonds.values():
        if u in removed or v in removed:
            continue
        nu, nv = remap[u], remap[v]
        bonds[(min(nu, nv), max(nu, nv))] = (nu, nv, symbol, position)
    draft.atoms = kept
    draft.bonds = bonds


def _finish(draft: _Draft) -> MolecularGraph:
    bonds: List[Bond] = []
    used = [0] * len(draft.atoms)
    for u, v, symbol, _ in draft.bonds.values():
        order = _bond_order(draft, u, v, symbol)
        bonds.append(Bond(u=u, v=v, order=order))
        used[u] += order.valence
        used[v] += order.valence

    atoms: List[Atom] = []
    for index, draft_atom in enumerate(draft.atoms):
        atoms.append(_finish_atom(draft, draft_atom, used[index]))
    return MolecularGraph(atoms=atoms, bonds=bonds)


def _finish_atom(draft: _Draft, atom: _AtomDraft, bond_valence: int) -> Atom:
    overflow = RxnValenceError(
        f"Valence overflow on {atom.symbol} atom",
        text=draft.text,
        position=byte_offset(draft.text, atom.position),
    )
    hydrogens = atom.hydrogens + atom.folded_h
    radicals = 0
    if atom.bracket:
        radical = radical_electrons(
            atom.element, atom.aromatic, atom.charge, bond_valence + hydrogens
        )
        if radical is None:
            raise overflow
        radicals = radical
    else:
        extra = default_implicit_h(atom.element, atom.aromatic, bond_valence + hydrogens)
        if extra is None:
            raise overflow
        hydrogens += extra

    if hydrogens > 8:
        raise RxnValenceError(
            f"Too many hydrogens on {atom.symbol} atom",
            text=draft.text,
            position=byte_offset(draft.text, atom.position),
        )
    return Atom(
        element=atom.element,
        symbol=atom.symbol,
        formal_charge=atom.charge,
        aromatic=atom.aromatic,
        implicit_h=hydrogens,
        radical_electrons=radicals,
    )
