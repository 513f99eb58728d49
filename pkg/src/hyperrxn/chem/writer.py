"""SMILES writer.

Produces a SMILES string that re-parses to an isomorphic graph. The output is
not canonical: atoms are visited depth-first from atom 0 in index order.
"""

from typing import Dict, List, Set, Tuple, Union

from hyperrxn.models.chem import OTHER_ELEMENT, Atom, BondOrder, MolecularGraph, Reaction

from .smiles import AROMATIC_ORGANIC, ORGANIC_SUBSET
from .valence import default_implicit_h

_BOND_TEXT = {BondOrder.DOUBLE: "=", BondOrder.TRIPLE: "#"}


def write_molecule(mol: MolecularGraph) -> str:
    """Serialize a molecular graph to SMILES.

    Disconnected graphs are written as dot-separated components.

    Args:
        mol: The molecule to write

    Returns:
        SMILES text; ``parse_molecule`` of the result is isomorphic to ``mol``

    Example:
        >>> write_molecule(parse_molecule("O"))
        'O'
    """
    adjacency = mol.neighbors()
    for neighbors in adjacency:
        neighbors.sort()
    used = [0] * mol.num_atoms
    for bond in mol.bonds:
        used[bond.u] += bond.order.valence
        used[bond.v] += bond.order.valence

    visited: Set[int] = set()
    components = []
    for root in range(mol.num_atoms):
        if root in visited:
            continue
        children, ring_open, ring_close = _spanning_tree(adjacency, root, visited)
        writer = _ComponentWriter(mol, adjacency, used, children, ring_open, ring_close)
        components.append(writer.emit(root))
    return ".".join(components)


def write_reaction(rxn: Reaction) -> str:
    """Serialize a reaction back to ``reactants>agents>products`` text."""
    agents = set(rxn.agent_indices)
    reactants = [write_molecule(m) for i, m in enumerate(rxn.reactants) if i not in agents]
    agent_text = [write_molecule(rxn.reactants[i]) for i in sorted(agents)]
    products = [write_molecule(m) for m in rxn.products]
    return f"{'.'.join(reactants)}>{'.'.join(agent_text)}>{'.'.join(products)}"


def _spanning_tree(
    adjacency: List[List[Tuple[int, BondOrder]]], root: int, visited: Set[int]
) -> Tuple[Dict[int, List[int]], Dict[int, List[int]], Dict[int, List[int]]]:
    children: Dict[int, List[int]] = {}
    ring_open: Dict[int, List[int]] = {}
    ring_close: Dict[int, List[int]] = {}
    parent = {root: -1}
    order = {root: 0}
    visited.add(root)
    # iterative DFS: (atom, next neighbor position)
    stack = [(root, 0)]
    while stack:
        atom, position = stack.pop()
        neighbors = adjacency[atom]
        if position >= len(neighbors):
            continue
        stack.append((atom, position + 1))
        neighbor, _ = neighbors[position]
        if neighbor == parent[atom]:
            continue
        if neighbor in visited:
            # back edge to an ancestor still open on the stack
            if order[neighbor] < order[atom] and atom not in ring_open.get(neighbor, []):
                ring_open.setdefault(neighbor, []).append(atom)
                ring_close.setdefault(atom, []).append(neighbor)
            continue
        visited.add(neighbor)
        parent[neighbor] = atom
        order[neighbor] = len(order)
        children.setdefault(atom, []).append(neighbor)
        stack.append((neighbor, 0))
    return children, ring_open, ring_close


class _ComponentWriter:
    def __init__(
        self,
        mol: MolecularGraph,
        adjacency: List[List[Tuple[int, BondOrder]]],
        used: List[int],
        children: Dict[int, List[int]],
        ring_open: Dict[int, List[int]],
        ring_close: Dict[int, List[int]],
    ) -> None:
        self.mol = mol
        self.orders = {
            (atom, neighbor): order
            for atom, neighbors in enumerate(adjacency)
            for neighbor, order in neighbors
        }
        self.used = used
        self.children = children
        self.ring_open = ring_open
        self.ring_close = ring_close
        self.digits: Dict[Tuple[int, int], int] = {}
        self.free: List[int] = []
        self.next_digit = 1

    def emit(self, root: int) -> str:
        parts: List[str] = []
        stack: List[Union[str, int]] = [root]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                parts.append(item)
                continue
            atom = item
            parts.append(self._atom_text(atom))
            parts.append(self._ring_text(atom))
            kids = self.children.get(atom, [])
            pending: List[Union[str, int]] = []
            for position, child in enumerate(kids):
                bond = self._bond_text(atom, child)
                if position < len(kids) - 1:
                    pending.extend(["(", bond, child, ")"])
                else:
                    pending.extend([bond, child])
            stack.extend(reversed(pending))
        return "".join(parts)

    def _ring_text(self, atom: int) -> str:
        text = []
        released = []
        for other in self.ring_close.get(atom, []):
            key = (other, atom)
            digit = self.digits.pop(key)
            text.append(_digit_text(digit))
            released.append(digit)
        for other in self.ring_open.get(atom, []):
            digit = self._take_digit()
            self.digits[(atom, other)] = digit
            text.append(self._bond_text(atom, other) + _digit_text(digit))
        # released digits become reusable only after this atom
        self.free.extend(released)
        self.free.sort(reverse=True)
        return "".join(text)

    def _take_digit(self) -> int:
        if self.free:
            return self.free.pop()
        digit = self.next_digit
        self.next_digit += 1
        return digit

    def _bond_text(self, u: int, v: int) -> str:
        order = self.orders[(u, v)]
        if order in _BOND_TEXT:
            return _BOND_TEXT[order]
        both_aromatic = self.mol.atoms[u].aromatic and self.mol.atoms[v].aromatic
        if order is BondOrder.SINGLE and both_aromatic:
            return "-"
        return ""

    def _atom_text(self, index: int) -> str:
        atom = self.mol.atoms[index]
        if _is_bare(atom, self.used[index]):
            return atom.symbol.lower() if atom.aromatic else atom.symbol
        return _bracket_text(atom)


def _is_bare(atom: Atom, used: int) -> bool:
    if atom.element == OTHER_ELEMENT or atom.formal_charge != 0 or atom.radical_electrons:
        return False
    if atom.aromatic:
        if atom.symbol.lower() not in AROMATIC_ORGANIC:
            return False
    elif atom.symbol not in ORGANIC_SUBSET:
        return False
    return default_implicit_h(atom.element, atom.aromatic, used) == atom.implicit_h


def _bracket_text(atom: Atom) -> str:
    symbol = atom.symbol.lower() if atom.aromatic else atom.symbol
    hydrogens = ""
    if atom.implicit_h == 1:
        hydrogens = "H"
    elif atom.implicit_h > 1:
        hydrogens = f"H{atom.implicit_h}"
    charge = ""
    if atom.formal_charge == 1:
        charge = "+"
    elif atom.formal_charge == -1:
        charge = "-"
    elif atom.formal_charge:
        charge = f"{atom.formal_charge:+d}"
    return f"[{symbol}{hydrogens}{charge}]"


def _digit_text(digit: int) -> str:
    return str(digit) if digit < 10 else f"%{digit:02d}"
