"""Chemistry data models: atoms, bonds, molecular graphs and reactions.

These records are produced by :mod:`hyperrxn.chem` and consumed by the
hypergraph builder and the fingerprint baseline. All of them are immutable.
"""

from enum import Enum
from typing import Dict, List, Tuple

from pydantic import Field, model_validator

from .base import BaseModel

SUPPORTED_ELEMENTS: Tuple[str, ...] = (
    "H", "B", "C", "N", "O", "F", "Si", "P", "S", "Cl", "Br", "I",
)
OTHER_ELEMENT = "other"


class BondOrder(str, Enum):
    """Bond labels of a molecular graph."""

    SINGLE = "single"
    DOUBLE = "double"
    TRIPLE = "triple"
    AROMATIC = "aromatic"

    @property
    def valence(self) -> int:
        """Valence contribution used for hydrogen counting (aromatic counts as 1)."""
        return _BOND_VALENCE[self]


_BOND_VALENCE: Dict[BondOrder, int] = {
    BondOrder.SINGLE: 1,
    BondOrder.DOUBLE: 2,
    BondOrder.TRIPLE: 3,
    BondOrder.AROMATIC: 1,
}


class Atom(BaseModel):
    """Heavy atom of a molecular graph.

    Hydrogens are not graph nodes; they are folded into ``implicit_h``.

    Attributes:
        element: One of the supported element symbols or ``"other"``
        symbol: The element token as written in the input (``"Na"`` for an
            ``"other"`` sodium atom, ``"C"`` for carbon)
        formal_charge: Formal charge, at most 4 in absolute value
        aromatic: Whether the atom was written as an aromatic (lowercase) token
        implicit_h: Number of attached hydrogens, 0 to 8
        radical_electrons: Number of unpaired electrons

    Example:
        >>> Atom(element="O", symbol="O", formal_charge=-1).formal_charge
        -1
    """

    element: str = Field(..., description="Supported element symbol or 'other'")
    symbol: str = Field(..., description="Element token as written")
    formal_charge: int = Field(0, ge=-4, le=4, description="Formal charge")
    aromatic: bool = Field(False, description="Aromatic flag")
    implicit_h: int = Field(0, ge=0, le=8, description="Attached hydrogen count")
    radical_electrons: int = Field(0, ge=0, description="Unpaired electrons")

    @model_validator(mode="after")
    def _check_element(self) -> "Atom":
        if self.element != OTHER_ELEMENT and self.element not in SUPPORTED_ELEMENTS:
            raise ValueError(f"unsupported element {self.element!r}")
        if self.element != OTHER_ELEMENT and self.symbol != self.element:
            raise ValueError(f"symbol {self.symbol!r} does not match element {self.element!r}")
        return self


class Bond(BaseModel):
    """Typed bond between two atoms of the same molecule.

    Attributes:
        u: Index of the first atom
        v: Index of the second atom
        order: Bond label
    """

    u: int = Field(..., ge=0, description="First atom index")
    v: int = Field(..., ge=0, description="Second atom index")
    order: BondOrder = Field(BondOrder.SINGLE, description="Bond order")

    @model_validator(mode="after")
    def _check_distinct(self) -> "Bond":
        if self.u == self.v:
            raise ValueError(f"bond joins atom {self.u} to itself")
        return self

    @property
    def key(self) -> Tuple[int, int]:
        """Unordered atom pair as a sorted tuple."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


class MolecularGraph(BaseModel):
    """A molecule as a graph of heavy atoms and typed bonds.

    Attributes:
        atoms: Ordered atoms; bond indices refer to positions in this list
        bonds: Bonds, at most one per unordered atom pair

    Example:
        >>> mol = parse_molecule("CCO")
        >>> mol.num_atoms, len(mol.bonds)
        (3, 2)
    """

    atoms: List[Atom] = Field(default_factory=list, description="Heavy atoms")
    bonds: List[Bond] = Field(default_factory=list, description="Bonds")

    @model_validator(mode="after")
    def _check_bonds(self) -> "MolecularGraph":
        seen = set()
        for bond in self.bonds:
            if bond.u >= len(self.atoms) or bond.v >= len(self.atoms):
                raise ValueError(f"bond {bond.u}-{bond.v} refers to a missing atom")
            if bond.key in seen:
                raise ValueError(f"duplicate bond between atoms {bond.u} and {bond.v}")
            seen.add(bond.key)
            if bond.order is BondOrder.AROMATIC and not (
                self.atoms[bond.u].aromatic and self.atoms[bond.v].aromatic
            ):
                raise ValueError(f"aromatic bond {bond.u}-{bond.v} between non-aromatic atoms")
        return self

    @property
    def num_atoms(self) -> int:
        """Number of heavy atoms."""
        return len(self.atoms)

    def neighbors(self) -> List[List[Tuple[int, BondOrder]]]:
        """Adjacency list of ``(neighbor index, bond order)`` pairs per atom."""
        adjacency: List[List[Tuple[int, BondOrder]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adjacency[bond.u].append((bond.v, bond.order))
            adjacency[bond.v].append((bond.u, bond.order))
        return adjacency

    def is_connected(self) -> bool:
        """Return True when every atom is reachable from atom 0."""
        if not self.atoms:
            return True
        adjacency = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            for neighbor, _ in adjacency[stack.pop()]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    stack.append(neighbor)
        return len(seen) == len(self.atoms)


class Side(str, Enum):
    """Side of a reaction."""

    REACTANT = "reactant"
    PRODUCT = "product"


class Reaction(BaseModel):
    """A chemical reaction as two ordered lists of molecular graphs.

    Molecules from the agent field of a SMIRKS string are appended to the
    reactants; their positions are kept in ``agent_indices`` so the
    fingerprint baseline can still tell them apart.

    Attributes:
        reactants: Reactant molecules (at least one)
        products: Product molecules (at least one)
        source_text: The original input line
        agent_indices: Positions in ``reactants`` that came from the agent field

    Example:
        >>> rxn = parse_reaction("CCO>[Na+]>CC=O")
        >>> len(rxn.reactants), rxn.agent_indices
        (2, [1])
    """

    reactants: List[MolecularGraph] = Field(..., description="Reactant molecules")
    products: List[MolecularGraph] = Field(..., description="Product molecules")
    source_text: str = Field("", description="Original input text")
    agent_indices: List[int] = Field(default_factory=list, description="Agent reactant positions")

    @model_validator(mode="after")
    def _check_sides(self) -> "Reaction":
        if not self.reactants:
            raise ValueError("reaction has no reactants")
        if not self.products:
            raise ValueError("reaction has no products")
        for side, molecules in (("reactant", self.reactants), ("product", self.products)):
            for index, mol in enumerate(molecules):
                if mol.num_atoms == 0:
                    raise ValueError(f"{side} molecule {index} is empty")
        for index in self.agent_indices:
            if not 0 <= index < len(self.reactants):
                raise ValueError(f"agent index {index} is out of range")
        return self

    def side(self, side: Side) -> List[MolecularGraph]:
        """Return the molecules on one side of the reaction."""
        return self.reactants if side is Side.REACTANT else self.products

    @property
    def total_atoms(self) -> int:
        """Total heavy-atom count over both sides."""
        return sum(mol.num_atoms for mol in self.reactants) + sum(
            mol.num_atoms for mol in self.products
        )
