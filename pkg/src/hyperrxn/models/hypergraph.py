"""Rxn-hypergraph data models.

The rxn-hypergraph augments the molecular graphs of a reaction with one
mol-hypernode per molecule and one rxn-hypernode per side, joined by four new
relation kinds on top of the four bond kinds.
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import Field, field_validator

from .base import BaseModel
from .chem import SUPPORTED_ELEMENTS, Atom, BondOrder, Side


class NodeKind(str, Enum):
    """Node labels of the rxn-hypergraph."""

    ATOM = "atom"
    MOL = "mol-hypernode"
    RXN = "rxn-hypernode"


class RelationKind(str, Enum):
    """The eight edge relations of the rxn-hypergraph.

    Bond relations are symmetric (stored as two directed edges); ``MOL_RXN``
    edges only run from a mol-hypernode to the rxn-hypernode of its side.
    """

    BOND_SINGLE = "bond-single"
    BOND_DOUBLE = "bond-double"
    BOND_TRIPLE = "bond-triple"
    BOND_AROMATIC = "bond-aromatic"
    ATOM_MOL = "atom-mol"
    MOL_ATOM = "mol-atom"
    MOL_MOL = "mol-mol"
    MOL_RXN = "mol-rxn"


RELATIONS: Tuple[RelationKind, ...] = tuple(RelationKind)

BOND_RELATIONS: Dict[BondOrder, RelationKind] = {
    BondOrder.SINGLE: RelationKind.BOND_SINGLE,
    BondOrder.DOUBLE: RelationKind.BOND_DOUBLE,
    BondOrder.TRIPLE: RelationKind.BOND_TRIPLE,
    BondOrder.AROMATIC: RelationKind.BOND_AROMATIC,
}


class HyperNode(BaseModel):
    """One node of the rxn-hypergraph.

    Attributes:
        id: Position of the node in the graph's node list
        kind: Atom, mol-hypernode or rxn-hypernode
        side: Reaction side the node belongs to
        mol: Molecule index within its side (atoms and mol-hypernodes)
        atom_index: Atom index within its molecule (atoms only)
        atom: The atom record used for featurization (atoms only)
    """

    id: int = Field(..., ge=0, description="Node id")
    kind: NodeKind = Field(..., description="Node kind")
    side: Side = Field(..., description="Reaction side")
    mol: Optional[int] = Field(None, description="Molecule index within the side")
    atom_index: Optional[int] = Field(None, description="Atom index within the molecule")
    atom: Optional[Atom] = Field(None, description="Atom record")


class RxnHypergraph(BaseModel):
    """Typed directed graph built from one reaction.

    Node order is: reactant atoms, product atoms, reactant mol-hypernodes,
    product mol-hypernodes, reactant rxn-hypernode, product rxn-hypernode.

    Attributes:
        nodes: Ordered nodes
        edges: Directed ``(src, dst, relation)`` triples
        num_reactants: Number of reactant molecules (N)
        num_products: Number of product molecules (M)
        reactant_atom_counts: Atom count per reactant molecule
        product_atom_counts: Atom count per product molecule
        bond_count: Number of undirected bonds over all molecules

    Example:
        >>> g = build_hypergraph(parse_reaction("C>>C"))
        >>> len(g.nodes), len(g.edges)
        (6, 6)
    """

    nodes: List[HyperNode] = Field(..., description="Ordered nodes")
    edges: List[Tuple[int, int, RelationKind]] = Field(..., description="Directed edges")
    num_reactants: int = Field(..., ge=1, description="N")
    num_products: int = Field(..., ge=1, description="M")
    reactant_atom_counts: List[int] = Field(..., description="Atoms per reactant")
    product_atom_counts: List[int] = Field(..., description="Atoms per product")
    bond_count: int = Field(..., ge=0, description="Undirected bond count")

    @property
    def num_nodes(self) -> int:
        """|V*|."""
        return len(self.nodes)

    @property
    def total_atoms(self) -> int:
        """T, the atom count over both sides."""
        return sum(self.reactant_atom_counts) + sum(self.product_atom_counts)

    def rxn_node(self, side: Side) -> int:
        """Node id of the rxn-hypernode of one side."""
        return self.num_nodes - 2 if side is Side.REACTANT else self.num_nodes - 1

    def mol_node(self, side: Side, mol: int) -> int:
        """Node id of the mol-hypernode of molecule ``mol`` on ``side``."""
        base = self.total_atoms
        if side is Side.PRODUCT:
            base += self.num_reactants
        return base + mol

    def atom_nodes(self, side: Side, mol: int) -> List[int]:
        """Node ids of the atoms of one molecule."""
        counts = self.reactant_atom_counts if side is Side.REACTANT else self.product_atom_counts
        start = 0 if side is Side.REACTANT else sum(self.reactant_atom_counts)
        start += sum(counts[:mol])
        return list(range(start, start + counts[mol]))


class FeatureConfig(BaseModel):
    """Layout of the initial node feature vectors.

    Atom slots: one-hot element (configured elements plus one shared
    ``other`` slot), one-hot formal-charge bucket, aromatic flag, one-hot
    hydrogen-count bucket, radical flag. Hypernode slots: one-hot over
    reactant/product mol-hypernode and reactant/product rxn-hypernode. Atom
    and hypernode slots never overlap.

    Attributes:
        elements: Elements with their own one-hot slot
        charge_buckets: Charge values with their own slot; charges beyond
            the ends fall into the first/last bucket
        max_hydrogens: Hydrogen counts ``0..max_hydrogens``, larger counts
            fall into the last bucket
    """

    elements: List[str] = Field(default_factory=lambda: list(SUPPORTED_ELEMENTS))
    charge_buckets: List[int] = Field(default_factory=lambda: [-2, -1, 0, 1, 2])
    max_hydrogens: int = Field(4, ge=0)

    @field_validator("charge_buckets")
    @classmethod
    def _check_buckets(cls, value: List[int]) -> List[int]:
        if not value or sorted(set(value)) != value:
            raise ValueError("charge_buckets must be a nonempty strictly increasing list")
        return value

    @property
    def element_slots(self) -> int:
        """Element one-hot width, including the ``other`` slot."""
        return len(self.elements) + 1

    @property
    def atom_dim(self) -> int:
        """Width of the atom block."""
        return self.element_slots + len(self.charge_buckets) + 1 + (self.max_hydrogens + 1) + 1

    @property
    def hypernode_dim(self) -> int:
        """Width of the hypernode block."""
        return 4

    @property
    def input_dim(self) -> int:
        """D_in, the total feature width."""
        return self.atom_dim + self.hypernode_dim
