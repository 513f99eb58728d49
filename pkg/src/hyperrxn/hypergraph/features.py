"""Initial node features for the rxn-hypergraph."""

from typing import List, Optional

import numpy as np

from hyperrxn.models.chem import Atom, Side
from hyperrxn.models.hypergraph import FeatureConfig, NodeKind, RxnHypergraph
from hyperrxn.utils.exceptions import RxnShapeError

_HYPERNODE_SLOTS = {
    (NodeKind.MOL, Side.REACTANT): 0,
    (NodeKind.MOL, Side.PRODUCT): 1,
    (NodeKind.RXN, Side.REACTANT): 2,
    (NodeKind.RXN, Side.PRODUCT): 3,
}


def featurize(
    g: RxnHypergraph, cfg: Optional[FeatureConfig] = None, expected_dim: Optional[int] = None
) -> np.ndarray:
    """Build the ``|V*| x D_in`` initial feature matrix.

    Elements missing from ``cfg.elements`` share the ``other`` slot, so every
    atom is covered.

    Args:
        g: The hypergraph
        cfg: Feature layout, defaults to :class:`FeatureConfig()`
        expected_dim: Input width the consumer was built for (if known)

    Returns:
        Float64 matrix; row ``i`` encodes node ``i``

    Raises:
        RxnShapeError: If ``expected_dim`` differs from ``cfg.input_dim``
    """
    cfg = cfg or FeatureConfig()
    if expected_dim is not None and expected_dim != cfg.input_dim:
        raise RxnShapeError(
            f"Feature layout has width {cfg.input_dim}, model expects {expected_dim}",
            expected=expected_dim,
            actual=cfg.input_dim,
        )
    features = np.zeros((g.num_nodes, cfg.input_dim), dtype=np.float64)
    for node in g.nodes:
        if node.kind is NodeKind.ATOM:
            assert node.atom is not None
            for slot in atom_slots(node.atom, cfg):
                features[node.id, slot] = 1.0
        else:
            features[node.id, cfg.atom_dim + _HYPERNODE_SLOTS[(node.kind, node.side)]] = 1.0
    return features


def atom_slots(atom: Atom, cfg: FeatureConfig) -> List[int]:
    """Column indices set to one for an atom."""
    slots = []
    if atom.element in cfg.elements:
        slots.append(cfg.elements.index(atom.element))
    else:
        slots.append(len(cfg.elements))
    offset = cfg.element_slots

    buckets = cfg.charge_buckets
    charge = min(max(atom.formal_charge, buckets[0]), buckets[-1])
    if charge in buckets:
        slots.append(offset + buckets.index(charge))
    else:
        # gap inside the bucket list: nearest bucket below
        slots.append(offset + max(i for i, b in enumerate(buckets) if b <= charge))
    offset += len(buckets)

    if atom.aromatic:
        slots.append(offset)
    offset += 1

    slots.append(offset + min(atom.implicit_h, cfg.max_hydrogens))
    offset += cfg.max_hydrogens + 1

    if atom.radical_electrons:
        slots.append(offset)
    return slots
