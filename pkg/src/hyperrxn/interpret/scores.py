"""Interpretability scores computed from recorded attention.

Direction convention: ``alpha(u -> v)`` under relation ``s`` is the weight node
``v`` gives to the message from ``u``, i.e. ``record.alpha(l, s, v, u)``.

* atom -> reaction: ``alpha(a -> m) * alpha(m -> x)`` for atom ``a`` of molecule
  ``m`` on the side whose rxn-hypernode is ``x``.
* node -> node: the mean over layers of ``alpha(i -> j)`` for every edge.
* atom -> atom: ``alpha(a_u -> m_i) * alpha(m_i -> m_j) * alpha(m_j -> a_v)``
  for atoms of two different molecules on the same side.

Path products use the final layer by default; ``path_layers="mean"`` averages
the per-layer products instead.
"""

import logging
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from typing_extensions import Literal

from hyperrxn.autodiff import no_grad
from hyperrxn.models.chem import Reaction, Side
from hyperrxn.models.hypergraph import RelationKind, RxnHypergraph
from hyperrxn.models.reports import AtomScore, EdgeScore, InterpretReport, MolScore, PairScore
from hyperrxn.utils.exceptions import RxnModelError, RxnValidationError

from .attention import AttentionRecord

if TYPE_CHECKING:
    from hyperrxn.gnn.model import ReactionModel

logger = logging.getLogger(__name__)

PathLayers = Literal["final", "mean"]


def _layers(rec: AttentionRecord, path_layers: PathLayers) -> List[int]:
    if rec.num_layers == 0:
        raise RxnModelError("No attention was recorded")
    if path_layers == "final":
        return [rec.num_layers - 1]
    if path_layers == "mean":
        return list(range(rec.num_layers))
    raise RxnValidationError(f"path_layers must be 'final' or 'mean', got {path_layers!r}")


def atom_rxn_scores(
    rec: AttentionRecord, g: RxnHypergraph, path_layers: PathLayers = "final"
) -> List[AtomScore]:
    """Atom -> molecule -> rxn-hypernode path product for every atom.

    Example:
        >>> scores = atom_rxn_scores(record, graph)
        >>> all(0.0 <= s.score <= 1.0 for s in scores)
        True
    """
    layers = _layers(rec, path_layers)
    scores = []
    for side, count in ((Side.REACTANT, g.num_reactants), (Side.PRODUCT, g.num_products)):
        x = g.rxn_node(side)
        for mol in range(count):
            m = g.mol_node(side, mol)
            for position, a in enumerate(g.atom_nodes(side, mol)):
                total = 0.0
                for layer in layers:
                    total += rec.alpha(layer, RelationKind.ATOM_MOL, m, a) * rec.alpha(
                        layer, RelationKind.MOL_RXN, x, m
                    )
                scores.append(
                    AtomScore(node=a, side=side, mol=mol, atom=position, score=total / len(layers))
                )
    return scores


def node_node_scores(rec: AttentionRecord, g: RxnHypergraph) -> List[EdgeScore]:
    """Mean attention over all layers for every directed edge, in edge order."""
    layers = _layers(rec, "mean")
    scores = []
    for src, dst, relation in g.edges:
        total = sum(rec.alpha(layer, relation, dst, src) for layer in layers)
        scores.append(EdgeScore(src=src, dst=dst, relation=relation, score=total / len(layers)))
    return scores


def mol_importance_scores(rec: AttentionRecord, g: RxnHypergraph) -> List[MolScore]:
    """Layer-averaged mol-hypernode -> rxn-hypernode attention per molecule."""
    layers = _layers(rec, "mean")
    scores = []
    for side, count in ((Side.REACTANT, g.num_reactants), (Side.PRODUCT, g.num_products)):
        x = g.rxn_node(side)
        for mol in range(count):
            m = g.mol_node(side, mol)
            total = sum(rec.alpha(layer, RelationKind.MOL_RXN, x, m) for layer in layers)
            scores.append(MolScore(mol=m, side=side, index=mol, score=total / len(layers)))
    return scores


def atom_atom_scores(
    rec: AttentionRecord,
    g: RxnHypergraph,
    top_k: Optional[int] = None,
    path_layers: PathLayers = "final",
) -> List[PairScore]:
    """Intermolecular atom pair scores, best ``top_k`` per side.

    Pairs are ordered by descending score, ties by node ids. ``top_k=None``
    keeps every pair. Two molecules with two atoms each on one side give
    eight directed pairs for that side.
    """
    if top_k is not None and top_k < 0:
        raise RxnValidationError(f"top_k must be >= 0, got {top_k}")
    layers = _layers(rec, path_layers)
    result: List[PairScore] = []
    for side, count in ((Side.REACTANT, g.num_reactants), (Side.PRODUCT, g.num_products)):
        pairs: List[Tuple[float, int, int]] = []
        for i in range(count):
            m_i = g.mol_node(side, i)
            atoms_i = g.atom_nodes(side, i)
            for j in range(count):
                if i == j:
                    continue
                m_j = g.mol_node(side, j)
                atoms_j = g.atom_nodes(side, j)
                for u in atoms_i:
                    for v in atoms_j:
                        total = 0.0
                        for layer in layers:
                            total += (
                                rec.alpha(layer, RelationKind.ATOM_MOL, m_i, u)
                                * rec.alpha(layer, RelationKind.MOL_MOL, m_j, m_i)
                                * rec.alpha(layer, RelationKind.MOL_ATOM, v, m_j)
                            )
                        pairs.append((total / len(layers), u, v))
        pairs.sort(key=lambda item: (-item[0], item[1], item[2]))
        if top_k is not None:
            pairs = pairs[:top_k]
        result.extend(PairScore(a=u, b=v, side=side, score=score) for score, u, v in pairs)
    return result


def interpret_graph(
    rec: AttentionRecord,
    g: RxnHypergraph,
    reaction: str = "",
    top_k: Optional[int] = 10,
    path_layers: PathLayers = "final",
) -> InterpretReport:
    """All score families of one graph as a report."""
    return InterpretReport(
        reaction=reaction,
        path_layers=path_layers,
        atom_rxn=atom_rxn_scores(rec, g, path_layers),
        node_node=node_node_scores(rec, g),
        atom_atom=atom_atom_scores(rec, g, top_k, path_layers),
        mol_importance=mol_importance_scores(rec, g),
    )


def explain(
    model: "ReactionModel",
    rxn: Reaction,
    top_k: Optional[int] = 10,
    path_layers: PathLayers = "final",
) -> InterpretReport:
    """Run ``model`` on one reaction and score its attention.

    Raises:
        RxnModelError: If the model records no attention (RGCN or fingerprint)
    """
    if not model.supports_attention:
        kind = (
            model.config.representation
            if model.config.representation != "hypergraph"
            else model.config.layer_kind
        )
        raise RxnModelError(
            f"Interpretability scores need attention weights; {kind} models have none",
            model=kind,
        )
    prepared = model.prepare([rxn])
    record = AttentionRecord()
    with no_grad():
        model.encode(model.collate(prepared), recorder=record)
    graph = prepared[0].graph
    logger.debug(f"Recorded attention over {record.num_layers} layers for {graph.num_nodes} nodes")
    return interpret_graph(record, graph, rxn.source_text, top_k, path_layers)


def neighborhood_sums(rec: AttentionRecord) -> Dict[Tuple[int, RelationKind, int], float]:
    """Attention mass of every (layer, relation, node) neighborhood.

    Every value is 1 up to rounding for a correctly normalized record.
    """
    sums = {}
    for layer in range(rec.num_layers):
        for relation in rec.relations(layer):
            for node, total in rec.neighborhood_sums(layer, relation).items():
                sums[(layer, relation, node)] = total
    return sums
