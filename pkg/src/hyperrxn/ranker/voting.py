"""Ranked-pairs aggregation of a pairwise score matrix into a total order."""

import logging
from typing import List, Tuple, Union

import networkx as nx
import numpy as np

from .direct_ranker import RankMatrix, check_rank_matrix

logger = logging.getLogger(__name__)


def locked_graph(m: Union[RankMatrix, np.ndarray]) -> "nx.DiGraph":
    """Lock positive pairs by decreasing score, skipping any that close a cycle.

    Pairs are visited by descending score; equal scores are visited in
    lexicographic ``(winner, loser)`` order.

    Returns:
        Acyclic graph with an edge ``a -> b`` for every locked ``a`` over ``b``
    """
    scores = check_rank_matrix(m.scores if isinstance(m, RankMatrix) else m)
    k = scores.shape[0]
    pairs: List[Tuple[float, int, int]] = [
        (float(scores[a, b]), a, b) for a in range(k) for b in range(k) if scores[a, b] > 0
    ]
    pairs.sort(key=lambda item: (-item[0], item[1], item[2]))

    graph = nx.DiGraph()
    graph.add_nodes_from(range(k))
    for score, a, b in pairs:
        if nx.has_path(graph, b, a):
            logger.debug(f"Skipping {a} > {b} ({score:.4f}): would close a cycle")
            continue
        graph.add_edge(a, b, score=score)
    return graph


def ranked_pairs(m: Union[RankMatrix, np.ndarray]) -> List[int]:
    """Total order of the candidates, most plausible first.

    Candidates left unordered by the locked pairs come out in index order.

    Raises:
        RxnRankingError: If the matrix is malformed

    Example:
        >>> ranked_pairs(np.array([[0, .8, -.4], [-.8, 0, .6], [.4, -.6, 0]]))
        [0, 1, 2]
    """
    return list(nx.lexicographical_topological_sort(locked_graph(m)))
