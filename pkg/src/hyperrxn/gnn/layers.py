"""Relational graph convolution and attention layers.

Features are row vectors: a layer maps ``h`` of shape ``(n, D_in)`` to
``(n, D_out)`` with weights of shape ``(D_in, D_out)``. Layer 0 maps the input
features to the latent width; later layers keep it.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from hyperrxn.autodiff import (
    ParamStore,
    Tensor,
    add,
    concat_rows,
    gather_rows,
    leaky_relu,
    matmul,
    mul,
    scale,
    segment_mean,
    segment_softmax,
    segment_sum,
)
from hyperrxn.hypergraph.batch import GraphBatch
from hyperrxn.interpret.attention import AttentionRecord, RelationAttention
from hyperrxn.models.hypergraph import RELATIONS, RelationKind
from hyperrxn.utils.exceptions import RxnShapeError

logger = logging.getLogger(__name__)


class RelationalLayer:
    """Shared parameter layout of both layer kinds.

    Creates ``layer{index}.W_self`` and one ``layer{index}.W.{relation}`` per
    relation, or a single ``layer{index}.W.shared`` when relation weights are
    shared. Layers with ``shares_self_weight`` also use the shared matrix for
    the self term.
    """

    shares_self_weight = False

    def __init__(
        self,
        index: int,
        in_dim: int,
        out_dim: int,
        store: ParamStore,
        share_relation_weights: bool = False,
    ) -> None:
        self.index = index
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.prefix = f"layer{index}"
        self.w_rel: Dict[RelationKind, Tensor]
        if share_relation_weights:
            shared = store.create(f"{self.prefix}.W.shared", in_dim, out_dim)
            self.w_rel = {s: shared for s in RELATIONS}
        if share_relation_weights and self.shares_self_weight:
            self.w_self = shared
        else:
            self.w_self = store.create(f"{self.prefix}.W_self", in_dim, out_dim)
        if not share_relation_weights:
            self.w_rel = {
                s: store.create(f"{self.prefix}.W.{s.value}", in_dim, out_dim) for s in RELATIONS
            }
        self.shared = share_relation_weights

    def _check(self, h: Tensor, batch: GraphBatch) -> None:
        if h.shape != (batch.num_nodes, self.in_dim):
            raise RxnShapeError(
                f"{type(self).__name__} {self.index} got features of the wrong shape",
                expected=(batch.num_nodes, self.in_dim),
                actual=h.shape,
            )

    def _projections(self, h: Tensor, batch: GraphBatch) -> Dict[RelationKind, Tensor]:
        if self.shared:
            z = matmul(h, self.w_rel[RELATIONS[0]])
            return {s: z for s in RELATIONS if batch.relations[s][0].size}
        return {s: matmul(h, self.w_rel[s]) for s in RELATIONS if batch.relations[s][0].size}


class RgcnLayer(RelationalLayer):
    """Relational graph convolution.

    ``h'_i = h_i W_self + sum_s mean_{j in N_s(i)} h_j W_s``; relations with
    no incoming edge at ``i`` contribute zero.
    """

    def forward(
        self, h: Tensor, batch: GraphBatch, recorder: Optional[AttentionRecord] = None
    ) -> Tensor:
        self._check(h, batch)
        n = batch.num_nodes
        out = matmul(h, self.w_self)
        for relation, z in self._projections(h, batch).items():
            src, dst = batch.relations[relation]
            out = add(out, segment_mean(gather_rows(z, src), dst, n))
        return out


class RgatLayer(RelationalLayer):
    """Relational graph attention.

    For relation ``s`` and node ``i`` with incoming ``s`` edges, the logits
    ``leaky_relu(z_s[i]·a_dst + z_s[j]·a_src)`` of each neighbor ``j`` and the
    self logit ``leaky_relu(z_self[i]·(mean_a_dst + mean_a_src))`` are
    normalized by one softmax. The self weight ``alpha_ii`` is the mean of the
    per-relation self weights (1 for nodes without incoming edges) and
    multiplies ``z_self[i]`` once:

    ``h'_i = alpha_ii z_self[i] + sum_s sum_j alpha^s_ij z_s[j]``

    With several heads every head has its own attention vectors; outputs and
    recorded weights are averaged over heads.
    """

    shares_self_weight = True

    def __init__(
        self,
        index: int,
        in_dim: int,
        out_dim: int,
        store: ParamStore,
        share_relation_weights: bool = False,
        heads: int = 1,
        slope: float = 0.2,
    ) -> None:
        super().__init__(index, in_dim, out_dim, store, share_relation_weights)
        self.heads = heads
        self.slope = slope
        self.att_dst: List[Dict[RelationKind, Tensor]] = []
        self.att_src: List[Dict[RelationKind, Tensor]] = []
        for k in range(heads):
            self.att_dst.append(self._attention_vectors(store, "att_dst", k))
            self.att_src.append(self._attention_vectors(store, "att_src", k))

    def _attention_vectors(
        self, store: ParamStore, kind: str, head: int
    ) -> Dict[RelationKind, Tensor]:
        return {
            s: store.create(f"{self.prefix}.{kind}.{s.value}.h{head}", self.out_dim, 1)
            for s in RELATIONS
        }

    def forward(
        self, h: Tensor, batch: GraphBatch, recorder: Optional[AttentionRecord] = None
    ) -> Tensor:
        self._check(h, batch)
        n = batch.num_nodes
        z = self._projections(h, batch)
        z_self = next(iter(z.values())) if self.shared and z else matmul(h, self.w_self)

        counts = batch.relation_counts.astype(np.float64)
        inverse = np.divide(1.0, counts, out=np.zeros_like(counts), where=counts > 0)[:, None]
        isolated = (counts == 0).astype(np.float64)[:, None]

        outputs = []
        edge_alpha = {s: np.zeros(batch.relations[s][0].size) for s in z}
        self_alpha = {s: np.zeros(batch.present[s].size) for s in z}
        for k in range(self.heads):
            mean_dst = scale(_relation_sum(self.att_dst[k]), 1.0 / len(RELATIONS))
            mean_src = scale(_relation_sum(self.att_src[k]), 1.0 / len(RELATIONS))
            self_logit = leaky_relu(matmul(z_self, add(mean_dst, mean_src)), self.slope)

            messages: Optional[Tensor] = None
            self_total: Optional[Tensor] = None
            for relation, z_s in z.items():
                src, dst = batch.relations[relation]
                nodes = batch.present[relation]
                logits = leaky_relu(
                    add(
                        gather_rows(matmul(z_s, self.att_dst[k][relation]), dst),
                        gather_rows(matmul(z_s, self.att_src[k][relation]), src),
                    ),
                    self.slope,
                )
                alpha = segment_softmax(
                    concat_rows([logits, gather_rows(self_logit, nodes)]),
                    np.concatenate([dst, nodes]),
                    n,
                )
                edges = src.size
                alpha_edge = gather_rows(alpha, np.arange(edges))
                alpha_self = gather_rows(alpha, np.arange(edges, edges + nodes.size))
                message = segment_sum(mul(alpha_edge, gather_rows(z_s, src)), dst, n)
                messages = message if messages is None else add(messages, message)
                own = segment_sum(alpha_self, nodes, n)
                self_total = own if self_total is None else add(self_total, own)
                if recorder is not None:
                    edge_alpha[relation] += alpha_edge.value[:, 0]
                    self_alpha[relation] += alpha_self.value[:, 0]

            if self_total is None:
                alpha_ii = Tensor(isolated)
            else:
                alpha_ii = add(mul(self_total, inverse), isolated)
            out = mul(alpha_ii, z_self)
            if messages is not None:
                out = add(out, messages)
            outputs.append(out)

        if recorder is not None:
            for relation in z:
                src, dst = batch.relations[relation]
                recorder.record(
                    self.index,
                    relation,
                    RelationAttention(
                        src=src,
                        dst=dst,
                        alpha=edge_alpha[relation] / self.heads,
                        self_nodes=batch.present[relation],
                        self_alpha=self_alpha[relation] / self.heads,
                    ),
                )

        if self.heads == 1:
            return outputs[0]
        total = outputs[0]
        for out in outputs[1:]:
            total = add(total, out)
        return scale(total, 1.0 / self.heads)


def _relation_sum(vectors: Dict[RelationKind, Tensor]) -> Tensor:
    total = vectors[RELATIONS[0]]
    for relation in RELATIONS[1:]:
        total = add(total, vectors[relation])
    return total
