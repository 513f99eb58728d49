"""Reaction fingerprint encoder with trainable weights."""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from hyperrxn.autodiff import Tensor, add, mul
from hyperrxn.gnn.model import ReactionModel
from hyperrxn.interpret.attention import AttentionRecord
from hyperrxn.models.chem import Reaction
from hyperrxn.models.config import ModelConfig
from hyperrxn.utils.exceptions import RxnModelError

from .fingerprint import reaction_fp_parts


@dataclass(frozen=True)
class FingerprintItem:
    """Per-reaction fingerprint sums (see :func:`reaction_fp_parts`)."""

    delta: np.ndarray
    agents: np.ndarray


@dataclass(frozen=True)
class FingerprintBatch:
    """Stacked ``(B, bits)`` fingerprint sums."""

    delta: np.ndarray
    agents: np.ndarray

    @property
    def size(self) -> int:
        return int(self.delta.shape[0])


class FingerprintModel(ReactionModel):
    """``X = w1 delta + w2 agents`` followed by the shared head.

    ``fp.w1`` and ``fp.w2`` start at 1, so an untrained encoder returns the
    plain reaction fingerprint.

    Example:
        >>> model = FingerprintModel(ModelConfig(representation="fingerprint", fp_bits=64))
        >>> x, _ = model.forward(model.batch([parse_reaction("CCO>>CC=O")]))
        >>> x.shape
        (1, 64)
    """

    def __init__(self, config: ModelConfig, seed: int = 0) -> None:
        if config.representation != "fingerprint":
            raise RxnModelError(
                "FingerprintModel needs representation='fingerprint', "
                f"got {config.representation!r}"
            )
        super().__init__(config, seed)

    def _build_encoder(self) -> None:
        self.w1 = self.params.create("fp.w1", 1, 1, init="ones")
        self.w2 = self.params.create("fp.w2", 1, 1, init="ones")

    def prepare(self, reactions: Sequence[Reaction]) -> List[FingerprintItem]:
        items = []
        for rxn in reactions:
            delta, agents = reaction_fp_parts(
                rxn, bits=self.config.fp_bits, radius=self.config.fp_radius
            )
            items.append(FingerprintItem(delta=delta, agents=agents))
        return items

    def collate(self, items: Sequence[FingerprintItem]) -> FingerprintBatch:
        return FingerprintBatch(
            delta=np.stack([item.delta for item in items]),
            agents=np.stack([item.agents for item in items]),
        )

    def encode(
        self, batch: FingerprintBatch, recorder: Optional[AttentionRecord] = None
    ) -> Tensor:
        return add(mul(batch.delta, self.w1), mul(batch.agents, self.w2))
