"""Relational graph convolution/attention models over rxn-hypergraphs."""

from .layers import RelationalLayer, RgatLayer, RgcnLayer
from .losses import cross_entropy, mse
from .model import HypergraphModel, PreparedGraph, ReactionModel, model_forward, readout

__all__ = [
    "HypergraphModel",
    "PreparedGraph",
    "ReactionModel",
    "RelationalLayer",
    "RgatLayer",
    "RgcnLayer",
    "cross_entropy",
    "model_forward",
    "mse",
    "readout",
]
