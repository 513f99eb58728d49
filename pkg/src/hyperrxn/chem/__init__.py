"""Reading and writing molecules and reactions.

The reader covers the SMILES organic subset, bracket atoms, branches and ring
closures; reaction lines use the ``reactants>agents>products`` layout.
"""

from .reaction import molecule_key, parse_reaction, permute_reaction, reaction_key
from .smiles import parse_molecule
from .writer import write_molecule, write_reaction

__all__ = [
    "molecule_key",
    "parse_molecule",
    "parse_reaction",
    "permute_reaction",
    "reaction_key",
    "write_molecule",
    "write_reaction",
]
