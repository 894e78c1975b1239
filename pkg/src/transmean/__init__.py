"""Exact transfinite means of symbolic bounded sequences.

Submodules:

``ordinal``  ordinals below epsilon-zero in Cantor normal form
``seqalg``   the symbolic sequence grammar, splitting and normalization
``mean``     upper/lower/true means, block division, truncation oracle
``laws``     seeded property-based checks of the mean's laws
``capture``  capturing sequences for finite probability spaces
``cli``      the ``transmean`` command
"""

from .ordinal import OMEGA, ONE, ZERO, Ordinal, ord_parse, ord_print
from .seqalg import Concat, Const, Osc, RepFin, RepOmega, seq_parse, seq_print
# the ``mean`` function is deliberately not re-exported here: it would shadow
# the ``transmean.mean`` submodule
from .mean import (
    MeanPair, divide, lower_mean, mean_pair, truncation_oracle, upper_mean,
)

__all__ = [
    "Ordinal", "ZERO", "ONE", "OMEGA", "ord_parse", "ord_print",
    "Const", "Concat", "RepFin", "RepOmega", "Osc", "seq_parse", "seq_print",
    "MeanPair", "upper_mean", "lower_mean", "mean_pair", "divide",
    "truncation_oracle",
]

__version__ = "0.1.0"
