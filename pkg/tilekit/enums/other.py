from __future__ import annotations

from .base import CustomStrEnum

__all__ = [
    'CorrelationCoef',

    'DistributionKind',

    'SelectionStrategy',

    'ValueMode',

    'ExportFormat'
]


class CorrelationCoef(CustomStrEnum):
    """Correlation coefficients available for Correlation Tiles."""

    PEARSON = 'pearson'
    """Linear product-moment coefficient (Pearson's r)."""

    SPEARMAN = 'spearman'
    """Rank coefficient on average ranks (Spearman's rho)."""

    KENDALL = 'kendall'
    """Tie-corrected rank coefficient (Kendall's tau-b)."""

    @property
    def symbol(self) -> str:
        return {'pearson': 'r', 'spearman': 'rho', 'kendall': 'tau'}[self.value]


class DistributionKind(CustomStrEnum):
    """Performance distributions used to study the behaviour of scores."""

    UNIFORM_ALL = 'uniform-all'
    """Uniform over all performances (flat Dirichlet over the 4-simplex)."""

    UNIFORM_FIXED_PRIOR = 'uniform-fixed-prior'
    """Uniform over all performances sharing a positive prior."""

    EMPIRICAL = 'empirical'
    """The performances of an entity set, as they are."""


class SelectionStrategy(CustomStrEnum):
    """How a single entity is selected from the Tile."""

    AT = 'at'
    """Importance values known: take the entity ranked first at that point."""

    REFERENCE = 'reference'
    """Importance values inferred from a reference score: rank-1 entity where the correlation peaks."""

    MINIMAX = 'minimax'
    """No information: minimise the maximum rank, then the mean rank."""


class ValueMode(CustomStrEnum):
    """How the numbers of a performance table are interpreted."""

    COUNTS = 'counts'
    PROBABILITIES = 'probabilities'
    AUTO = 'auto'


class ExportFormat(CustomStrEnum):
    """Output formats for tiles."""

    JSON = 'json'
    CSV = 'csv'
    SVG = 'svg'
