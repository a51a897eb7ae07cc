from __future__ import annotations

from .base import CustomStrEnum

__all__ = [
    'NamedScore',

    'ValueMethod',
    'InterpolationOrder',

    'TileKind'
]


class NamedScore(CustomStrEnum):
    """Ranking scores with a name, and where they sit on the Tile."""

    TNR = 'tnr'
    """True Negative Rate (specificity), bottom-left corner."""

    TPR = 'tpr'
    """True Positive Rate (recall, sensitivity), top-right corner."""

    NPV = 'npv'
    """Negative Predictive Value, top-left corner."""

    PPV = 'ppv'
    """Positive Predictive Value (precision), bottom-right corner."""

    ACCURACY = 'accuracy'
    """Accuracy, center of the Tile."""

    F1 = 'f1'
    """F-one score, middle of the right side."""

    @property
    def importance(self) -> tuple[float, float]:
        """The (a, b) coordinates of the score on the Tile."""

        return _NAMED_COORDS[self]

    @property
    def label(self) -> str:
        """Display label used on rendered tiles."""

        return 'Accuracy' if self is NamedScore.ACCURACY else self.value.upper()


_NAMED_COORDS = {
    NamedScore.TNR: (0.0, 0.0),
    NamedScore.TPR: (1.0, 1.0),
    NamedScore.NPV: (0.0, 1.0),
    NamedScore.PPV: (1.0, 0.0),
    NamedScore.ACCURACY: (0.5, 0.5),
    NamedScore.F1: (1.0, 0.5),
}


class ValueMethod(CustomStrEnum):
    """How a Value Tile is computed."""

    DIRECT = 'direct'
    """Evaluate the ranking score at every grid point."""

    INTERPOLATION = 'interpolation'
    """Only compute the four corners, then fill the Tile with weighted f-means."""

    RECOVERY = 'recovery'
    """Recover the performance from three scores, or two and the prior, then evaluate directly."""


class InterpolationOrder(CustomStrEnum):
    """Composition order of the two f-means used by the interpolation method."""

    VERTICAL_FIRST = 'vertical-first'
    """Fill the left and right sides with the harmonic mean, then the rows."""

    HORIZONTAL_FIRST = 'horizontal-first'
    """Fill the bottom and top sides with the (1 - x)^-1 mean, then the columns."""


class TileKind(CustomStrEnum):
    """What the values of a tile represent."""

    VALUE = 'value'
    BASELINE = 'baseline'
    SOTA = 'sota'
    NOSKILL = 'noskill'
    SKILL = 'skill'
    RANKING = 'ranking'
    ENTITY = 'entity'
    CORRELATION = 'correlation'
    BEHAVIOR = 'behavior'
    HATCH = 'hatch'
    BOUNDARY = 'boundary'

    @property
    def is_unit_interval(self) -> bool:
        """Whether defined values are guaranteed to lie in [0, 1]."""

        return self in {TileKind.VALUE, TileKind.BASELINE, TileKind.SOTA, TileKind.NOSKILL}
