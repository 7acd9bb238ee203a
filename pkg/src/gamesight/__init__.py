"""gamesight: game-based behavioral assessment at desk scale.

Five instrumented mini-games, an event-sourced telemetry pipeline, synthetic
trait-parameterized players, an extraction of the full gameplay variable
catalog, and a two-phase suitability-prediction framework built on
from-scratch classifiers.
"""

__version__ = "0.1.0"
