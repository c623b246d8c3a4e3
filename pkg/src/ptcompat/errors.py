"""Semantic exception hierarchy shared by all modules."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or inconsistent caller input (CLI exit code 2)."""


class InternalError(RuntimeError):
    """A computed result failed its own exact re-verification (CLI exit code 1)."""


class HullRejection(InputError):
    """A vector was rejected as a state; carries a separating functional.

    ``separating`` is a coefficient vector phi with phi(x) >= 0 on every
    extreme point of the theory while phi(vector) < 0.
    """

    def __init__(self, vector, separating):
        self.vector = vector
        self.separating = separating
        super().__init__("vector lies outside the state polytope")
