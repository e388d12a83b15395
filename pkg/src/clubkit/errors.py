"""Named failures. Law violations found by validators are values
(``Diagnostic``), not exceptions."""

from dataclasses import dataclass


class ClubError(Exception):
    pass


class ShapeMismatch(ClubError):
    pass


class MismatchedTarget(ClubError):
    pass


class NotCommuting(ClubError):
    pass


class NoLift(ClubError):
    pass


class MiddleMismatch(ClubError):
    pass


class IllDefinedAction(ClubError):
    pass


class NotACollage(ClubError):
    pass


class ArityOverflow(ClubError):
    pass


class IllDefined(ClubError):
    pass


class MissingTerminalProbe(ClubError):
    pass


class NotInduced(ClubError):
    pass


class HypothesisFailed(ClubError):
    pass


class ParseError(ClubError):
    pass


class UnresolvedReference(ClubError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    ids: tuple

    def __str__(self):
        return f"{self.kind}{self.ids!r}"
