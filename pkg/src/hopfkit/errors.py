"""Exception hierarchy shared by all hopfkit modules."""


class HopfkitError(Exception):
    """Base class. ``exit_code`` is what the CLI returns when it escapes."""

    exit_code = 1


class ParseError(HopfkitError, ValueError):
    pass


class NotUnit(HopfkitError, ValueError):
    """A value that must be a signed Laurent monomial is not one."""


class DivisionByZero(HopfkitError, ZeroDivisionError):
    pass


class AmbiguousLog(HopfkitError):
    pass


class RankMismatch(HopfkitError, ValueError):
    pass


class NoSolution(HopfkitError):
    pass


class NotRegular(HopfkitError):
    pass


class NotGeneric(HopfkitError):
    def __init__(self, vertex, msg=None):
        self.vertex = vertex
        super().__init__(msg or f"q_ii is a root of unity at vertex {vertex + 1}")


class NotCartan(HopfkitError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"no admissible Cartan entry a_{i + 1}{j + 1}")


class NotSymmetrizable(HopfkitError):
    pass


class IllegalLink(HopfkitError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"lambda_{i + 1}{j + 1} != 0 but ({i + 1},{j + 1}) is not linkable")


class AntisymmetryViolation(HopfkitError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"lambda_{i + 1}{j + 1} != -q_{i + 1}{j + 1} lambda_{j + 1}{i + 1}")


class MultipleLinks(HopfkitError):
    def __init__(self, i, msg=None):
        self.i = i
        super().__init__(msg or f"vertex {i + 1} is linked to more than one vertex")


class NotUnlinked(HopfkitError):
    def __init__(self, h, msg=None):
        self.h = h
        super().__init__(msg or f"vertex {h + 1} is linked")


class NotPerfect(HopfkitError):
    pass


class ConditionFails(HopfkitError):
    pass


class InvalidDatum(HopfkitError):
    pass


class DegreeCapExceeded(HopfkitError):
    pass


class WrongSide(HopfkitError, ValueError):
    pass


class SingularGram(HopfkitError):
    exit_code = 2


class NotDominant(HopfkitError):
    pass


class HandleMismatch(HopfkitError):
    pass


class NotInCoset(HopfkitError):
    pass


class NliFails(HopfkitError):
    pass


class CosetMismatch(HopfkitError):
    pass


class AuditFailure(HopfkitError):
    exit_code = 2


class ConnectedDiagram(HopfkitError):
    pass
