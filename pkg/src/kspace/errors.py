"""Exception hierarchy shared by every kspace module."""


class KspaceError(Exception):
    """Base class for all errors raised by kspace."""


class InvalidTree(KspaceError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid knot tree: {lines}")


class UnknownName(KspaceError, KeyError):
    def __str__(self):
        return f"unknown catalog name: {self.args[0]!r}"


class SizeMismatch(KspaceError, ValueError):
    pass


class NotInvertible(KspaceError):
    pass


class NonConcreteAction(KspaceError):
    """An inversion map is needed on a factor where only its class is known."""


class IndexTooLarge(KspaceError):
    pass


class LimitExceeded(KspaceError):
    pass


class NotFiniteOrder(KspaceError, ValueError):
    pass


class SchemaError(KspaceError, ValueError):
    pass


class DslSyntaxError(KspaceError, SyntaxError):
    def __init__(self, message, position, line, column, expected=None):
        self.position = position
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"{line}:{column}: {message}")


class SemanticError(KspaceError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))
