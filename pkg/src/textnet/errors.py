"""Exception types raised across the package."""


class TextnetError(Exception):
    pass


class InvalidParameterError(TextnetError, ValueError):
    pass


class LayerMissingError(TextnetError, KeyError):
    def __init__(self, doc_id, layer):
        super().__init__(f"document {doc_id!r} has no {layer!r} layer")
        self.doc_id = doc_id
        self.layer = layer

    def __str__(self):
        return self.args[0]


class NotFoundError(TextnetError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "not found"


class ParseError(TextnetError, ValueError):
    def __init__(self, message, lineno=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.lineno = lineno
        self.path = path


class InsufficientDataError(TextnetError, ValueError):
    pass


class UndefinedStatisticError(TextnetError, ValueError):
    pass


class SingularError(TextnetError, ValueError):
    pass


class DegenerateMatrixError(TextnetError, ValueError):
    pass


class EmptyCorpusError(TextnetError, ValueError):
    pass


class EmptyMatrixError(TextnetError, ValueError):
    pass


class OrderingError(TextnetError, RuntimeError):
    pass


class ConvergenceError(TextnetError, RuntimeError):
    """Power iteration hit ``max_iter``; ``last`` holds the final iterate."""

    def __init__(self, message, last=None, iterations=None):
        super().__init__(message)
        self.last = last
        self.iterations = iterations
