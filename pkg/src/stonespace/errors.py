"""Exception hierarchy shared by all modules."""


class StoneSpaceError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(StoneSpaceError, ValueError):
    """Malformed literal in one of the text grammars (CLI exit code 2)."""

    def __init__(self, message, text=None, pos=None):
        if text is not None and pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)
        self.text = text
        self.pos = pos


class ZeroOrdinalError(StoneSpaceError):
    pass


class UnderflowError(StoneSpaceError):
    pass


class EmptySpaceError(StoneSpaceError):
    pass


class NotTransitiveError(StoneSpaceError):
    def __init__(self, witness):
        a, b, c = witness
        super().__init__(f"relation not transitive: {a!r}<{b!r} and {b!r}<{c!r} but not {a!r}<{c!r}")
        self.witness = witness


class NotAntisymmetricError(StoneSpaceError):
    def __init__(self, witness):
        a, b = witness
        super().__init__(f"relation not antisymmetric: {a!r}<{b!r} and {b!r}<{a!r}")
        self.witness = witness


class InvalidExtensionError(StoneSpaceError):
    pass


class InvalidTupleError(StoneSpaceError):
    def __init__(self, clause, message):
        super().__init__(f"condition ({clause}) violated: {message}")
        self.clause = clause


class RegionNotInTreeError(StoneSpaceError):
    pass


class PathTooShortError(StoneSpaceError):
    pass


class EmptyRegionError(StoneSpaceError):
    pass


class NotIsomorphicError(StoneSpaceError):
    pass


class NotClosedError(StoneSpaceError):
    pass


class NotLowerError(StoneSpaceError):
    pass


class EqualIndicesError(StoneSpaceError):
    pass


class MalformedDescriptorError(StoneSpaceError):
    pass


class WitnessMissingError(StoneSpaceError):
    def __init__(self, pair, message=None):
        super().__init__(message or f"no incompatibility witness for component pair {pair}")
        self.pair = pair
