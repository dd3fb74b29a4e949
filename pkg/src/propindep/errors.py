"""Exception hierarchy shared by every module of the package."""


class PropIndepError(Exception):
    """Base class for all errors raised by propindep."""


class ParseError(PropIndepError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class UnknownVariableError(PropIndepError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"undeclared variable {self.name!r}"


class InconsistentLiteralsError(PropIndepError, ValueError):
    """A set of literals contains both l and ~l where a consistent set is required."""


class ResourceLimitError(PropIndepError):
    """A configured size or enumeration limit was exceeded.

    No partial result is ever returned alongside this error.
    """


class OracleCapExceeded(ResourceLimitError):
    pass


class PrimesLimitExceeded(ResourceLimitError):
    pass


class OutputSizeExceeded(ResourceLimitError):
    pass


class FragmentError(PropIndepError, ValueError):
    """A clause set does not belong to the fragment it was declared to be in."""


class PartitionError(PropIndepError, ValueError):
    """A circumscription partition is not pairwise disjoint or does not cover the query."""


class StrategyError(PropIndepError, ValueError):
    """The requested forgetting strategy does not apply to the input's shape."""
