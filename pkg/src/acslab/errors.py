"""Exception types shared across the package."""


class AcslabError(Exception):
    """Base class for all package errors."""


class InputError(AcslabError):
    """Operand or argument outside the operation's input domain."""


class ParameterError(AcslabError):
    """Invalid construction parameter (e.g. k > n for a parametric adder)."""


class CapacityError(AcslabError):
    """Request exceeds a hard enumeration/size guard."""


class FramingError(AcslabError):
    """Bit/sample stream length inconsistent with the frame structure."""


class ConfigError(AcslabError):
    """Invalid or inconsistent configuration."""


class ExplorationError(AcslabError):
    """Design-space exploration over an empty or mixed-metric point set."""


class NetlistParseError(AcslabError):
    """Netlist text violates the gate-list grammar.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
