"""Exception hierarchy shared by the library and the command-line scripts."""

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_SAFETY = 4


class SerialMinerError(Exception):
    """Base class; `exit_code` is what a script exits with when it sees one."""

    exit_code = EXIT_USAGE


class ParameterError(SerialMinerError, ValueError):
    exit_code = EXIT_USAGE


class SequenceFormatError(SerialMinerError, ValueError):
    exit_code = EXIT_INPUT

    def __init__(self, message: str, line_no: int = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class SafetyBoundError(SerialMinerError):
    """Raised when the oracle or the naive miner would exceed its bound."""

    exit_code = EXIT_SAFETY
