"""Exception types raised by posetfix."""


class PosetfixError(Exception):
    pass


class IndexOutOfRange(PosetfixError, IndexError):
    pass


class CycleDetected(PosetfixError, ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"cover relation has a cycle: {' < '.join(map(str, self.cycle))}")


class SizeLimit(PosetfixError):
    def __init__(self, what, limit, value=None):
        self.what = what
        self.limit = limit
        self.value = value
        msg = f"{what} exceeds configured bound {limit}"
        if value is not None:
            msg += f" (got {value})"
        super().__init__(msg)


class NotKolmogorov(PosetfixError, ValueError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"points {self.pair[0]} and {self.pair[1]} have identical minimal neighbourhoods")


class NotAWitness(PosetfixError, ValueError):
    pass


class InvalidPoset(PosetfixError, ValueError):
    pass


class InvalidSpace(PosetfixError, ValueError):
    pass


class NotMonotone(PosetfixError, ValueError):
    pass


class DomainMismatch(PosetfixError, ValueError):
    pass


class NotARetract(PosetfixError, ValueError):
    pass


class OracleFailure(PosetfixError):
    pass


class VerificationFailure(PosetfixError, AssertionError):
    pass


class NotAContraction(PosetfixError, ValueError):
    def __init__(self, slope, bound):
        self.slope = slope
        self.bound = bound
        super().__init__(f"piece with slope {slope} violates contraction bound {bound}")


class OutOfDomain(PosetfixError, ValueError):
    pass


class ParseError(PosetfixError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateElement(PosetfixError, ValueError):
    pass


class ConsistencyViolation(PosetfixError, AssertionError):
    pass
