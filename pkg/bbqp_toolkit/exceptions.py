class BBQPError(Exception):
    pass


class InvalidVector(BBQPError, ValueError):
    pass


class DimensionMismatch(InvalidVector):

    def __init__(self, vector, expected, actual):
        self.vector = vector
        self.expected = expected
        self.actual = actual
        super(DimensionMismatch, self).__init__(
            '%s has length %s, expected %s' % (vector, actual, expected))


class InstanceOverflow(BBQPError, OverflowError):
    pass


class InstanceFormatError(BBQPError, ValueError):

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = 'line %d: %s' % (lineno, message)
        super(InstanceFormatError, self).__init__(message)


class FractionalBoundsError(InstanceFormatError):
    pass


class EnumerationCapExceeded(BBQPError):
    pass


class ConstructionError(BBQPError, ValueError):
    pass


class InvalidNeighborhood(BBQPError, ValueError):
    pass
