"""Exception hierarchy shared across the pipeline.

Exit-code mapping used by the CLI: usage errors exit 1, DataError
subclasses exit 2, ProtocolError subclasses exit 3.
"""


class AslFaceError(Exception):
    """Base class for all library errors."""


class DataError(AslFaceError):
    """Malformed or invalid input data (CLI exit code 2)."""


class ProtocolError(AslFaceError):
    """Violation of the train/test protocol (CLI exit code 3)."""


class WrongPointCount(DataError):
    pass


class NonFiniteCoordinate(DataError):
    pass


class DegenerateLandmark(DataError):
    """A landmark coincides with the origin point (zero-norm displacement)."""


class EmptyDataset(DataError):
    pass


class TooFewSamples(DataError):
    pass


class KTooLarge(DataError):
    pass


class EmptyTrainingSet(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class EmptyTestSet(DataError):
    pass


class ClassAbsent(DataError):
    pass


class MissingFile(DataError):
    pass


class MalformedHeader(DataError):
    pass


class RowParseError(DataError):
    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class IoError(DataError):
    pass


class FormatVersionMismatch(DataError):
    pass


class TrainTestOverlap(ProtocolError):
    """A test frame_id also appears in the model's training manifest."""
