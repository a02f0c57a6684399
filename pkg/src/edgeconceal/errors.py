"""Exception types raised across the pipeline."""


class EdgeConcealError(Exception):
    """Base class for all package errors."""


class PgmFormatError(EdgeConcealError, ValueError):
    """Malformed PGM file. ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class UnsupportedFormatError(EdgeConcealError, ValueError):
    pass


class UnsupportedError(EdgeConcealError, ValueError):
    """Input is well formed but outside what the method can handle."""


class EncodeError(EdgeConcealError, ValueError):
    pass


class DecodeError(EdgeConcealError, ValueError):
    pass


class StreamFormatError(EdgeConcealError, ValueError):
    pass
