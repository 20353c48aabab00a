"""Exception hierarchy shared by every module."""


class PosetError(Exception):
    pass


class CycleDetected(PosetError):
    pass


class RedundantCover(PosetError):
    pass


class NotComparable(PosetError):
    pass


class SizeLimitExceeded(PosetError):
    pass


class InvalidPartition(PosetError):
    pass


class NotStrict(InvalidPartition):
    pass


class NotATree(PosetError):
    pass


class UnknownName(PosetError):
    pass


class UnknownBubble(PosetError):
    pass


class MalformedBiNumbering(PosetError):
    pass


class NotAFilter(PosetError):
    pass


class NotAnExtension(PosetError):
    pass


class NoUniqueMax(PosetError):
    pass


class NotDComplete(PosetError):
    pass


class WAmbiguous(PosetError):
    """Earliest path intersection differs depending on which path is scanned."""


class EngineInvariantError(AssertionError):
    """An internal cross-check failed; this always indicates a bug."""
