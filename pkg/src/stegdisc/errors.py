"""Exception types shared across the package."""


class StegDiscError(Exception):
    """Base class for every error raised by stegdisc."""


# -- addressing --------------------------------------------------------------

class SizeMismatch(StegDiscError):
    """Permutation length does not match the alphabet size."""


class UnknownTag(StegDiscError):
    """Hashtag not part of the disc's alphabet."""


class NotAPermutation(StegDiscError):
    """Sequence is not a permutation (duplicate, missing or out-of-range element)."""


class CodeOutOfRange(StegDiscError):
    """Address code >= n! for the given alphabet size."""


class CounterOverflow(StegDiscError):
    """Sampler iteration would exceed the disc's 2^p - 1 pointer bound."""


class InvalidCounter(StegDiscError):
    """Counter is not a completion point of the address stream."""


class AllocationStall(StegDiscError):
    """Too many consecutive occupied addresses; address space exhausted or hostile."""


# -- carrier / payload -------------------------------------------------------

class CounterTooWide(StegDiscError):
    """next_counter does not fit in the configured p bits."""


class DataTooLong(StegDiscError):
    """Payload data exceeds the disc's block data size m."""


class BadVersion(StegDiscError):
    """Payload header carries an unknown version tag."""


class TruncatedPayload(StegDiscError):
    """Byte sequence too short for the payload it declares."""


class UnsupportedCarrier(StegDiscError):
    """Carrier object is not a format this build can embed into."""


class CapacityExceeded(StegDiscError):
    """Payload larger than the carrier's hidden capacity."""


# -- backend -----------------------------------------------------------------

class DuplicateAddress(StegDiscError):
    """A live post already occupies this ordered hashtag sequence."""


class BackendUnavailable(StegDiscError):
    """Transient backend failure (injected or real)."""


class NotFound(StegDiscError):
    """No live post at the given address."""


# -- disc --------------------------------------------------------------------

class ConfigInvalid(StegDiscError):
    """Disc configuration violates an invariant."""


class FileNotFound(StegDiscError):
    """Name not present in the catalog."""


class NameExists(StegDiscError):
    """Catalog already has a file with this name."""


class InvalidName(StegDiscError):
    """File name is empty or contains control characters."""


class ChainBroken(StegDiscError):
    """Chain traversal hit a missing or undecodable block: corruption."""


# -- shell / benchmark -------------------------------------------------------

class UsageError(StegDiscError):
    """Malformed command line."""


class UnknownCommand(StegDiscError):
    """Command not recognized by the shell."""


class SpecInvalid(StegDiscError):
    """Benchmark specification is empty or out of range."""
