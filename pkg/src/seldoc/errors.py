"""Exception hierarchy for the toolkit."""


class SeldocError(Exception):
    """Base class for all toolkit errors."""


class EncodingError(SeldocError):
    """A value cannot be canonically encoded (bad tag, salt, or digest)."""


class MalformedSignatureBlock(SeldocError):
    """Signature block violates the registry or length rules."""


class ParseError(SeldocError):
    """Document text cannot be parsed into a tree."""


class InvalidDigestHex(ParseError):
    """A digest placeholder does not hold 64 lowercase hex characters."""


class UnregisteredAlgorithm(ParseError):
    """Signature algorithm name is not in the registry."""


class MissingSalt(ParseError):
    """A disclosed leaf has no matching salt entry."""


class RedactionError(SeldocError):
    """A redaction path cannot be applied."""


class PathNotFound(RedactionError):
    """Redaction path does not name a member of the document."""


class AlreadyHidden(RedactionError):
    """Redaction path names a member that is already a digest placeholder."""


class AnchorError(SeldocError):
    """Digest registry backend failure."""
