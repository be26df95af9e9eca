"""Exception hierarchy shared across the toolkit.

The CLI maps these onto its exit-code contract, so new failure modes
should subclass one of the groups below rather than raising bare
ValueErrors.
"""


class BnsError(Exception):
    """Base class for all toolkit errors."""


class InputRejected(BnsError):
    """An input file or text was rejected (CLI exit code 2)."""


class WordParseError(InputRejected):
    """Malformed word text. Carries the character offset of the defect."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FileFormatError(InputRejected):
    """Malformed input file."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{path}: "
        if line is not None:
            loc += f"line {line}: "
        super().__init__(loc + message)
        self.path = path
        self.line = line


class PresentationError(InputRejected):
    """Invalid presentation data (duplicate symbols, empty relator, ...)."""


class RelatorNonVanishing(InputRejected):
    """Generator values do not vanish on some relator, so they define no
    homomorphism to the reals."""


class ZeroCharacter(InputRejected):
    """The zero character was supplied where a non-trivial one is required."""


class AlphabetCollision(InputRejected):
    """Two oracle factors share a generator symbol."""


class NoOracleError(BnsError):
    """No word-problem engine is available for the requested group
    (CLI exit code 3)."""


class UnderdeterminedClassification(NoOracleError):
    """Subgroup-equality flags are unknown and no oracle can settle them."""


class DeclarationMismatch(BnsError):
    """A bounded oracle check refuted a user declaration (CLI exit code 4)."""


class NonInvertiblePhi(DeclarationMismatch):
    """The subgroup isomorphism cannot be inverted on the supplied data."""


class EvaluatorUndefined(BnsError):
    """A valuation evaluator was asked about a word outside its domain."""


class BallTooLarge(BnsError):
    """Cayley-ball construction exceeded the vertex budget."""


class MalformedCertificate(BnsError):
    """A membership fact carries an inconsistent or unverified certificate."""


class UnknownFormat(BnsError):
    """Unsupported export format."""
