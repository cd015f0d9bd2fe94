"""Exception types shared across the toolchain."""


class OntoforgeError(Exception):
    """Base class for all toolchain errors."""


class EmptyCorpusError(OntoforgeError):
    """No usable documents were found."""


class CorpusIOError(OntoforgeError):
    """A corpus file exists but could not be read."""


class DomainError(OntoforgeError):
    """A numeric argument is outside its valid domain."""


class MissingCommonCorpusError(OntoforgeError):
    """The everyday-language frequency list failed to load."""


class DuplicatePhraseError(OntoforgeError):
    """Two different concepts claim the same word sequence."""


class ConceptAbsentError(OntoforgeError):
    """A concept id does not occur in the structure being queried."""


class TripleParseError(OntoforgeError):
    """A knowledge-base record could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class RankTooLargeError(OntoforgeError):
    """Requested SVD rank exceeds the matrix dimensions."""


class DegenerateVarianceError(OntoforgeError):
    """Correlation is undefined because one input has zero variance."""


class MissingUpstreamArtifactError(OntoforgeError):
    """A pipeline stage was run before the artifacts it consumes exist."""

    def __init__(self, artifact: str):
        super().__init__(f"missing upstream artifact: {artifact}")
        self.artifact = artifact


class ConfigError(OntoforgeError):
    """Configuration file or parameter value is unusable."""
