"""Exception types shared across the package."""


class GrammarCauseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(GrammarCauseError):
    """An argument violates an operation's precondition."""


class IdenticalSequencesError(InvalidInputError):
    """A causal model received two elementwise-identical sequences."""


class AmbiguousNucleotideError(GrammarCauseError):
    """A nucleotide string contains a character outside A, C, G, T."""


class FastaFormatError(GrammarCauseError):
    """Malformed FASTA input."""


class DegenerateVarianceError(GrammarCauseError):
    """Both groups have zero winsorized variance."""
