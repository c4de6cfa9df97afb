"""Exception types raised across the package."""


class ReactError(Exception):
    """Base class for all errors raised by reactest."""


class InsufficientData(ReactError):
    """A sample is too small for the requested construction."""


class DegenerateVariance(ReactError):
    """A variance needed by a construction is zero."""


class DimensionMismatch(ReactError):
    """Region, weights, or hypothesis dimensions are incompatible."""


class ZeroContrast(ReactError):
    """Contrast weights are all zero."""


class EmptyGrid(ReactError):
    """A parameter grid is empty."""


class GridNotStraddling(ReactError):
    """The grid does not contain points both inside and outside the null."""


class NegativeDelta(ReactError):
    """An equivalence margin was negative."""


class NonpositiveNNT(ReactError):
    """A number-needed-to-treat must be strictly positive."""


class UnsupportedPair(ReactError):
    """No exact decision rule exists for this region/hypothesis combination."""


class MixedRegions(ReactError):
    """Coherence checks require results built from a single shared region."""


class EmptySample(ReactError):
    """An operation received an empty sample or empty draw set."""


class TooFewDraws(ReactError):
    """Posterior summaries need a minimum number of draws."""


class InvalidCounts(ReactError):
    """Success/trial counts are inconsistent."""


class EmptyArm(ReactError):
    """A study arm has no subjects."""


class NoStudies(ReactError):
    """Pooling requires at least one study."""


class SingleStudy(ReactError):
    """Random-effects pooling requires at least two studies."""


class TooFewReps(ReactError):
    """Monte Carlo runs need a minimum replication count."""


class ParseError(ReactError):
    """An input file failed to parse; carries location context in the message."""


class ConfigError(ReactError):
    """Command-line configuration is invalid; names the offending flag."""
