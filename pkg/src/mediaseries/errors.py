"""Exception hierarchy shared by all mediaseries modules.

Every error carries an ``exit_code`` so the CLI can map failures onto its
documented exit statuses: 2 = configuration, 3 = data, 4 = numeric.
"""


class MediaseriesError(Exception):
    exit_code = 3


class ConfigInvalid(MediaseriesError):
    exit_code = 2


# corpus
class ExtractionFailed(MediaseriesError):
    pass


class DateUnparseable(MediaseriesError):
    pass


class EmptyVocabulary(MediaseriesError):
    pass


# classify
class ShapeMismatch(MediaseriesError):
    pass


class LengthMismatch(MediaseriesError):
    pass


class EmptyDataset(MediaseriesError):
    pass


class NotBinaryModel(MediaseriesError):
    pass


# timeseries
class EmptyInput(MediaseriesError):
    pass


class TooShort(MediaseriesError):
    pass


class GapsPresent(MediaseriesError):
    pass


class InsufficientOverlap(MediaseriesError):
    pass


class ZeroVariance(MediaseriesError):
    exit_code = 4


class RankDeficient(MediaseriesError):
    exit_code = 4


# tda
class DegenerateInput(MediaseriesError):
    exit_code = 4


class BadCover(MediaseriesError):
    pass


# emit
class YearOutOfRange(MediaseriesError):
    pass
