"""Exception hierarchy shared by every module."""


class WeylcertError(ValueError):
    """Base class for all argument and validation failures."""


class RankBoundsError(WeylcertError):
    pass


class LatticeError(WeylcertError):
    pass


class UnsupportedTypeError(WeylcertError):
    pass


class HyperplaneRankError(WeylcertError):
    def __init__(self, rank: int, expected: int):
        super().__init__(f"span has rank {rank}, expected {expected}")
        self.rank = rank
        self.expected = expected


class CertificateInvalidError(WeylcertError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class OracleScaleError(WeylcertError):
    pass


class ParseError(WeylcertError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
