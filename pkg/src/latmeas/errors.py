"""Exception hierarchy shared by every module of the toolkit."""


class LatticeError(Exception):
    """Base class for all domain errors raised by latmeas."""

    def to_dict(self) -> dict:
        d = {"error": type(self).__name__, "message": str(self)}
        for attr in ("line", "witness"):
            if getattr(self, attr, None) is not None:
                d[attr] = getattr(self, attr)
        return d


class NotALattice(LatticeError):
    def __init__(self, a: str, b: str, op: str):
        self.pair = (a, b)
        self.op = op
        super().__init__(f"elements {a!r} and {b!r} have no unique {op}")

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["pair"] = list(self.pair)
        d["op"] = self.op
        return d


class NotBounded(LatticeError):
    pass


class CycleInCovers(LatticeError):
    pass


class SizeCapExceeded(LatticeError):
    pass


class UnknownElement(LatticeError):
    pass


class DuplicateElement(LatticeError):
    pass


class LatticeSyntaxError(LatticeError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["line"] = self.line
        d["column"] = self.column
        return d


class NotAPermutation(LatticeError):
    pass


class NotAnAutomorphism(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class NotAMeasure(LatticeError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotANNMeasure(LatticeError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NonIntegerEntry(LatticeError):
    pass


class NotBoolean(LatticeError):
    pass


class TargetNotBoolean(NotBoolean):
    pass


class UnknownName(LatticeError):
    pass


class MethodDisagreement(LatticeError):
    def __init__(self, values: dict):
        self.values = dict(values)
        super().__init__("measurability methods disagree: "
                         + ", ".join(f"{k}={v}" for k, v in values.items()))

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["values"] = self.values
        return d
