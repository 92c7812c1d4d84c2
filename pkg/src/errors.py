class InvalidGeneratorParams(ValueError):
    pass


class InstanceError(ValueError):
    pass


class AsymmetricMatrixError(InstanceError):
    pass


class DimensionMismatchError(InstanceError):
    pass


class ZeroCapacityFleetError(InstanceError):
    pass


class TsplibError(InstanceError):
    pass


class TsplibParseError(TsplibError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line: int = line


class UnsupportedEdgeWeightType(TsplibError):
    pass


class MissingSectionError(TsplibError):
    pass


class SolutionError(ValueError):
    pass


class CustomerIndexError(SolutionError):
    pass


class DuplicateCustomerError(SolutionError):
    pass


class OracleError(ValueError):
    pass


class InstanceTooLargeError(OracleError):
    pass


class InfeasibleInstanceError(OracleError):
    pass


class EmptyChildrenError(ValueError):
    pass


class PlanError(ValueError):
    pass
