class SubspaceError(Exception):
    """Base class of every error raised by the package"""


class HermitianError(SubspaceError):
    pass


class DimensionError(SubspaceError):
    pass


class ConvergenceError(SubspaceError):
    pass


class DomainError(SubspaceError):
    """An estimating function was evaluated outside its domain"""


class PartitionError(SubspaceError):
    """Infeasible or malformed partition points"""


class OracleError(SubspaceError):
    """The dynamic programming grid can not reach the target"""


class ThresholdError(SubspaceError):
    pass


class ScenarioError(SubspaceError):
    pass


class ConfigurationError(SubspaceError):
    """The hypotheses of a regime do not hold for a given instance"""


class MatrixFileError(SubspaceError):
    pass
