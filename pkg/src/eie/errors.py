"""Exception types shared across the pipeline stages."""


class EIEError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(EIEError):
    """Malformed or inconsistent configuration input."""


class CouplingError(EIEError):
    """Atom-field coupling derivation produced a non-finite quantity."""


class SteadyStateError(EIEError):
    """Mean-field working point could not be solved reliably."""


class ResponseError(EIEError):
    """Frequency-domain atomic response is singular or ill-conditioned."""


class TransferError(EIEError):
    """Field covariance propagation failed numerically."""


class CovarianceError(EIEError):
    """Output covariance violates a physicality requirement."""


class PipelineError(EIEError):
    """Failure of one stage of the end-to-end evaluation, annotated with the stage name."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
