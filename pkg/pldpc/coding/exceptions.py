class PldpcError(ValueError):
    """Base class for every error raised by the coding engine."""


class CodeConstructionError(PldpcError):
    pass


class CodeDescriptionError(CodeConstructionError):
    """Malformed or inconsistent code-description file."""


class HadamardError(PldpcError):
    pass


class QuantizationError(PldpcError):
    pass


class DecoderError(PldpcError):
    pass


class EncoderSetupError(PldpcError):
    pass


class ArchitectureError(PldpcError):
    pass


class ScheduleConflictError(ArchitectureError):
    """A RAM was accessed more than its ports allow in some cycle."""

    def __init__(self, conflicts):
        self.conflicts = list(conflicts)
        super().__init__(f'{len(self.conflicts)} port conflict(s), first: {self.conflicts[:1]}')


class CampaignConfigError(PldpcError):
    pass
