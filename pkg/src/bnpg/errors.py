"""Exception hierarchy shared by the solvers, oracles and the CLI."""


class BNPGError(Exception):
    """Base class for every error raised by this package."""


class TableRangeError(BNPGError, IndexError):
    """An externality table was evaluated outside its tabulated range."""


class GuardError(BNPGError):
    """An exhaustive routine refused an instance that is too large."""


class NotApplicableError(BNPGError):
    """A structural solver was handed a graph it cannot handle."""


class InstanceError(BNPGError):
    """Base class for malformed instance documents."""


class DocumentSyntaxError(InstanceError):
    pass


class SchemaError(InstanceError):
    pass


class InvariantError(InstanceError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
