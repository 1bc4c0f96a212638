"""Exception types raised by the simulator, protocol engine and CLI."""


class QisError(Exception):
    """Base class for every error raised by ``cluster_qis``."""


class StateError(QisError, ValueError):
    """Invalid amplitudes, register labels or dimensions."""


class UnitarityError(QisError, ValueError):
    """A matrix offered as a gate is not unitary within tolerance."""


class BasisError(QisError, ValueError):
    """A measurement basis is not orthonormal or not complete."""


class PreconditionError(QisError, ValueError):
    """A protocol input lies outside the secret space the protocol supports."""


class DerivationError(QisError, RuntimeError):
    """A correction could not be derived for a protocol branch."""


class SearchBudgetError(QisError, ValueError):
    """An exhaustive search was requested beyond its qubit budget."""


class UnknownIdentifierError(QisError, KeyError):
    """A protocol, channel, basis, table or attack name is not registered."""

    def __str__(self) -> str:
        """Return the message without the quoting ``KeyError`` adds.

        Returns
        -------
        str
            Human readable message.
        """
        return str(self.args[0]) if self.args else ''
