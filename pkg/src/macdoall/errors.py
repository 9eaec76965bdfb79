"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for all macdoall errors."""


class CycleDetected(SimulationError):
    """The supplied precedence relation contains a cycle."""


class UnknownElement(SimulationError):
    """A relation pair mentions an id outside the element set."""


class NotFaultProne(SimulationError):
    """Legality query for a station outside the fault-prone set."""


class TooLarge(SimulationError):
    """Exact poset computation requested above the configured size cap."""


class BadLengths(SimulationError):
    """Chain lengths do not sum to the requested element count."""


class InvalidPair(SimulationError):
    """Crash-echo classification got a feedback outside the no-CD alphabet."""


class WrongChannel(SimulationError):
    """Protocol instantiated on a channel variant it cannot run on."""


class IllegalCrash(SimulationError):
    """A strict strategy requested a crash outside the legal candidate set."""


class UnknownStrategy(SimulationError):
    """Strategy catalog lookup miss."""


class Timeout(SimulationError):
    """Simulation hit the round cap before terminating."""


class ConfigInvalid(SimulationError):
    """Experiment configuration failed validation."""


class InsufficientCells(SimulationError):
    """Ratio fit requested on fewer than the minimum number of grid cells."""
