"""Exception types raised across the package.

Every validation failure has its own class so callers (and the CLI) can
map failures onto exit codes without string matching.  All of them derive
from :class:`OrbiteqError`.
"""


class OrbiteqError(Exception):
    """Base class for all errors raised by this package."""


class NotZeroOne(OrbiteqError):
    """A transition matrix entry is neither 0 nor 1."""


class NotIrreducible(OrbiteqError):
    """The transition graph is not strongly connected."""


class PermutationMatrix(OrbiteqError):
    """The transition matrix is a permutation matrix (cyclic shift space)."""


class TooLarge(OrbiteqError):
    """An input exceeds a configured size cap."""


class InadmissibleWord(OrbiteqError):
    """A word contains a transition forbidden by the matrix."""


class DepthOverflow(OrbiteqError):
    """A computation would need cylinder depth beyond the configured cap."""


class NotTotal(OrbiteqError):
    """A block code table or transducer is missing required entries."""


class ImageInadmissible(OrbiteqError):
    """A map would produce a word forbidden in the target space.

    Carries the offending source word in ``args[1]`` when known.
    """


class StallingCycle(OrbiteqError):
    """A transducer has a reachable cycle that emits no output."""


class InvalidPartition(OrbiteqError):
    """A state-splitting partition does not cover the follower set."""


class NotConstantOnCylinders(OrbiteqError):
    """A derived quantity is not constant on cylinders at the given depth.

    Retrying at a larger depth may succeed.
    """


class NoAlignment(OrbiteqError):
    """Orbit alignment search exhausted its horizon without a match."""


class InconsistentRoutes(OrbiteqError):
    """Two independent classification routes disagree.

    This is never a legitimate outcome; it indicates a bug and is raised
    so the test harness can surface it.
    """


class PreconditionFailed(OrbiteqError):
    """An operation's stated precondition does not hold for the inputs."""
