"""Exception types shared across the package.

Every error carries enough context to name the offending object (vertex id,
arc, parameter value) so CLI reports stay actionable.
"""

from __future__ import annotations


class OristarError(Exception):
    """Base class for all domain errors raised by this package."""


class LoopArc(OristarError):
    """An arc (v, v) was supplied; oriented graphs have no loops."""

    def __init__(self, v: int):
        self.arc = (v, v)
        super().__init__(f"loop arc ({v}, {v}) is not allowed")


class Digon(OristarError):
    """Both (u, v) and (v, u) were supplied; oriented graphs have no digons."""

    def __init__(self, u: int, v: int):
        self.arc = (u, v)
        super().__init__(f"digon: both ({u}, {v}) and ({v}, {u}) present")


class IdOutOfRange(OristarError):
    """A vertex id falls outside [0, n)."""

    def __init__(self, v: int, n: int):
        self.vertex = v
        self.n = n
        super().__init__(f"vertex id {v} out of range [0, {n})")


class SameVertex(OristarError):
    """clone_replace requires two distinct vertices."""

    def __init__(self, v: int):
        self.vertex = v
        super().__init__(f"u and v must differ (both are {v})")


class WrongCardinality(OristarError):
    """A role assignment does not describe one center, k out-leaves, l in-leaves."""

    def __init__(self, message: str):
        super().__init__(message)


class DuplicateArc(OristarError):
    """The same arc was supplied twice."""

    def __init__(self, u: int, v: int):
        self.arc = (u, v)
        super().__init__(f"duplicate arc ({u}, {v})")


class ParseError(OristarError):
    """The graph text input is malformed."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class EllZero(OristarError):
    """Directed stars (l = 0 after normalization) are out of scope.

    Their extremal constructions are iterated blow-ups of an arc, not
    orientations of complete bipartite graphs, so none of the machinery
    here applies to them.
    """

    def __init__(self, k: int, l: int):
        super().__init__(
            f"star ({k}, {l}): l = 0 is out of scope; the optimal constructions "
            "for directed stars are of a different (iterated) kind"
        )


class UnsupportedStar(OristarError):
    """The (1, 1) star is excluded from the optimization.

    Its conjectured extremum is the iterated blow-up of the directed
    4-cycle, not an orientation of a complete bipartite graph; counting
    and search still accept (1, 1).
    """

    def __init__(self):
        super().__init__(
            "star (1, 1): the bipartite optimization does not apply; its "
            "conjectured extremal family is the iterated 4-cycle blow-up"
        )


class WrongBranch(OristarError):
    """An operation for the k > l branch was called with k = l, or vice versa."""

    def __init__(self, k: int, l: int, want: str):
        super().__init__(f"star ({k}, {l}) is on the wrong branch; this operation needs {want}")


class DomainError(OristarError):
    """A numeric argument lies outside the documented domain."""

    def __init__(self, name: str, value: float, domain: str):
        super().__init__(f"{name} = {value!r} outside {domain}")


class InfeasibleSizes(OristarError):
    """Construction class sizes would be negative for these parameters."""

    def __init__(self, message: str):
        super().__init__(message)


class TooLarge(OristarError):
    """Exhaustive enumeration above the hard cap was requested."""

    def __init__(self, n: int, cap: int):
        super().__init__(f"exhaustive search needs n <= {cap}, got n = {n}")


class RangeError(OristarError):
    """An arithmetic sweep was requested outside the supported m range."""

    def __init__(self, lo: int, hi: int):
        super().__init__(f"sweep range [{lo}, {hi}] must lie within [6, 64]")
