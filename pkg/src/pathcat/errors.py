"""Exception hierarchy shared by every module."""


class PathcatError(Exception):
    """Base class for all library errors."""


class StructuralError(PathcatError):
    """Tables that cannot even be read as a groupoid, functor or group.

    ``problems`` lists human readable descriptions, each naming the offending id.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class GroupError(PathcatError):
    """Multiplication table that fails the group axioms."""


class DomainMismatch(PathcatError):
    """Maps that are not composable or not parallel."""


class PreconditionError(PathcatError):
    """An operation was called outside its documented preconditions."""


class SearchBoundExceeded(PathcatError):
    """An exhaustive search ran past its configured cap.

    Distinct from a negative answer: nothing is known about existence.
    """

    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__(f"{what}: search cap {cap} exceeded")


class InternalInconsistency(PathcatError):
    """A verification step that cannot fail mathematically did fail."""


class UnivalenceFailure(PathcatError):
    """A universe has no weak-univalence witness for a needed instance."""

    def __init__(self, message, instance=None):
        self.instance = instance
        super().__init__(message)
