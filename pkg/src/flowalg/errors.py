"""Exception hierarchy shared by all flowalg modules."""


class FlowAlgError(Exception):
    """Base class for all flowalg errors."""


class InputError(FlowAlgError):
    """Malformed or inconsistent input: unknown ids, bad file syntax,
    ring mismatches, violated operation preconditions."""


class CapacityError(FlowAlgError):
    """Input exceeds the subset-table ceiling (more than 20 edges)."""


class InfeasibleError(FlowAlgError):
    """An affine system of constraints has no solution."""


class CheckError(FlowAlgError):
    """An internal cross-validation failed: two independent computations
    of the same quantity disagree.  Always indicates a bug or a corrupted
    input, never a user error."""


MAX_SUBSET_EDGES = 20


def require_capacity(m: int) -> None:
    if m > MAX_SUBSET_EDGES:
        raise CapacityError(
            f"graph has {m} edges; subset-indexed operations support at most "
            f"{MAX_SUBSET_EDGES}"
        )
