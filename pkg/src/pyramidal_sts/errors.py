"""Exception types shared across the package."""


class StructureError(ValueError):
    """An element or object does not fit the group it is used with."""


class DomainError(ValueError):
    """A parameter lies outside the domain of a construction."""


class NonExistenceError(DomainError):
    """No 3-pyramidal STS exists for the requested order.

    ``residue`` and ``modulus`` name the forbidden congruence class.
    """

    def __init__(self, v, residue, modulus, message=None):
        self.v = v
        self.residue = residue
        self.modulus = modulus
        if message is None:
            message = f"v ≡ {residue} (mod {modulus}): no 3-pyramidal STS({v}) exists"
        super().__init__(message)


class ConstructionError(RuntimeError):
    """A constructor produced an object that failed its own audit."""


class SearchLimitExceeded(RuntimeError):
    """A backtracking search hit its node limit before finishing.

    Distinct from a ``None`` result, which means the space was exhausted
    (or ruled out by a parity argument) and nothing exists.
    """

    def __init__(self, what, node_limit):
        self.node_limit = node_limit
        super().__init__(f"{what}: node limit {node_limit} exceeded")
