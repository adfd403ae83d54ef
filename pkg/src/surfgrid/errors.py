"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input rejected because it violates a documented precondition."""

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail

    def to_json(self):
        out = {"error": str(self)}
        out.update({k: _plain(v) for k, v in self.detail.items()})
        return out


class BudgetExceeded(RuntimeError):
    """A search ran out of nodes or time before reaching a definite answer."""

    def __init__(self, message="search budget exhausted", nodes=0):
        super().__init__(message)
        self.nodes = nodes


def _plain(v):
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, tuple):
        return list(v)
    return v
