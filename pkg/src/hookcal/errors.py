class CapacityError(ValueError):
    """Raised when an exhaustive job would enumerate more objects than allowed."""

    def __init__(self, what: str, count: int, cap: int):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what} = {count} objects exceeds the enumeration cap of {cap}")


class MalformedTreeError(ValueError):
    """Edge set is not a tree on its vertex labels (cycle, disconnection, bad label)."""
