"""Exception types shared across the library."""


class DomainError(ValueError):
    """Structurally well-formed input that violates a mathematical precondition."""


class ExchangeAxiomError(DomainError):
    """Basis exchange fails; carries a concrete witness (B1, B2, x)."""

    def __init__(self, basis1, basis2, element):
        self.basis1 = frozenset(basis1)
        self.basis2 = frozenset(basis2)
        self.element = element
        b1 = "{%s}" % ",".join(map(str, sorted(self.basis1)))
        b2 = "{%s}" % ",".join(map(str, sorted(self.basis2)))
        super().__init__(
            f"exchange axiom fails: B1={b1}, B2={b2}, x={element} has no exchange partner"
        )


class GaleOrderError(DomainError):
    """Componentwise comparison of sorted subsets fails; carries the first bad index."""

    def __init__(self, index, lo_value, hi_value):
        self.index = index
        super().__init__(
            f"Gale order violated at index {index}: {lo_value} > {hi_value}"
        )
