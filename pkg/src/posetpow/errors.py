"""Exception types shared across the package."""


class PosetError(Exception):
    """Base class for every error raised by posetpow."""


class CycleError(PosetError, ValueError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cover relation has a directed cycle through %s" % (self.cycle,))


class AxiomError(PosetError, ValueError):
    """A relation matrix failed one of the order axioms.

    ``axiom`` is one of ``"square"``, ``"reflexivity"``, ``"antisymmetry"``,
    ``"transitivity"``; ``witness`` is the offending index tuple.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__("%s violated at %s" % (axiom, self.witness))


class SizeError(PosetError, ValueError):
    pass


class CapError(PosetError):
    """A size guard or catalog cap would be exceeded."""


class EmptyExponentError(PosetError, ValueError):
    pass


class PreconditionError(PosetError, ValueError):
    pass


class SearchExhausted(PosetError):
    """The bounded search ended without a witness. This is not a disproof."""
