"""
Typed rejections raised by the Lie engine and the verification services
"""


class LieEngineError(ValueError):
    """Base class for invalid requests made to the engine"""


class InvalidCartanTypeError(LieEngineError):
    """The (family, rank) pair does not name a finite Cartan type"""


class UnsupportedFamilyError(LieEngineError):
    """The family has no twisted affinization in this engine"""


class InvalidNodeError(LieEngineError):
    """A node label is not part of the diagram or not admissible here"""


class InfiniteParabolicError(LieEngineError):
    """A parabolic subgroup generated by the whole affine node set was requested"""


class NotMinimalCosetRepError(LieEngineError):
    """An element was expected to be a minimal length coset representative"""


class EnumerationTooLargeError(LieEngineError):
    """Brute-force enumeration exceeded the configured group order"""


class InvalidSweepError(LieEngineError):
    """Sweep parameters out of range"""


class InvariantViolation(RuntimeError):
    """An internal invariant of the engine does not hold"""


class OracleMismatchError(InvariantViolation):
    """The brute-force oracle and the matrix engine disagree"""

    def __init__(self, check: str, witness: str):
        self.check = check
        self.witness = witness
        super().__init__(f"oracle mismatch in {check}: {witness}")
