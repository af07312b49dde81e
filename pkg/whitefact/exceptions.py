class WhitefactException(Exception):
    """
    Base class of all domain errors raised by the engine
    """
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class FactorMismatchException(WhitefactException):
    """
    Raised, if elements or automorphisms of different factors are combined
    """


class InvalidElementException(WhitefactException):
    """
    Raised, if a payload does not name an element of its factor
    """


class MixedSystemException(WhitefactException):
    """
    Raised, if words of different factor systems are combined
    """
    def __init__(self):
        super().__init__('words belong to different factor systems')


class OracleRequiresFiniteFactorsException(WhitefactException):
    """
    Raised, if an exhaustive operation is requested for a system with an infinite factor
    """
    def __init__(self, operation='oracle'):
        super().__init__(f'{operation} requires finite factors')


class AlreadyBaseEquivalentException(WhitefactException):
    """
    Raised, if a reduction step is requested at volume n
    """
    def __init__(self):
        super().__init__('already base-equivalent')


class NonSplittingInputException(WhitefactException):
    """
    Raised, if a conjugator tuple does not define a free splitting
    """
    def __init__(self, volume):
        super().__init__(f'non-splitting input: no fold found at volume {volume}')


class NotAStabilizerException(WhitefactException):
    """
    Raised, if an automorphism does not fix the requested labelling
    """
    def __init__(self, shape, slot):
        super().__init__(f'not a stabilizer of {shape}: slot {slot} is moved')
        self.slot = slot


class InvalidBoundException(WhitefactException):
    """
    Raised, if a ball bound is below the number of factors
    """
    def __init__(self, bound, n):
        super().__init__(f'bound {bound} is below n = {n}')


class InvalidWhiteheadException(WhitefactException):
    """
    Raised, if a Whitehead automorphism has its operating factor in Y
    """


class ParseException(WhitefactException):
    """
    Raised, if a JSON payload does not follow its schema
    """


class InvalidRadiusException(WhitefactException):
    """
    Raised, if a ball radius is negative
    """
    def __init__(self, radius):
        super().__init__(f'ball radius must be non-negative, got {radius}')
