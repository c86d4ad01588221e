class Errors(object):
    """ Collection of custom exceptions
    """
    class NotSquare(ValueError):
        """NotSquare"""
        pass

    class NotHermitian(ValueError):
        """NotHermitian"""
        pass

    class NotPositive(ArithmeticError):
        """NotPositive"""
        pass

    class IllConditioned(ArithmeticError):
        """IllConditioned"""
        pass

    class NonFinite(ValueError):
        """NonFinite"""
        pass

    class DimensionCap(ValueError):
        """DimensionCap"""
        pass

    class ShapeMismatch(ValueError):
        """ShapeMismatch"""
        pass

    class SpaceMismatch(TypeError):
        """SpaceMismatch"""
        pass

    class DomainMismatch(TypeError):
        """DomainMismatch"""
        pass

    class NotCentral(ValueError):
        """NotCentral"""
        pass

    class UnsupportedForm(TypeError):
        """UnsupportedForm"""
        pass

    class InfeasibleConic(ValueError):
        """InfeasibleConic"""
        pass

    class GuardViolation(ValueError):
        """GuardViolation"""
        pass

    class GenerationFailure(RuntimeError):
        """GenerationFailure"""
        pass

    class HypothesisFailure(ValueError):
        """HypothesisFailure"""
        pass

    class RepresentationMismatch(RuntimeError):
        """RepresentationMismatch"""
        pass

    class ConfigError(ValueError):
        """ConfigError"""
        pass

    class UnknownTheorem(LookupError):
        """UnknownTheorem"""
        pass
