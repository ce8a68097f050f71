"""Exception types shared across the package."""


class TensorCertError(Exception):
    """Base class for all tensorcert errors."""


class CompositeModulus(TensorCertError):
    """A claimed prime (or prime power) is composite."""


class SizeGuard(TensorCertError):
    """An operation would exceed the desk-scale enumeration budget."""


class MixedFields(TensorCertError):
    """Operands belong to different fields."""


class DivisionByZero(TensorCertError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class NotAnExtension(TensorCertError):
    """Operation needs a proper extension field, got a prime field."""


class NotInTower(TensorCertError):
    """A field was expected to occur in another field's tower and does not."""


class DimensionMismatch(TensorCertError, ValueError):
    """Shapes of tensors, maps or vectors are inconsistent."""


class OrderMismatch(TensorCertError, ValueError):
    """Tensors of different order where equal order is required."""


class HypothesisViolated(TensorCertError):
    """Arithmetic hypothesis of a construction does not hold."""


class NotEnoughPoints(TensorCertError):
    """The base field has too few rational points for the construction."""


class TowerMismatch(TensorCertError):
    """Certificates being composed do not live on compatible towers."""


class CertificateInvalid(TensorCertError):
    """A certificate failed its exact verification."""


class ConfigError(TensorCertError):
    """Malformed suite configuration."""
