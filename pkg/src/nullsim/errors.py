"""Exception hierarchy shared by the whole package.

Every error raised by library code derives from NullsimError so callers
(CLI, HTTP service) can map failures to exit codes / status payloads by
class name.
"""


class NullsimError(Exception):
    """Base class for all library errors."""


# --- curve evaluation ---

class OutOfDomain(NullsimError):
    """Parameter value outside the curve's declared domain."""


class DerivativeUnavailable(NullsimError):
    """Requested derivative order exceeds what the backend can supply."""


class TooFewSamples(NullsimError):
    """Not enough samples for the requested stencil."""


class NotNull(NullsimError):
    """Velocity vector is not null where a null curve was required."""


# --- framing ---

class GeodesicDegeneracy(NullsimError):
    """Acceleration vanishes or is tangent-parallel: no Cartan frame exists."""


class BadInitialFrame(NullsimError):
    """Initial frame violates the defining scalar relations."""


class IntegratorFailure(NullsimError):
    """Adaptive ODE integration did not converge."""


# --- reparametrization charts ---

class KappaVanishes(NullsimError):
    """Curvature too close to zero for a total-curvature chart."""


class SignChange(NullsimError):
    """Curvature changes sign on the grid; chart would not be monotone."""


class TauVanishes(NullsimError):
    """Torsion too close to zero for the torsion-ratio transformation."""


# --- similarity ---

class DomainOverflow(NullsimError):
    """Transformed parameter leaves the partner curve's domain."""


class NonPositiveLambda(NullsimError):
    """Transformation density must be strictly positive."""


class AnchorRequired(NullsimError):
    """Operation needs an explicit pair of corresponding parameter values."""


class NotNullDirection(NullsimError):
    """Direction vector of a null line is not null (or is zero)."""


# --- spec / IO ---

class SpecError(NullsimError):
    """Base class for curve-spec and config problems."""


class ParseError(SpecError):
    """Malformed JSON input."""


class UnknownBuiltin(SpecError):
    """Builtin curve name not in the registry."""


class SpecValidationError(SpecError):
    """Spec or config fields fail validation."""
