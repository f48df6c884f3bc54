"""Exception and warning taxonomy shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class MalformedXml(EngineError):
    """Input document is not parseable XML."""


class SchemaViolation(EngineError):
    """Document parses but violates the expected gbXML structure."""


class UnitError(EngineError):
    """Length unit declaration is missing or unrecognized."""


class DegenerateGeometry(EngineError):
    """Polygon has collinear vertices, self-intersects, or zero area."""


class UnclassifiableSurface(EngineError):
    """No classification rule matches and no surface type was declared."""


class UnresolvedMaterial(EngineError):
    """One or more material or construction references cannot be resolved.

    `missing` carries the full list of unresolvable names so callers can
    report everything at once instead of failing one name at a time.
    """

    def __init__(self, missing):
        self.missing = sorted(set(missing))
        super().__init__("unresolved material(s): " + ", ".join(self.missing))


class NonpositiveConductivity(EngineError):
    """A layer's conductivity is zero or negative."""


class MalformedEpw(EngineError):
    """EPW document cannot be parsed."""


class WrongRecordCount(EngineError):
    """EPW data section does not hold exactly 8760 hourly rows."""


class ValidationError(EngineError):
    """Material record violates its invariants (missing source, negatives)."""


class ServiceUnavailable(EngineError):
    """Materials service could not be reached after retries."""


class ConfigError(EngineError):
    """Run configuration is invalid (missing paths, bad settings)."""


class PlanError(EngineError):
    """Substitution plan references constructions absent from the model."""


class InstabilityWarning(UserWarning):
    """Explicit Euler step exceeds the zone stability limit; sub-stepping."""
