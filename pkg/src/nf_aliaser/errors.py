"""Exception categories raised across the package."""


class GeometryError(ValueError):
    """Invalid array lattice, scene, or wave parameters."""


class GridError(ValueError):
    """Invalid evaluation grid, or a field/grid mismatch."""


class SingularityError(ValueError):
    """Evaluation requested within the exclusion radius of a point source."""


class ConfigError(ValueError):
    """Run configuration failed to parse or validate."""
