"""Form data files shipped with the package."""

from importlib import resources


def path(name: str):
    """Filesystem path of a bundled fixture, e.g. ``path("11a.json")``."""
    return resources.files(__package__) / name
