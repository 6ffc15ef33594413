import os

DEFAULT_GUARD = 1_000_000
DEFAULT_CATALOG_CAP = 6
GUARD_ENV = "POSETPOW_GUARD"


def resolve_guard(guard=None):
    """Explicit value wins, then the environment variable, then the default."""
    if guard is not None:
        return int(guard)
    env = os.environ.get(GUARD_ENV)
    if env:
        return int(env)
    return DEFAULT_GUARD
