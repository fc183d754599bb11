"""Orbit classification and incidence verification for the twisted cubic in
PG(3,q), q = 3^m, backed by the C++ core."""

import json as _json

__version__ = "0.1.0"

try:
    from ._pg3q import *  # noqa: F401,F403
    from . import _pg3q as _impl
except ImportError:  # build-tree layout: extension sits next to the package
    from _pg3q import *  # noqa: F401,F403
    import _pg3q as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")] + ["form_census"]


def form_census(ctx):
    """Orbit census of quartics with nonzero discriminant as a dict."""
    return _json.loads(_impl.form_census_json(ctx))
