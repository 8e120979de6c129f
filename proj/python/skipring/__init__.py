# Copyright 2026 The skipring Authors
# SPDX-License-Identifier: Apache-2.0
"""Straggler-resilient private ring training: analytical bounds, timeout
search, and CSV experiment drivers over the C++ core."""

try:
    from ._skipring import *  # noqa: F401,F403  (installed wheel layout)
    from . import _skipring as _core
except ImportError:
    from _skipring import *  # noqa: F401,F403  (build-tree layout)
    import _skipring as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
