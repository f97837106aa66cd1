"""Planar quasi-uniform nematic fields relieving frustration on a line or a circle."""

from __future__ import annotations

__version__ = "0.1.0"
