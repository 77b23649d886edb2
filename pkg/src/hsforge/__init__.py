"""hsforge: exact tools for hidden-set instances in polygonal domains with holes."""

from __future__ import annotations

__version__ = "0.1.0"
