"""Small text-file helpers shared by the readers and writers.

All formats in this package are UTF-8 text; files ending in ``.gz`` are
transparently (de)compressed.
"""

from __future__ import annotations

import gzip
import os
from typing import IO


def open_text(path: str | os.PathLike, mode: str = "r") -> IO[str]:
    """Open ``path`` as UTF-8 text, gunzipping when the name ends in .gz."""
    if mode not in ("r", "w"):
        raise ValueError(f"unsupported mode {mode!r}")
    if str(path).endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")
