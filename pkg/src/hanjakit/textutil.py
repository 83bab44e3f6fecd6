"""Character segmentation helpers.

All indexing in this package is in extended grapheme clusters, not code
points. Hanja is effectively one code point per cluster, but digitized
corpora occasionally carry combining marks.
"""
from __future__ import annotations

import regex

_GRAPHEME = regex.compile(r"\X")


def chars(text: str) -> list[str]:
    """Split ``text`` into extended grapheme clusters."""
    return _GRAPHEME.findall(text)


def char_count(text: str) -> int:
    return len(chars(text))
