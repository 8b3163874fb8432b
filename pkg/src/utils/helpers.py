"""
Utility functions for the skew quadric toolkit.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Union

import numpy as np

from src.utils.errors import MalformedInput

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Union[str, int] = "WARNING") -> None:
    """Install the root handler once; library modules only call getLogger."""
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


# ================= Bitsets =================

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    pos = 0
    while mask:
        if mask & 1:
            yield pos
        mask >>= 1
        pos += 1


def bits_to_mask(positions) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


# ================= JSON =================

def make_json_serializable(obj: Any) -> Any:
    """Recursively convert numpy scalars, tuples and sets into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): make_json_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_serializable(item) for item in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(make_json_serializable(item) for item in obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def dump_json(obj: Any) -> str:
    """Byte-deterministic JSON text."""
    return json.dumps(make_json_serializable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def safe_json_parse(text: str) -> Union[Dict[str, Any], List[Any]]:
    """
    Parse a JSON document, raising MalformedInput with the decoder message.

    Args:
        text: Raw JSON text

    Returns:
        The decoded object
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"JSON parse failed: {e}") from e


def read_json_file(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInput(f"Cannot read {path}: {e}") from e
    return safe_json_parse(text)
