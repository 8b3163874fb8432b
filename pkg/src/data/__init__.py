"""
Sub-package with the JSON / text codecs for every value type.
Import the public helpers here for convenience.
"""
from .codec import decode_mf, encode_mf  # noqa: F401
from .graph_format import load_graph, parse_graph_text  # noqa: F401
