from ._core import (
    ArchiveError,
    GraphCollection,
    GraphParseError,
    LabeledGraph,
    __version__,
    compress,
    decompress,
    generate_perturbation_chain,
    is_isomorphic,
    parse_collection,
    serialize_collection,
)

__all__ = [
    "ArchiveError",
    "GraphCollection",
    "GraphParseError",
    "LabeledGraph",
    "__version__",
    "compress",
    "decompress",
    "generate_perturbation_chain",
    "is_isomorphic",
    "parse_collection",
    "serialize_collection",
]
