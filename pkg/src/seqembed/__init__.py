"""Embedding bounded-degree sequences into dense host graphs."""

from .graph import SimpleGraph, format_edge_list, parse_edge_list
from .sequences import (BipartiteDemand, ffactor_condition_holds, is_graphic, realize_bipartite,
                        realize_graphic, zero_sum_split)
from .gadgets import build_bounded_realization, verify_bounded_structure
from .unbalanced import UnbalancedBipartiteSeq, decompose_unbalanced
from .stars import star_decompose
from .embed import (EmbeddingMap, check_embedding, embed_backtracking, embed_pipeline,
                    embed_with_edits, parity_obstruction)

__version__ = "0.1.0"
