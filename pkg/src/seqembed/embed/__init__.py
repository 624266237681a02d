from .oracle import EmbeddingMap, check_embedding, embed_backtracking
from .clusters import ClusterPartition, assign_leftovers, build_cluster_graph, super_regularize
from .phases import distribute_components, phase1_cover, random_halving
from .pipeline import STAGES, PipelineParams, PipelineResult, embed_pipeline
from .edits import embed_with_edits, parity_obstruction
