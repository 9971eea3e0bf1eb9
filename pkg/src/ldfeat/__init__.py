"""Label-dependent feature extraction for within-network node classification."""

from .boosting import DecisionStump, StumpEnsemble, predict, train_adaboost
from .config import RunConfig
from .dataset import (
    Column,
    FeatureMatrix,
    build_features,
    mask_labels,
    read_arff,
    read_csv,
    write_arff,
    write_csv,
)
from .evaluation import EvalReport, cross_validate
from .graph import (
    Direction,
    GraphError,
    LabeledGraph,
    known_unknown_partition,
    labeled_neighbors,
    neighbors,
)
from .ingest import (
    AttendanceRecord,
    IngestReport,
    attach_labels_and_attributes,
    clean_participants,
    load_edge_list,
    project_coattendance,
    write_edge_list,
)
from .labelfeat import LabelFeatureVector, LiftMode, MissingPolicy, cc_label, lift, ncn, ncs
from .measures import betweenness, clustering_coefficient, degree_centrality
from .subgraph import LabelSubgraph, select, select_augmented
from .synthetic import generate_homophily_graph

__version__ = "0.1.0"
