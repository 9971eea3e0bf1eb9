import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ldfeat.graph import LabeledGraph  # noqa: E402


@pytest.fixture
def star_graph():
    """Node 1 with four red neighbours (3, 4, 7, 8) and four white ones (2, 5, 6, 9)."""
    red, white = [3, 4, 7, 8], [2, 5, 6, 9]
    strengths = {3: 1.0, 4: 2.0, 7: 1.0, 8: 1.0, 2: 1.0, 5: 1.0, 6: 2.0, 9: 1.0}
    ids = [str(i) for i in range(1, 10)]
    edges = [(0, k - 1, strengths[k]) for k in red + white]
    labels = {k - 1: "red" for k in red}
    labels.update({k - 1: "white" for k in white})
    return LabeledGraph(ids, edges, labels=labels, label_set=("red", "white"))
