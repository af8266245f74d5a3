import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fracdim import PointCloud


@pytest.fixture
def grid11():
    """Eleven points 0, 0.1, ..., 1.0."""
    return PointCloud(np.arange(11) * 0.1)


@pytest.fixture
def two_points():
    return PointCloud([[0.0], [1.0]])
