"""Shared fixtures: the worked examples every suite keeps coming back to."""

import pytest

from hyperspace.geometry import Segment, box_boundary


@pytest.fixture
def seg_pair():
    """Two parallel horizontal segments with asymmetric directed distances."""
    A = Segment((0.0, 0.0), (1.0, 0.0))
    B = Segment((0.0, 1.0), (2.0, 1.0))
    return A, B


@pytest.fixture
def rect_pair():
    """A rectangle boundary strictly inside a larger one."""
    A = box_boundary((1.0, 1.0), (4.0, 3.0))
    B = box_boundary((0.0, 0.0), (7.0, 5.0))
    return A, B
