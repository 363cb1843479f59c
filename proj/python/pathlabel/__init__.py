"""Proposed-path and obstacle labels from odometry and range scans."""

from ._pathlabel import *  # noqa: F401,F403
from ._pathlabel import __doc__  # noqa: F401

UNKNOWN = 0
PROPOSED_PATH = 1
OBSTACLE = 2
