"""Profiling of social-media reaction to 51% attacks on proof-of-work currencies."""

import os
import pathlib

from ._core import *  # noqa: F401,F403
from ._core import Error, InputError, EmptyDatasetError, PreconditionError  # noqa: F401

__version__ = "0.1.0"


def data_dir() -> pathlib.Path:
    """Bundled timeline, lexicons and samples.

    $ATTACKWATCH_DATA wins; then the copy installed next to the package; then
    the source tree's data/ directory.
    """
    env = os.environ.get("ATTACKWATCH_DATA")
    if env:
        return pathlib.Path(env)
    here = pathlib.Path(__file__).resolve().parent
    for candidate in (here / "data", here.parent.parent / "data"):
        if (candidate / "timeline.yaml").exists():
            return candidate
    raise FileNotFoundError("attackwatch data directory not found; set ATTACKWATCH_DATA")


def bundled_timeline():
    return Timeline.load(data_dir() / "timeline.yaml")  # noqa: F405


def bundled_lexicons():
    return LexiconSet.load(data_dir() / "lexicons")  # noqa: F405
