"""Shared fixtures: exhaustive small-graph catalogues, built once per session."""

from __future__ import annotations

import pytest

from helpers import connected_catalogue


@pytest.fixture(scope="session")
def catalogue6():
    """Connected graphs with at most 6 vertices, canonical masks per class."""
    return connected_catalogue(6)


@pytest.fixture(scope="session")
def catalogue7():
    """Connected graphs with at most 7 vertices, canonical masks per class."""
    return connected_catalogue(7)


@pytest.fixture(scope="session")
def catalogue9():
    """Connected graphs with at most 9 vertices, canonical masks per class."""
    return connected_catalogue(9)
