"""Shared fixtures: classified witness equations and a fast zero-test policy."""

from __future__ import annotations

import pytest

from hyperinv import classify, corpus


@pytest.fixture(scope="session")
def witness_reports():
    """Classification reports for the witness corpus, computed once."""
    return {key: classify(eq) for key, eq in corpus.witnesses().items()}


@pytest.fixture(scope="session")
def s2_functional_report():
    return classify(corpus.s2_functional())


@pytest.fixture(scope="session")
def s3_functional_report():
    return classify(corpus.s3_functional())
