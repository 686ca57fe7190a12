"""Shared fixtures: locate the built extension and the CLI binary."""

import os
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


def _ensure_importable():
    try:
        import ssdo  # noqa: F401

        return
    except ImportError:
        pass
    for candidate in (ROOT / "build" / "python", ROOT / "build-debug" / "python"):
        if (candidate / "ssdo" / "__init__.py").exists():
            sys.path.insert(0, str(candidate))
            return


_ensure_importable()

RING = "4 4 0\n0 1 1\n1 2 1\n2 3 1\n3 0 5\n"
TRIANGLE = "3 3 0\n0 1 1\n1 2 10\n0 2 12\n"


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("SSDO_CLI")
    if not path:
        fallback = ROOT / "build" / "ssdo"
        path = str(fallback) if fallback.exists() else None
    if not path or not pathlib.Path(path).exists():
        pytest.skip("ssdo CLI binary not available (set SSDO_CLI)")
    return path


@pytest.fixture
def ring_file(tmp_path):
    p = tmp_path / "ring.graph"
    p.write_text(RING)
    return str(p)


@pytest.fixture
def triangle_file(tmp_path):
    p = tmp_path / "triangle.graph"
    p.write_text(TRIANGLE)
    return str(p)
