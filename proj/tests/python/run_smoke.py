"""ctest entry point: exit 77 (skip) when the extension is not installed."""

import pathlib
import sys

try:
    import zqadd  # noqa: F401
except ImportError:
    print("zqadd extension not importable; skipping")
    sys.exit(77)

import pytest

sys.exit(pytest.main(["-q", str(pathlib.Path(__file__).parent)]))
