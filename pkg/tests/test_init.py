"""Tests for nilorbits.__init__ module.

This module tests the package initialization, version information,
and import functionality.
"""

import logging

import nilorbits


class TestPackageInitialization:
    """Test package initialization and metadata."""

    def test_package_version(self):
        assert isinstance(nilorbits.__version__, str)
        assert nilorbits.__version__ == "0.1.0"

    def test_package_author(self):
        assert nilorbits.__author__ == "Adithya"
        assert nilorbits.__email__ == "adithyakokkirala@gmail.com"

    def test_all_exports_resolve(self):
        """Every name in __all__ is an attribute of the package."""
        for name in nilorbits.__all__:
            assert hasattr(nilorbits, name), name

    def test_core_exports(self):
        expected = {
            "SimpleType",
            "WeightedDiagram",
            "Partition",
            "enumerate_orbits",
            "friendly_pairs",
            "is_characteristic",
            "very_friendly_check",
            "build_e2",
            "NilorbitsError",
            "ConfigManager",
        }
        assert expected <= set(nilorbits.__all__)

    def test_null_handler(self):
        """The package logger carries a NullHandler."""
        handlers = logging.getLogger("nilorbits").handlers
        assert any(isinstance(h, logging.NullHandler) for h in handlers)

    def test_docstring_example(self):
        """The example in the package docstring holds."""
        pairs = nilorbits.friendly_pairs(nilorbits.SimpleType.parse("G2"))
        assert len(pairs) == 1
