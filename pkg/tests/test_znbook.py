"""'znbook' test."""

import znbook


def test_version():
    """Test the installed version."""
    assert znbook.__version__ == "0.1.0"
