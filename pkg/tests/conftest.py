import pytest

from treewqo import default_signature, parse_tree


@pytest.fixture(scope="session")
def sig():
    return default_signature()


@pytest.fixture(scope="session")
def worked(sig):
    """The four reference trees used across the suite.

    D is any tree with the same bag as B but incomparable to it under the
    preorder-subsequence order; D_PLUS is D with one extra unary node.
    """
    return {
        "A": parse_tree("b(b(a))", sig),
        "B": parse_tree("c(b(a),b(a))", sig),
        "C": parse_tree("d(b(a),b(a),b(a))", sig),
        "D": parse_tree("c(b(b(a)),a)", sig),
        "D_PLUS": parse_tree("c(b(b(b(a))),a)", sig),
    }
