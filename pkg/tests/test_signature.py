import pytest
from hypothesis import given, settings

from treewqo import (
    Constructor,
    ParseError,
    Signature,
    constructor_bag,
    constructor_set,
    euler_traversal,
    load_trees,
    parse_tree,
    pre_traversal,
    render_tree,
    repeated_set,
    save_trees,
    size,
    tree_equal,
    tree_hash,
)

from .strategies import trees


def sym_str(ts):
    return [(s.constructor, s.visit) for s in ts.symbols]


class TestParsing:
    def test_leaf(self, sig):
        t = parse_tree("a", sig)
        assert t.name == "a" and t.children == ()

    def test_nested(self, sig):
        t = parse_tree("b(b(a))", sig)
        assert render_tree(t) == "b(b(a))"
        assert size(t) == 3

    def test_whitespace_insignificant(self, sig):
        assert parse_tree(" c( b(a) ,\tb(a) ) ", sig) == parse_tree("c(b(a),b(a))", sig)

    def test_arity_mismatch(self, sig):
        with pytest.raises(ParseError, match="arity mismatch for 'c'"):
            parse_tree("c(b(a))", sig)

    def test_arity_mismatch_reports_position(self, sig):
        with pytest.raises(ParseError) as exc:
            parse_tree("b(c(a))", sig)
        assert exc.value.position == 2

    def test_bare_name_with_positive_arity(self, sig):
        with pytest.raises(ParseError, match="arity mismatch for 'b'"):
            parse_tree("b", sig)

    def test_unknown_constructor(self, sig):
        with pytest.raises(ParseError, match="unknown constructor 'x'"):
            parse_tree("b(x)", sig)

    @pytest.mark.parametrize("bad", ["", "b(", "b(a", "b(a))", "a b", "c(a,,a)", "b()", ",", "c(a a)"])
    def test_syntax_errors(self, sig, bad):
        with pytest.raises(ParseError):
            parse_tree(bad, sig)

    @given(t=trees())
    @settings(max_examples=200)
    def test_render_parse_round_trip(self, t):
        assert parse_tree(render_tree(t), t.sig) == t

    def test_render_examples(self, sig, worked):
        assert render_tree(parse_tree("a", sig)) == "a"
        assert render_tree(worked["A"]) == "b(b(a))"
        assert render_tree(worked["C"]) == "d(b(a),b(a),b(a))"


class TestSignature:
    def test_duplicate_name_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Signature([("a", 0), ("a", 1)])

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum"):
            Signature([("a", 0, 0.5), ("b", 1, 0.4)])

    def test_partial_probabilities_rejected(self):
        with pytest.raises(ValueError):
            Signature([("a", 0, 0.5), ("b", 1, None)])

    def test_parse_file_format(self, tmp_path):
        text = "# default corpus signature\na 0 0.50\nb 1 0.20\n\nc 2 0.15\nd 3 0.15\n"
        s = Signature.parse(text)
        assert s.names == ("a", "b", "c", "d")
        assert s.arities == (0, 1, 2, 3)
        assert s.probabilities == (0.5, 0.2, 0.15, 0.15)
        p = tmp_path / "sig.txt"
        p.write_text(text)
        assert Signature.from_file(p) == s

    def test_parse_errors(self):
        with pytest.raises(ParseError, match="line 1"):
            Signature.parse("a zero")
        with pytest.raises(ParseError, match="line 2"):
            Signature.parse("a 0\nb one two three four")


class TestMeasures:
    def test_sizes(self, sig, worked):
        assert size(parse_tree("a", sig)) == 1
        assert size(worked["A"]) == 3
        assert size(worked["C"]) == 7

    def test_constructor_set(self, sig, worked):
        assert constructor_set(parse_tree("a", sig)).names() == {"a"}
        assert constructor_set(worked["A"]).names() == {"a", "b"}
        assert constructor_set(worked["B"]).names() == {"a", "b", "c"}

    def test_repeated_set(self, worked):
        assert repeated_set(worked["A"], 2).names() == {"b"}
        assert repeated_set(worked["B"], 2).names() == {"a", "b"}
        assert repeated_set(worked["C"], 2).names() == {"a", "b"}

    def test_repeated_set_rejects_small_k(self, worked):
        with pytest.raises(ValueError):
            repeated_set(worked["A"], 1)

    def test_constructor_bag(self, sig, worked):
        assert dict(zip(sig.names, constructor_bag(parse_tree("a", sig)).counts)) == {
            "a": 1, "b": 0, "c": 0, "d": 0}
        assert constructor_bag(worked["B"]).counts == (2, 2, 1, 0)
        assert constructor_bag(worked["A"]).counts == (1, 2, 0, 0)
        assert constructor_bag(worked["B"]) == constructor_bag(worked["D"])

    def test_pre_traversal(self, sig, worked):
        assert [s.constructor for s in pre_traversal(worked["A"])] == ["b", "b", "a"]
        assert [s.constructor for s in pre_traversal(parse_tree("a", sig))] == ["a"]
        # hand preorder walk: root, then left subtree, then right subtree
        assert [s.constructor for s in pre_traversal(worked["B"])] == ["c", "b", "a", "b", "a"]
        assert all(s.visit == 0 for s in pre_traversal(worked["C"]))

    def test_euler_traversal(self, sig, worked):
        assert sym_str(euler_traversal(worked["A"])) == [
            ("b", 0), ("b", 0), ("a", 0), ("b", 1), ("b", 1)]
        assert sym_str(euler_traversal(worked["B"])) == [
            ("c", 0), ("b", 0), ("a", 0), ("b", 1), ("c", 1),
            ("b", 0), ("a", 0), ("b", 1), ("c", 2)]
        assert sym_str(euler_traversal(parse_tree("a", sig))) == [("a", 0)]

    def test_hash_deterministic_and_construction_independent(self, sig, worked):
        t = worked["A"]
        assert tree_hash(t) == tree_hash(t)
        assert tree_hash(t) == tree_hash(parse_tree("b(b(a))", sig))

    def test_tree_equal(self, sig, worked):
        a = parse_tree("a", sig)
        assert tree_equal(a, parse_tree("a", sig))
        assert not tree_equal(parse_tree("b(a)", sig), a)
        assert tree_equal(worked["B"], parse_tree("c(b(a),b(a))", sig))
        assert not tree_equal(worked["B"], worked["D"])


class TestMeasureProperties:
    @given(t=trees())
    @settings(max_examples=200)
    def test_size_consistency(self, t):
        assert size(t) == constructor_bag(t).total() == len(pre_traversal(t))

    @given(t=trees())
    @settings(max_examples=200)
    def test_bag_support_and_repeats(self, t):
        assert constructor_bag(t).support() == constructor_set(t)
        assert repeated_set(t, 2) <= constructor_set(t)
        assert repeated_set(t, 3) <= repeated_set(t, 2)

    @given(t=trees(), u=trees())
    @settings(max_examples=200)
    def test_pre_injective(self, t, u):
        if t != u:
            assert pre_traversal(t) != pre_traversal(u)

    @given(t=trees())
    @settings(max_examples=200)
    def test_euler_length(self, t):
        expected = sum(t.sig.arities[n.root] + 1 for n in t.nodes())
        assert len(euler_traversal(t)) == expected

    def test_euler_length_of_b(self, worked):
        assert len(euler_traversal(worked["B"])) == 9

    @given(t=trees())
    @settings(max_examples=200)
    def test_pre_is_first_visits_of_euler(self, t):
        firsts = [s.constructor for s in euler_traversal(t).symbols if s.visit == 0]
        assert firsts == [s.constructor for s in pre_traversal(t).symbols]

    @given(t=trees(), u=trees())
    @settings(max_examples=200)
    def test_equal_trees_hash_equal(self, t, u):
        if t == u:
            assert tree_hash(t) == tree_hash(u)


def test_tree_file_round_trip(tmp_path, sig, worked):
    path = tmp_path / "trees.txt"
    ts = [worked["A"], worked["B"], worked["C"]]
    save_trees(path, ts)
    assert load_trees(path, sig) == ts


def test_tree_file_blank_lines_ignored(tmp_path, sig):
    path = tmp_path / "trees.txt"
    path.write_text("a\n\nb(a)\n  \n")
    assert [render_tree(t) for t in load_trees(path, sig)] == ["a", "b(a)"]


def test_tree_file_error_carries_line(tmp_path, sig):
    path = tmp_path / "trees.txt"
    path.write_text("a\nb(a)\nc(a)\n")
    with pytest.raises(ParseError, match="line 3"):
        load_trees(path, sig)


def test_deep_tree_no_recursion_limit(sig):
    deep = "b(" * 5000 + "a" + ")" * 5000
    t = parse_tree(deep, sig)
    assert size(t) == 5001
    assert render_tree(t) == deep
    assert constructor_bag(t).counts == (1, 5000, 0, 0)
    assert len(euler_traversal(t)) == 10001
