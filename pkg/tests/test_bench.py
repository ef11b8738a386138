import pytest

from treewqo import (
    NaiveChecker,
    SequenceChecker,
    bench_whistle,
    default_signature,
    monotone_stream,
    parse_wqo_name,
)


class TestMonotoneStream:
    def test_sizes_non_increasing_and_bags_distinct(self, sig):
        stream = monotone_stream(sig, 500, 30)
        sizes = [t.size for t in stream]
        assert sizes == sorted(sizes, reverse=True)
        bags = {t.bag.counts for t in stream}
        assert len(bags) == 500

    @pytest.mark.parametrize("name", ["S", "M"])
    def test_fully_admitted(self, sig, name):
        stream = monotone_stream(sig, 300, 25)
        for checker in (SequenceChecker(parse_wqo_name(name)),
                        NaiveChecker(parse_wqo_name(name))):
            assert all(checker.push(t).admitted for t in stream)

    def test_needs_workable_signature(self):
        from treewqo import Signature
        with pytest.raises(ValueError, match="nullary"):
            monotone_stream(Signature([("a", 0)]), 10, 5)


class TestBenchReport:
    def test_empty_run(self):
        rep = bench_whistle(parse_wqo_name("S"), 0)
        assert rep.rows == []
        assert rep.to_tsv().count("\n") == 2  # header lines only

    def test_report_shape(self):
        rep = bench_whistle(parse_wqo_name("S"), 50, 20)
        assert {(c, l) for c, l, _, _ in rep.rows} == {
            ("optimized", 50), ("optimized", 100), ("naive", 50), ("naive", 100)}
        assert all(secs >= 0 for _, _, secs, _ in rep.rows)
        assert all(wh == 0 for _, _, _, wh in rep.rows)

    def test_tsv_round_numbers(self):
        rep = bench_whistle(parse_wqo_name("M"), 20, 15)
        lines = rep.to_tsv().splitlines()
        assert lines[0].startswith("# wqo=M")
        assert lines[1] == "checker\tstream_len\tseconds\twhistles"
        assert len(lines) == 6

    def test_scan_checker_tracks_naive_for_embedding(self):
        # no acceleration exists for the embedding order: the optimized
        # checker degenerates to the same scan, so times stay comparable
        rep = bench_whistle(parse_wqo_name("H"), 200, 30)
        ratio = rep.seconds("optimized", 400) / rep.seconds("naive", 400)
        assert 0.3 < ratio < 3.0
