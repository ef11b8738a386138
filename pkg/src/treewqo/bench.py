"""Whistle timing benchmarks: optimized checker vs naive reference.

The interesting regime is a stream that never whistles, because every
naive push then scans the entire admitted sequence: quadratic total work,
so doubling the stream length should roughly quadruple the naive time
while the accelerated checkers for the finite-key and size orders stay
near-linear.

`monotone_stream` builds such a stream deterministically: trees with
pairwise-distinct constructor bags, emitted in non-increasing size order.
Distinct bags rule out tree equality and non-increasing sizes rule out
the strictly-smaller branch, so the size order S and the set-refined size
order M admit the whole stream.  Each tree is the canonical chain
realization of one bag: a nullary leaf wrapped by the bag's non-nullary
constructors, extra child slots filled with leaves.

Timings cover the push loop only; tree construction and measure
precomputation happen beforehand so both checkers see identical inputs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .orders import WqoSpec
from .signature import Signature, Tree
from .whistle import NaiveChecker, SequenceChecker

__all__ = ["BenchReport", "bench_whistle", "monotone_stream"]


def _bag_trees_of_size(sig: Signature, leaf: int, wrappers: list[int], size: int):
    """Yield one canonical tree per realizable bag of the given size.

    A bag is determined by the multiplicities of the non-nullary
    constructors (slots force the leaf count), and a tree of size n uses
    wrapper multiplicities m_i with sum(m_i * arity_i) = n - 1.
    """
    arities = sig.arities

    def walk(budget: int, idx: int, counts: list[int]):
        if idx == len(wrappers):
            if budget == 0:
                yield tuple(counts)
            return
        w = wrappers[idx]
        step = arities[w]
        for m in range(budget // step + 1):
            counts.append(m)
            yield from walk(budget - m * step, idx + 1, counts)
            counts.pop()

    for counts in walk(size - 1, 0, []):
        t = Tree(sig, leaf)
        for w, m in zip(wrappers, counts):
            pad = arities[w] - 1
            for _ in range(m):
                t = Tree(sig, w, (t,) + tuple(Tree(sig, leaf) for _ in range(pad)))
        yield t


def monotone_stream(sig: Signature, n: int, tree_size: int) -> list[Tree]:
    """n trees with pairwise-distinct bags, sizes non-increasing around
    `tree_size`; fully admitted by the size/set/bag-key checkers."""
    nullaries = [i for i, a in enumerate(sig.arities) if a == 0]
    wrappers = [i for i, a in enumerate(sig.arities) if a > 0]
    if not nullaries or not wrappers:
        raise ValueError("stream needs a nullary and a non-nullary constructor")
    leaf = nullaries[0]
    out: list[Tree] = []
    size = max(2, int(tree_size * 1.5))
    while len(out) < n and size >= 1:
        for t in _bag_trees_of_size(sig, leaf, wrappers, size):
            out.append(t)
            if len(out) == n:
                break
        size -= 1
    if len(out) < n:
        raise ValueError(f"only {len(out)} distinct bags available near size {tree_size}")
    return out


@dataclass
class BenchReport:
    wqo: str
    n: int
    tree_size: int
    # (checker, stream length, seconds, whistles observed)
    rows: list[tuple[str, int, float, int]] = field(default_factory=list)

    def seconds(self, checker: str, length: int) -> float:
        for c, l, secs, _ in self.rows:
            if c == checker and l == length:
                return secs
        raise KeyError((checker, length))

    def ratio(self, checker: str) -> float:
        return self.seconds(checker, 2 * self.n) / self.seconds(checker, self.n)

    def to_tsv(self) -> str:
        lines = [f"# wqo={self.wqo}\tn={self.n}\ttree_size={self.tree_size}",
                 "checker\tstream_len\tseconds\twhistles"]
        for c, l, secs, wh in self.rows:
            lines.append(f"{c}\t{l}\t{secs:.6f}\t{wh}")
        return "\n".join(lines) + "\n"


def _warm(trees: list[Tree], spec: WqoSpec) -> None:
    comps = spec.expanded
    for t in trees:
        if comps & {"B", "M", "Y"}:
            t.bag
        if "P" in comps:
            t.pre
        if "E" in comps:
            t.eul


def _timed_run(checker, stream: list[Tree]) -> tuple[float, int]:
    push = checker.push
    start = time.perf_counter()
    whistles = 0
    for t in stream:
        if push(t).whistled:
            whistles += 1
    return time.perf_counter() - start, whistles


def bench_whistle(spec: WqoSpec, n: int, tree_size: int = 50,
                  stream: list[Tree] | None = None,
                  sig: Signature | None = None) -> BenchReport:
    """Time optimized and naive checkers on streams of length n and 2n.

    Uses the monotone stream by default (the length-n run takes its
    prefix); pass `stream` (length >= 2n) to bench something else.
    """
    report = BenchReport(spec.name, n, tree_size)
    if n == 0:
        return report
    if stream is None:
        from .signature import default_signature
        stream = monotone_stream(sig or default_signature(), 2 * n, tree_size)
    elif len(stream) < 2 * n:
        raise ValueError("provided stream is shorter than 2n")
    _warm(stream, spec)
    for length in (n, 2 * n):
        for label, checker in (("optimized", SequenceChecker(spec)),
                               ("naive", NaiveChecker(spec))):
            secs, whistles = _timed_run(checker, stream[:length])
            report.rows.append((label, length, secs, whistles))
    return report
