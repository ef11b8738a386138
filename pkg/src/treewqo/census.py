"""Discriminative-power census and hierarchy audit.

The census counts, for each order, the ordered pairs (s, t) of a corpus
(diagonal included) with s related to t.  Base orders are evaluated
pairwise with their own decision procedures into boolean matrices;
combined orders are conjunctions of their component matrices, which is
their definition.

The audit then checks, on the raw pair sets rather than the counts:

  * every implication between named orders holds pointwise,
  * the orders that are equal by construction (M vs Z&S, and their P/B
    combinations) have identical pair sets,
  * each covering edge of the hierarchy is strict on this corpus, i.e.
    some pair separates the two orders; a missing separating pair is
    reported as unverified, not as a failure.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

import numpy as np

from .generate import GeneratorConfig
from .orders import WqoSpec, all_named_specs, base_relation, implies
from .signature import Tree

__all__ = ["CensusResult", "census", "AuditReport", "hierarchy_audit", "write_census_tsv"]


@dataclass
class CensusResult:
    counts: dict[str, int]
    corpus_size: int
    seed: int | None = None
    size_cap: int | None = None
    matrices: dict[str, np.ndarray] = field(default_factory=dict, repr=False)
    base_matrices: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    def sorted_counts(self) -> list[tuple[str, int]]:
        return sorted(self.counts.items(), key=lambda kv: (kv[1], kv[0]))


def _base_matrix(letter: str, corpus: list[Tree], y_threshold: int) -> np.ndarray:
    n = len(corpus)
    check = base_relation(letter, y_threshold)
    m = np.zeros((n, n), dtype=bool)
    for i, s in enumerate(corpus):
        row = m[i]
        for j, t in enumerate(corpus):
            if check(s, t):
                row[j] = True
    return m


def census(
    corpus: list[Tree],
    specs: list[WqoSpec] | None = None,
    config: GeneratorConfig | None = None,
) -> CensusResult:
    """Count related ordered pairs for each spec over the whole corpus.

    All specs must share one y_threshold.  Deterministic for a fixed
    corpus; the per-spec boolean matrices are kept on the result for the
    audit.
    """
    if specs is None:
        specs = list(all_named_specs())
    thresholds = {s.y_threshold for s in specs}
    if len(thresholds) > 1:
        raise ValueError("census specs must share one y_threshold")
    y_threshold = thresholds.pop() if thresholds else 2

    letters = sorted({l for s in specs for l in s.components})
    base = {l: _base_matrix(l, corpus, y_threshold) for l in letters}
    # Z and S back the audit's identity checks even when only M is named
    for extra in "ZS":
        if any("M" in s.components for s in specs) and extra not in base:
            base[extra] = _base_matrix(extra, corpus, y_threshold)

    counts: dict[str, int] = {}
    matrices: dict[str, np.ndarray] = {}
    for spec in specs:
        m = None
        for letter in spec.components:
            m = base[letter] if m is None else m & base[letter]
        matrices[spec.name] = m
        counts[spec.name] = int(m.sum())

    result = CensusResult(
        counts=counts,
        corpus_size=len(corpus),
        seed=config.seed if config else None,
        size_cap=config.size_cap if config else None,
        matrices=matrices,
        base_matrices=base,
    )
    return result


def write_census_tsv(result: CensusResult, out=None) -> None:
    """Counts as TSV, ascending (ties by name), with a metadata header."""
    if out is None:
        out = sys.stdout
    out.write(f"# seed={result.seed if result.seed is not None else 'unknown'}\n")
    out.write(f"# corpus={result.corpus_size}\n")
    out.write(f"# cap={result.size_cap if result.size_cap is not None else 'unknown'}\n")
    out.write("wqo_name\tpair_count\n")
    for name, count in result.sorted_counts():
        out.write(f"{name}\t{count}\n")


# ---------------------------------------------------------------------------
# audit

@dataclass
class AuditReport:
    implications_checked: int = 0
    violations: list[str] = field(default_factory=list)
    identities: dict[str, bool] = field(default_factory=dict)
    strict_verified: list[tuple[str, str, int]] = field(default_factory=list)
    strict_unverified: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and all(self.identities.values())

    def summary(self) -> str:
        lines = [
            f"implications checked: {self.implications_checked}, "
            f"violations: {len(self.violations)}",
            "identities: " + ", ".join(
                f"{name} {'ok' if good else 'FAILED'}" for name, good in self.identities.items()
            ),
            f"strict edges separated on this corpus: {len(self.strict_verified)}, "
            f"unverified: {len(self.strict_unverified)}",
        ]
        if self.strict_unverified:
            lines.append("unverified edges: " + ", ".join(
                f"{a}<{b}" for a, b in self.strict_unverified))
        lines.extend(self.violations)
        return "\n".join(lines)


def hierarchy_audit(result: CensusResult, corpus: list[Tree] | None = None) -> AuditReport:
    """Audit a census over all named orders; see the module docstring.

    If the result lacks matrices (e.g. loaded from TSV) the corpus is
    required so they can be recomputed.
    """
    specs = list(all_named_specs())
    if not result.matrices or not result.base_matrices:
        if corpus is None:
            raise ValueError("audit needs the census matrices or the corpus")
        result = census(corpus, specs)

    report = AuditReport()
    mats = result.matrices
    missing = [s.name for s in specs if s.name not in mats]
    if missing:
        raise ValueError(f"census does not cover all named orders (missing {missing})")

    # (a) every implication, pointwise on pairs
    implication_pairs = []
    for s1 in specs:
        for s2 in specs:
            if s1.name != s2.name and implies(s1, s2):
                implication_pairs.append((s1.name, s2.name))
    for fine, coarse in implication_pairs:
        report.implications_checked += 1
        bad = mats[fine] & ~mats[coarse]
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            report.violations.append(
                f"implication {fine} => {coarse} violated at corpus pair ({i}, {j})"
            )

    # (b) identities that must hold exactly, built from the base matrices
    base = result.base_matrices
    zs = base["Z"] & base["S"]
    ident = {
        "M=ZS": (mats["M"], zs),
        "MP=ZP": (mats["M"] & base["P"], base["Z"] & base["P"]),
        "MB=ZSB": (mats["MB"], zs & base["B"]),
    }
    for name, (left, right) in ident.items():
        report.identities[name] = bool((left == right).all())

    # (c) strictness on the covering edges of the implication order
    edges = _covering_edges(implication_pairs, [s.name for s in specs])
    for fine, coarse in edges:
        separating = int((mats[coarse] & ~mats[fine]).sum())
        if separating:
            report.strict_verified.append((fine, coarse, separating))
        else:
            report.strict_unverified.append((fine, coarse))
    return report


def _covering_edges(pairs: list[tuple[str, str]], names: list[str]) -> list[tuple[str, str]]:
    below = {n: {c for f, c in pairs if f == n} for n in names}
    edges = []
    for fine, coarse in pairs:
        if not any(coarse in below[mid] for mid in below[fine] if mid != coarse):
            edges.append((fine, coarse))
    return edges
