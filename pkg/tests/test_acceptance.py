"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line with its runtime (run with -s to see the lines as they happen)."""
import subprocess
import sys
import time
from collections import Counter
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest
import scipy.stats

from helpers import (
    enumerate_signature_class,
    graph_key,
    random_graph,
    signature_of,
)

from nospam import (
    CATALOG,
    Flag,
    Graph,
    RngStream,
    analyze,
    build_catalog,
    count_patterns,
    count_patterns_oracle,
    mine,
    parse_edge_list,
    randomize,
    verify_signature,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
EXAMPLE_NETWORK = REPO_ROOT / "exampleNetwork.txt"


@contextmanager
def criterion(num: int, budget: float, description: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - start
        print(f"CRITERION {num} FAIL ({elapsed:.2f}s / budget {budget:.0f}s): {description}")
        raise
    elapsed = time.perf_counter() - start
    in_budget = elapsed <= budget
    verdict = "PASS" if in_budget else "FAIL"
    print(f"CRITERION {num} {verdict} ({elapsed:.2f}s / budget {budget:.0f}s): {description}")
    assert in_budget, f"criterion {num} exceeded its {budget:.0f}s budget: {elapsed:.2f}s"


def test_criterion_1_catalog_cardinalities():
    with criterion(1, 1.0, "catalog enumerates 64/54 codes, 13/30 classes"):
        fresh = build_catalog()
        for cat in (CATALOG, fresh):
            assert cat.num_codes == 64
            assert cat.num_connected_codes == 54
            assert cat.num_unmarked_classes == 13
            assert cat.num_marked_classes == 30
        assert fresh == CATALOG


def test_criterion_2_ffl_split():
    with criterion(2, 1.0, "feed-forward class splits into 3 marked roles"):
        ffl_unmarked = CATALOG.classify_unmarked(21)
        children = CATALOG.marked_children(ffl_unmarked)
        assert len(children) == 3
        g, _ = parse_edge_list(["1 2", "1 3", "2 3"])
        counts = count_patterns(g)
        assert counts.sum() == 3
        hit_classes = set()
        for v in range(3):
            row = np.nonzero(counts[v])[0]
            assert len(row) == 1 and counts[v, row[0]] == 1
            hit_classes.add(int(row[0]) + 1)
        assert hit_classes == set(children)
        assert len(hit_classes) == 3


def test_criterion_3_oracle_equivalence():
    with criterion(3, 60.0, "counting matches brute-force oracle on 520 random graphs"):
        rng = np.random.default_rng(3001)
        cases = [(60, 0.02, 0.0), (60, 0.5, 1.0), (60, 0.25, 0.5),
                 (3, 0.5, 0.0), (10, 0.02, 1.0)]
        while len(cases) < 520:
            n = 3 + int(57 * float(rng.random()) ** 2)
            cases.append((n, float(rng.uniform(0.02, 0.5)), float(rng.uniform(0, 1))))
        for n, density, mutual in cases:
            g = random_graph(rng, n, density, mutual)
            assert np.array_equal(count_patterns(g), count_patterns_oracle(g)), (
                n, density, mutual)


def test_criterion_4_null_model_invariants():
    with criterion(4, 60.0, "randomization preserves signatures, graphs stay simple"):
        rng = np.random.default_rng(4001)
        for k in range(200):
            n = int(rng.integers(4, 41))
            g = random_graph(rng, n, float(rng.uniform(0.05, 0.4)),
                             float(rng.uniform(0, 1)))
            edges = g.num_directed_edges
            for attempts in (edges, 10 * edges):
                h, stats = randomize(g, attempts, RngStream(4002, (k, attempts)))
                assert verify_signature(g, h)
                assert stats.attempts == attempts
                # reconstructing validates simplicity: the constructor
                # rejects self-loops and duplicate edges
                rebuilt = Graph(h.labels, h.directed_edges())
                assert rebuilt.directed_edge_set() == h.directed_edge_set()


def test_criterion_5_uniform_sampling():
    with criterion(5, 300.0, "chain visits all 64 reachable states uniformly"):
        g = Graph(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5),
                             (0, 3), (3, 0), (1, 5), (5, 1)])
        states = enumerate_signature_class(6, signature_of(g))
        assert len(states) == 64
        assert len(states) <= 200
        chains = 100_000
        attempts = 50 * g.num_directed_edges
        counts = Counter()
        for s in range(chains):
            h, _ = randomize(g, attempts, RngStream(5001, (s,)))
            counts[graph_key(h)] += 1
        assert set(counts) == set(states)
        expected = chains / len(states)
        freqs = np.array([counts[st] for st in states])
        assert freqs.min() >= 0.85 * expected
        assert freqs.max() <= 1.15 * expected
        p = scipy.stats.chisquare(freqs).pvalue
        assert p > 0.001, f"chi-square p = {p}"


def test_criterion_6_streaming_moments():
    with criterion(6, 60.0, "streaming mean/sigma match two-pass reference at 1e-9"):
        rng = np.random.default_rng(6001)
        for _ in range(50):
            n = int(rng.integers(4, 41))
            g = random_graph(rng, n, float(rng.uniform(0.05, 0.4)),
                             float(rng.uniform(0, 1)))
            samples = int(rng.integers(2, 201))
            attempts = 2 * g.num_directed_edges
            seed = int(rng.integers(1 << 48))
            result = mine(g, samples, attempts, RngStream(seed))
            stack = np.stack([
                count_patterns(randomize(g, attempts, RngStream(seed).child(s))[0])
                for s in range(samples)
            ])
            assert np.allclose(result.mean, stack.mean(axis=0), rtol=1e-9, atol=0)
            assert np.allclose(result.sigma, stack.std(axis=0), rtol=1e-9, atol=1e-12)


def test_criterion_7_degenerate_ensemble():
    with criterion(7, 10.0, "attempts = 0 gives all-zero Z with degenerate flags"):
        rng = np.random.default_rng(7001)
        graphs = [
            parse_edge_list(["1 2", "1 3", "2 3"])[0],
            random_graph(rng, 20, 0.3, 0.5),
            random_graph(rng, 8, 0.6, 0.0),
        ]
        for g in graphs:
            result = analyze(g, 25, 0, RngStream(7002))
            for part in (result.node, result.classes):
                assert not part.table.values.any()
                assert np.all(part.table.flags == Flag.ZERO_SIGMA_ZERO_DELTA)
                # numerator original - mean is exactly zero
                assert np.array_equal(part.mean, part.original)
                assert not (part.original - part.mean).any()


def test_criterion_8_end_to_end_reproducibility(tmp_path):
    with criterion(8, 250.0, "reference CLI run finishes < 2 min, byte-identical"):
        net = tmp_path / "exampleNetwork.txt"
        net.write_bytes(EXAMPLE_NETWORK.read_bytes())
        g, _ = parse_edge_list(net.read_text().splitlines())
        assert 900 <= g.num_directed_edges <= 1100  # ~1,000-link bundle
        outputs = []
        for _ in range(2):
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "nospam", "exampleNetwork.txt",
                 "2000", "1500", "--seed", "42"],
                cwd=tmp_path, capture_output=True, text=True, timeout=240,
            )
            elapsed = time.perf_counter() - start
            assert proc.returncode == 0, proc.stderr
            assert elapsed < 120.0, f"run took {elapsed:.1f}s"
            out = tmp_path / "exampleNetwork.nospam.tsv"
            assert out.exists()
            outputs.append(out.read_bytes())
            out.unlink()
        assert outputs[0] == outputs[1]
        lines = outputs[0].decode().splitlines()
        assert len(lines) == 1 + g.num_nodes
        assert len(lines[0].split("\t")) == 31


def test_criterion_9_worker_count_invariance():
    with criterion(9, 60.0, "identical results for 1, 4 and 8 workers"):
        rng = np.random.default_rng(9001)
        g = random_graph(rng, 22, 0.3, 0.4)
        results = [
            analyze(g, 48, 5 * g.num_directed_edges, RngStream(9002), workers=w)
            for w in (1, 4, 8)
        ]
        base = results[0]
        for other in results[1:]:
            for mine_part, other_part in ((base.node, other.node),
                                          (base.classes, other.classes)):
                assert np.array_equal(mine_part.table.values, other_part.table.values)
                assert np.array_equal(mine_part.table.flags, other_part.table.flags)
                assert np.array_equal(mine_part.mean, other_part.mean)
                assert np.array_equal(mine_part.sigma, other_part.sigma)
                assert np.array_equal(mine_part.original, other_part.original)
            assert base.node.stats == other.node.stats
