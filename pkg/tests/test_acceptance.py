"""Acceptance suite: one test per acceptance criterion.

Run with `pytest -v tests/test_acceptance.py` for one pass/fail line per
criterion.  Criteria 2, 4 and 6 run exhaustive oracles over every tree up
to the stated sizes and take several minutes combined.
"""

import itertools
import math
import multiprocessing
import os
import random
import time
from fractions import Fraction

import pytest

import deplin
from deplin import (
    Arrangement,
    are_isomorphic,
    canonical_code,
    count_trees,
    exhaustive_arrangements,
    exhaustive_trees,
    expected_C_unconstrained,
    expected_D_unconstrained,
    free_canonical_code,
    from_head_vector,
    hubiness,
    min_D_planar,
    min_D_projective,
    min_D_unconstrained,
    num_arrangements,
    num_crossings,
    num_independent_edge_pairs,
    random_arrangement,
    random_tree,
    sum_edge_lengths,
    to_head_vector,
    tree_shape,
)
from deplin.generate import TreeKind
from deplin.linarr import flux
from deplin.treebank import process_treebank

import oracles
from conftest import FIG1_HV, FIG2_HV, TREEBANK_LINES

LF = TreeKind.parse("labeled-free")
LR = TreeKind.parse("labeled-rooted")
UF = TreeKind.parse("unlabeled-free")
UR = TreeKind.parse("unlabeled-rooted")


# -- 1 -------------------------------------------------------------------

def test_criterion_1_fixture_fidelity():
    started = time.perf_counter()
    fig1 = from_head_vector(FIG1_HV)
    a1 = Arrangement.identity(fig1.n)
    assert sum_edge_lengths(fig1, a1) == 19
    assert num_crossings(fig1, a1) == 2
    fig2 = from_head_vector(FIG2_HV)
    a2 = Arrangement.identity(fig2.n)
    assert sum_edge_lengths(fig2, a2) == 15
    assert num_crossings(fig2, a2) == 0
    assert deplin.mean_hierarchical_distance(fig2) == Fraction(21, 9)
    sizes = [from_head_vector(line).n for line in TREEBANK_LINES]
    assert sizes == [9, 11, 10]
    assert time.perf_counter() - started < 1.0


# -- 2 -------------------------------------------------------------------

def _brute_minima(n, edges):
    """One pass over all n! permutations, returning the unconstrained and
    planar minima plus, for every root, the projective minimum."""
    unc = planar = None
    proj = {r: None for r in range(1, n + 1)}
    spans_of = edges
    for perm in itertools.permutations(range(1, n + 1)):
        pos = [0] * (n + 1)
        for i, v in enumerate(perm, start=1):
            pos[v] = i
        spans = [(pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u])
                 for u, v in spans_of]
        d = sum(b - a for a, b in spans)
        if unc is None or d < unc:
            unc = d
        need_planar = planar is None or d < planar
        need_proj = any(proj[r] is None or d < proj[r] for r in proj)
        if not (need_planar or need_proj):
            continue
        crossing = any(a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1
                       for (a1, b1), (a2, b2) in itertools.combinations(spans, 2))
        if crossing:
            continue
        if need_planar:
            planar = d
        covered = [False] * (n + 2)
        for a, b in spans:
            for p in range(a + 1, b):
                covered[p] = True
        for r in proj:
            if (proj[r] is None or d < proj[r]) and not covered[pos[r]]:
                proj[r] = d
    return unc, planar, proj


def test_criterion_2_solver_oracle_equivalence():
    for n in range(1, 9):
        for t in exhaustive_trees(UF, n):
            edges = list(t.edges())
            unc, planar, proj = _brute_minima(n, edges)
            u = min_D_unconstrained(t).value
            p = min_D_planar(t).value
            assert u == unc
            assert p == planar
            assert u <= p
            for r in t.vertices():
                pr = min_D_projective(t.root_at(r)).value
                assert pr == proj[r]
                assert p <= pr


# -- 3 -------------------------------------------------------------------

def test_criterion_3_expectation_oracle_equivalence():
    for n in range(1, 8):
        for t in exhaustive_trees(UF, n):
            edges = list(t.edges())
            if n >= 2:
                ed = oracles.mean_over_permutations(
                    n, edges, lambda pos: oracles.edge_lengths_sum(edges, pos))
                ec = oracles.mean_over_permutations(
                    n, edges, lambda pos: oracles.crossings_pairs(edges, pos))
                assert expected_D_unconstrained(t) == ed == \
                    Fraction((n - 1) * (n + 1), 3)
                assert expected_C_unconstrained(t) == ec == \
                    Fraction(num_independent_edge_pairs(t), 3)


# -- 4 -------------------------------------------------------------------

def test_criterion_4_generator_counts():
    for n in range(1, 10):
        assert sum(1 for _ in exhaustive_trees(LF, n)) == \
            (1 if n <= 2 else n ** (n - 2)) == count_trees(LF, n)
        assert sum(1 for _ in exhaustive_trees(LR, n)) == \
            n ** (n - 1) == count_trees(LR, n)
        assert sum(1 for _ in exhaustive_trees(UR, n)) == count_trees(UR, n)
        assert sum(1 for _ in exhaustive_trees(UF, n)) == count_trees(UF, n)
    assert count_trees(UF, 7) == 11
    assert count_trees(UR, 8) == 115 and count_trees(UR, 9) == 286
    # arrangement counts, n <= 7
    for n in range(1, 8):
        for t in exhaustive_trees(UR, n):
            formula = math.prod(
                math.factorial(t.num_children(v) + 1) for v in t.vertices())
            assert num_arrangements(t, "projective") == formula
            assert sum(1 for _ in exhaustive_arrangements(t, "projective")) == formula
            free = t.to_free()
            planar_count = num_arrangements(free, "planar")
            assert sum(1 for _ in exhaustive_arrangements(free, "planar")) == \
                planar_count
            if n <= 6:  # brute count of crossing-free permutations
                brute = sum(
                    1 for perm in itertools.permutations(range(1, n + 1))
                    if oracles.crossings_pairs(
                        list(free.edges()),
                        {v: i + 1 for i, v in enumerate(perm)}) == 0)
                assert planar_count == brute


# -- 5 -------------------------------------------------------------------

def _chisquare_p(counts, expected):
    from scipy.stats import chisquare
    return chisquare(counts, expected).pvalue


SAMPLES = 10 ** 5


def _tree_key(kind, t):
    if kind.labeling == "labeled":
        if kind.rooting == "rooted":
            return to_head_vector(t)
        return frozenset(frozenset(e) for e in t.edges())
    if kind.rooting == "rooted":
        return canonical_code(t)
    return free_canonical_code(t)


@pytest.mark.parametrize("kind,n", [(LF, 5), (LR, 4), (UR, 6), (UF, 8)])
def test_criterion_5_tree_generator_uniformity(kind, n):
    classes = sorted({_tree_key(kind, t) for t in exhaustive_trees(kind, n)},
                     key=repr)
    index = {c: i for i, c in enumerate(classes)}
    rng = random.Random(987)
    counts = [0] * len(classes)
    for _ in range(SAMPLES):
        counts[index[_tree_key(kind, random_tree(kind, n, rng))]] += 1
    expected = [SAMPLES / len(classes)] * len(classes)
    assert _chisquare_p(counts, expected) > 0.001
    # deterministic reseeding
    rng_a, rng_b = random.Random(5), random.Random(5)
    for _ in range(100):
        assert _tree_key(kind, random_tree(kind, n, rng_a)) == \
            _tree_key(kind, random_tree(kind, n, rng_b))


@pytest.mark.parametrize("constraint", ["unconstrained", "planar", "projective"])
def test_criterion_5_arrangement_generator_uniformity(constraint):
    t = from_head_vector("0 1 1 2 2")
    classes = sorted(tuple(a.position[1:])
                     for a in exhaustive_arrangements(t, constraint))
    index = {c: i for i, c in enumerate(classes)}
    rng = random.Random(654)
    counts = [0] * len(classes)
    for _ in range(SAMPLES):
        a = random_arrangement(t, constraint, rng)
        counts[index[tuple(a.position[1:])]] += 1
    expected = [SAMPLES / len(classes)] * len(classes)
    assert _chisquare_p(counts, expected) > 0.001
    rng_a, rng_b = random.Random(7), random.Random(7)
    for _ in range(100):
        assert random_arrangement(t, constraint, rng_a) == \
            random_arrangement(t, constraint, rng_b)


# -- 6 -------------------------------------------------------------------

def _free_invariant(t):
    return tuple(sorted(t.degree(v) for v in t.vertices()))


def _rooted_invariant(t):
    return (tuple(sorted(t.num_children(v) for v in t.vertices())),
            tuple(sorted(t.depths()[1:])))


def test_criterion_6_isomorphism_oracle_equivalence():
    for n in range(1, 9):
        free = list(exhaustive_trees(UF, n))
        for a, b in itertools.combinations_with_replacement(free, 2):
            claimed = are_isomorphic(a, b, mode="free")
            if _free_invariant(a) != _free_invariant(b):
                oracle = False  # degree sequences differ: cannot be isomorphic
            else:
                oracle = oracles.isomorphic_by_permutation(
                    list(a.edges()), list(b.edges()), n)
            assert claimed == oracle == (a is b)
        rooted = list(exhaustive_trees(UR, n))
        for a, b in itertools.combinations_with_replacement(rooted, 2):
            claimed = are_isomorphic(a, b, mode="rooted")
            if _rooted_invariant(a) != _rooted_invariant(b):
                oracle = False
            else:
                pa = [0] + list(to_head_vector(a))
                pb = [0] + list(to_head_vector(b))
                oracle = oracles.rooted_isomorphic_by_permutation(pa, pb, n)
            assert claimed == oracle == (a is b)


# -- 7 -------------------------------------------------------------------

CONLLU_FIXTURE = (
    "# sent_id = 1\n"
    "1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tdog\tdog\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tbarked\tbark\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\tloudly\tloudly\tADV\t_\t_\t3\tadvmod\t_\t_\n"
    "5\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n"
    "\n"
    "1\tShe\tshe\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tleft\tleave\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
)


def test_criterion_7_pipeline_reproducibility(tmp_path):
    src = tmp_path / "fixture.conllu"
    src.write_text(CONLLU_FIXTURE, encoding="utf-8")
    opts = deplin.PreprocessOptions(remove_punct=True)
    outputs = []
    for run in range(2):
        hv = tmp_path / f"run{run}.hv"
        deplin.convert(str(src), str(hv), opts)
        for threads in (1, 2):
            csv = tmp_path / f"run{run}_t{threads}.csv"
            process_treebank(str(hv), str(csv), threads=threads)
            outputs.append(csv.read_bytes())
    assert len(set(outputs)) == 1


# -- 8 -------------------------------------------------------------------

def _synthetic_treebank(path, sentences=10_000, seed=2026):
    rng = random.Random(seed)
    with open(path, "w", encoding="utf-8") as fh:
        for _ in range(sentences):
            n = rng.randint(1, 30)
            t = random_tree(UR, n, rng)
            fh.write(" ".join(map(str, to_head_vector(t))) + "\n")


def test_criterion_8_performance_single_thread(tmp_path):
    src = tmp_path / "synthetic.hv"
    _synthetic_treebank(str(src))
    started = time.perf_counter()
    report = process_treebank(str(src), str(tmp_path / "single.csv"), threads=1)
    assert report.processed == 10_000
    assert time.perf_counter() - started <= 60.0


@pytest.mark.skipif(multiprocessing.cpu_count() < 4,
                    reason="all-cores bound needs >= 4 cores")
def test_criterion_8_performance_all_cores(tmp_path):
    src = tmp_path / "synthetic.hv"
    _synthetic_treebank(str(src))
    cores = multiprocessing.cpu_count()
    started = time.perf_counter()
    report = process_treebank(str(src), str(tmp_path / "multi.csv"),
                              threads=cores)
    assert report.processed == 10_000
    assert time.perf_counter() - started <= 10.0


# -- 9 -------------------------------------------------------------------

def test_criterion_9_property_suites():
    rng = random.Random(31337)
    for _ in range(1000):
        n = rng.randint(2, 50)
        t = random_tree(LR, n, rng)
        free = t.to_free()
        a = Arrangement.from_vertex_order(rng.sample(range(1, n + 1), n))
        # flux-sum identity
        f = flux(free, a)
        assert sum(f.sizes) == sum_edge_lengths(free, a)
        # Q closed form vs brute force
        edges = list(free.edges())
        q = sum(1 for e, g in itertools.combinations(edges, 2)
                if not set(e) & set(g))
        assert num_independent_edge_pairs(free) == q
        # hubiness in [0, 1]
        if n >= 4:
            h = hubiness(free)
            assert 0 <= h <= 1
        # tree-shape implication lattice
        s = tree_shape(free)
        if n >= 2:
            if s.linear:
                assert s.caterpillar
            if s.star:
                assert s.bistar and s.caterpillar and s.spider
            if s.quasistar:
                assert s.caterpillar
            if s.bistar:
                assert s.caterpillar
        # head-vector round trip
        hv = to_head_vector(t)
        assert to_head_vector(from_head_vector(hv)) == hv
