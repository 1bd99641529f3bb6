"""Exit criteria.  Every check is exact; time limits are wall-clock."""

import io
import random
import time
from itertools import combinations

from lamancount.canon import canonical_key
from lamancount.cli import main
from lamancount.engine import LamanEngine, laman_number, laman_number_graph
from lamancount.oracle import oracle_laman_number
from lamancount.rigidity import generate_laman, henneberg_one, is_laman, is_laman_bruteforce

from helpers import DATA, PRISM, random_simple_graph


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    start = time.perf_counter()
    code = main(list(map(str, argv)), out, err)
    return code, out.getvalue(), time.perf_counter() - start


def first_line(out):
    return out.splitlines()[0]


def test_k4_minus_edge():
    """K4 minus an edge: count == 4 in < 1 s"""
    code, out, elapsed = run("count", DATA / "k4_minus_edge.txt")
    print(f"count={first_line(out)} elapsed={elapsed:.3f}s")
    assert code == 0 and first_line(out) == "4"
    assert elapsed < 1.0


def test_triangle_count_and_oracle():
    """Triangle: count == oracle == 2, each in < 1 s"""
    code_c, out_c, t_c = run("count", DATA / "triangle.txt")
    code_o, out_o, t_o = run("oracle", DATA / "triangle.txt")
    print(f"count={first_line(out_c)} ({t_c:.3f}s) oracle={first_line(out_o)} ({t_o:.3f}s)")
    assert code_c == code_o == 0
    assert first_line(out_c) == first_line(out_o) == "2"
    assert t_c < 1.0 and t_o < 1.0


def test_oracle_equivalence_up_to_six_vertices():
    """Oracle equivalence: recursion == Groebner count on all Laman graphs with <= 6 vertices, < 15 min"""
    start = time.perf_counter()
    engine = LamanEngine()
    checked = 0
    for n in range(3, 7):
        for g in generate_laman(n):
            assert laman_number_graph(g, engine) == oracle_laman_number(g, seed=n)
            checked += 1
    elapsed = time.perf_counter() - start
    print(f"{checked} graphs in {elapsed:.1f}s")
    assert checked == 18
    assert elapsed < 15 * 60


def test_prism():
    """3-prism: count == 24 == oracle"""
    code, out, _ = run("count", DATA / "prism.txt")
    assert code == 0 and first_line(out) == "24"
    assert oracle_laman_number(PRISM) == 24


def test_pivot_independence(tmp_path):
    """Pivot independence: --pivot-strategy all agrees on 20 random Laman graphs with <= 8 vertices"""
    rng = random.Random(2024)
    pool = [g for n in range(3, 9) for g in generate_laman(n)]
    chosen = rng.sample(pool, 20)
    sizes = []
    for g in chosen:
        path = tmp_path / "graph.txt"
        path.write_text("\n".join(f"{u} {v}" for u, v in g.sorted_edges()) + "\n")
        code, out, _ = run("count", path, "--pivot-strategy", "all")
        assert code == 0
        assert out.splitlines()[1] == f"pivots: {len(g.edges)} checked, all agree"
        assert int(first_line(out)) == laman_number_graph(g)
        sizes.append(len(g.vertices))
    print(f"vertex counts sampled: {sorted(sizes)}")


def test_henneberg_one_doubling():
    """Henneberg-I doubling: count(g') == 2 count(g) for every Laman g with <= 7 vertices and every type-I move"""
    engine = LamanEngine()
    pairs = 0
    for n in range(3, 8):
        for g in generate_laman(n):
            base = laman_number_graph(g, engine)
            for u, v in combinations(sorted(g.vertices), 2):
                assert laman_number_graph(henneberg_one(g, u, v), engine) == 2 * base
                pairs += 1
    print(f"{pairs} extensions checked")


def test_swap_symmetry():
    """Swap symmetry: Lam((G,H)) == Lam((H,G)) on 50 pseudo-Laman bigraphs from recursion traces"""
    trace = []
    tracer = LamanEngine(trace=trace)
    for g in generate_laman(7)[::7] + generate_laman(8)[::60]:
        laman_number_graph(g, tracer)
    distinct = {}
    for b in trace:
        distinct.setdefault(canonical_key(b), b)
    rng = random.Random(50)
    sample = rng.sample([distinct[k] for k in sorted(distinct)], 50)
    asymmetric = 0
    for b in sample:
        assert laman_number(b) == laman_number(b.swap())
        asymmetric += canonical_key(b) != canonical_key(b.swap())
    print(f"{len(distinct)} traced bigraphs, 50 sampled, {asymmetric} not self-swapped")
    assert asymmetric > 0


def test_scale_bench_eight():
    """Scale: bench --max-vertices 8 in < 10 min"""
    code, out, elapsed = run("bench", "--max-vertices", 8, "--format", "csv")
    rows = out.splitlines()[1:]
    print(f"{len(rows)} graphs in {elapsed:.1f}s")
    assert code == 0 and len(rows) == 1 + 1 + 3 + 13 + 70 + 608
    assert elapsed < 10 * 60


def test_scale_ten_vertices():
    """Scale: count on the fixed 10-vertex Laman graph in < 60 s"""
    code, out, elapsed = run("count", DATA / "laman10.txt")
    print(f"laman number {first_line(out)} in {elapsed:.1f}s")
    assert code == 0
    assert elapsed < 60


def test_scale_twelve_vertices():
    """Scale: count on the fixed 12-vertex Laman graph in < 30 min"""
    code, out, elapsed = run("count", DATA / "laman12.txt")
    print(f"laman number {first_line(out)} in {elapsed:.1f}s")
    assert code == 0
    assert elapsed < 30 * 60


def test_laman_checker_cross_validation():
    """Laman checker: pebble game == brute force on 1000 random simple graphs with <= 10 vertices"""
    rng = random.Random(1000)
    positives = 0
    for _ in range(1000):
        g = random_simple_graph(rng, 10)
        verdict = is_laman(g)
        assert verdict == is_laman_bruteforce(g)
        positives += verdict
    print(f"{positives} Laman, {1000 - positives} not")
    assert 0 < positives < 1000
