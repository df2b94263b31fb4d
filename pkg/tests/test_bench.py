import random

import pytest

from csplin.bench import BenchResult, BenchRow, fit_slope, run_bench
from csplin.generators import bench_family, literal_count, random_horn


def test_fit_slope_recovers_power_law():
    sizes = [100, 200, 400, 800]
    assert fit_slope(sizes, [1e-6 * n**3 for n in sizes]) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        fit_slope([1], [1.0])


def test_status_bands():
    def result(slope):
        r = BenchResult("chain", 0)
        for n in (100, 1000):
            r.rows.append(BenchRow(n, n**slope * 1e-12, True, 1, 1, 1))
        return r

    assert result(4.0).status() == "pass"
    assert result(4.8).status() == "warn"
    assert result(5.5).status() == "fail"


@pytest.mark.parametrize("family", ["chain", "dense"])
@pytest.mark.parametrize("n", [7, 100, 333, 1000])
def test_family_exact_size_and_horn(family, n):
    f = bench_family(n, seed=1, family=family)
    assert literal_count(f) == n and f.is_horn()
    assert bench_family(n, seed=1, family=family) == f


def test_unknown_family():
    with pytest.raises(ValueError):
        bench_family(10, family="nope")


def test_run_bench_deterministic_verdicts():
    a = run_bench((100, 200), repeats=1)
    b = run_bench((100, 200), repeats=1)
    assert [(r.sat, r.iterations, r.rank) for r in a.rows] == [(r.sat, r.iterations, r.rank) for r in b.rows]
    assert "slope:" in a.table()


def test_random_horn_is_horn():
    rng = random.Random(0)
    for _ in range(200):
        assert random_horn(rng).is_horn()
