"""Acceptance gates: one test per criterion, at the stated tolerances.

Every test here pins a deliverable behaviour of the package as a whole;
run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail line
per criterion.  Formula-level reference numbers are frozen to their
published two- or three-figure precision; randomized checks state their
trial counts and use 3-sigma bands.
"""

from __future__ import annotations

import itertools
import math
import time

import numpy as np
import pytest

from ramsey_toolkit import (CliqueConstraint, ConstraintRestricted,
                            DiagnosticsConfig, MissProbabilityModel,
                            block_encode_rank1, brute_force_ramsey,
                            build_accumulator, chernoff_miss, control_record,
                            deflation_mc, deflation_probability, edge_var,
                            encode_operator, exists_good_coloring,
                            exp_witness, graded_ramsey, hutchinson_trace,
                            lcu_block_encode, load_control_coloring, mat_exp,
                            mean_field_trace, miss_probability,
                            phase_estimate_dilation, phase_resolution,
                            qubit_cost, run_diagnostics, sample_directions,
                            stream_cnf)
from ramsey_toolkit.cli import dispatch


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False


def test_01_miss_bound_formulas():
    miss_probability(MissProbabilityModel(k=100, r=1, d=24))
    with Stopwatch() as clock:
        low = miss_probability(MissProbabilityModel(k=100, r=1, d=24))
        high = miss_probability(MissProbabilityModel(k=400, r=1, d=24))
    assert abs(low / 1.55e-2 - 1.0) <= 0.01
    assert abs(high / 5.7e-8 - 1.0) <= 0.02
    assert clock.elapsed < 1e-3


def test_02_chernoff_table_rows():
    printed = {1: "1.2e-01", 2: "4.0e-02", 4: "3.7e-03", 6: "3.4e-04",
               8: "3.0e-05", 10: "2.7e-06", 12: "2.5e-07"}
    chernoff_miss(MissProbabilityModel(k=100, r=1, d=24))
    with Stopwatch() as clock:
        observed = {r: chernoff_miss(MissProbabilityModel(k=100, r=r, d=24))
                    for r in printed}
    for r, reference in printed.items():
        assert f"{observed[r]:.1e}" == reference, (r, observed[r])
    assert clock.elapsed < 1e-3


def test_03_mean_field_traces():
    with Stopwatch() as clock:
        first = 10.0 ** mean_field_trace(32, 180, 40.0)
        second = 10.0 ** mean_field_trace(32, 220, 40.0)
        deep = mean_field_trace(24, 400, 40.0)
    assert abs(first / 6.15e-97 - 1.0) <= 5e-3
    assert abs(second / 1.19e-118 - 1.0) <= 5e-3
    assert abs(deep - math.log10(2.4e-289)) <= 1.0
    assert clock.elapsed < 1e-3


def test_04_deflation_law_monte_carlo():
    cases = {(24, 100): 1.42e-2, (32, 180): 3.30e-3, (32, 220): 9.26e-4}
    with Stopwatch() as clock:
        for (d, k), printed in cases.items():
            expected = deflation_probability(d, k)
            assert abs(expected / printed - 1.0) <= 5e-3
            estimate, std_error = deflation_mc(d, k, trials=20_000, seed=d + k)
            assert abs(estimate - expected) <= 3.0 * std_error, (d, k)
    assert clock.elapsed < 10.0


def test_05_accumulator_concentration():
    d, k = 24, 400
    lower = (k / d) * (1.0 - math.sqrt(d / k)) ** 2
    upper = (k / d) * (1.0 + math.sqrt(d / k)) ** 2
    inside = total = 0
    with Stopwatch() as clock:
        for seed in (11, 23, 42, 73, 101, 137, 211, 307, 401, 509):
            accumulator = build_accumulator(sample_directions(d, k, seed))
            eigenvalues = np.linalg.eigvalsh(accumulator)
            assert eigenvalues.mean() == pytest.approx(k / d, rel=1e-10)
            inside += int(((eigenvalues >= lower)
                           & (eigenvalues <= upper)).sum())
            total += d
    assert inside >= 0.95 * total
    assert clock.elapsed < 5.0


def test_06_exact_small_ramsey():
    with Stopwatch() as clock:
        assert brute_force_ramsey(CliqueConstraint(3, 3), 10) == 6
    assert clock.elapsed < 1.0
    with Stopwatch() as clock:
        assert exists_good_coloring(8, CliqueConstraint(3, 4),
                                    mode="enumerate")
        assert brute_force_ramsey(CliqueConstraint(3, 4), 10,
                                  mode="glue") == 9
    assert clock.elapsed < 600.0


def test_07_graded_recursion_dominates_classical():
    graded_ramsey(10, 10)
    with Stopwatch() as clock:
        for m in range(1, 11):
            for n in range(1, 11):
                assert graded_ramsey(m, n) == math.comb(m + n - 2, m - 1)
        assert graded_ramsey(1, 7) == graded_ramsey(7, 1) == 1
        classical = {(3, 3): 6, (3, 4): 9, (3, 5): 14, (3, 6): 18,
                     (3, 7): 23, (3, 8): 28, (3, 9): 36, (4, 4): 18,
                     (4, 5): 25}
        assert len(classical) == 9
        for (m, n), known in classical.items():
            assert known <= graded_ramsey(m, n)
    assert clock.elapsed < 1e-3


def test_08_prime_sequence_fixtures():
    from ramsey_toolkit import PSQuery, enumerate_ps, is_prime_sequence, \
        persistence_scan
    is_prime_sequence(45, PSQuery(k=5))
    with Stopwatch() as clock:
        assert is_prime_sequence(45, PSQuery(k=5))
        assert not is_prime_sequence(46, PSQuery(k=8))
        assert is_prime_sequence(46, PSQuery(k=9))
        assert all(not is_prime_sequence(112, PSQuery(k=k))
                   for k in range(1, 20))
        # Admissible integers in (43, 46] as the basis grows.
        for k in (3, 4):
            assert enumerate_ps(43, 46, PSQuery(k=k)) == (45,)
        for k in (5, 6, 7, 8):
            assert enumerate_ps(43, 46, PSQuery(k=k)) == (44, 45)
        assert enumerate_ps(43, 46, PSQuery(k=9)) == (44, 45, 46)
        assert persistence_scan(6, 102, 160).value == 115
        assert persistence_scan(7, 205, 492).value == 209
    assert clock.elapsed < 0.1


def test_09_cnf_semantics():
    import io

    with Stopwatch() as clock:
        for N in range(2, 8):
            for m, n in ((3, 3), (3, 4)):
                sink = io.StringIO()
                instance = stream_cnf(N, m, n, sink)
                lines = sink.getvalue().strip().split("\n")
                header = lines[0].split()
                assert int(header[3]) == len(lines) - 1 == \
                    instance.clause_count
                neg_masks, pos_masks = [], []
                for line in lines[1:]:
                    literals = [int(tok) for tok in line.split()[:-1]]
                    mask = np.uint64(0)
                    for lit in literals:
                        mask |= np.uint64(1) << np.uint64(abs(lit) - 1)
                    (neg_masks if literals[0] < 0 else pos_masks).append(mask)
                # Independent clique masks straight from vertex subsets.
                red_masks = [
                    sum(1 << (edge_var(a, b, N) - 1)
                        for a, b in itertools.combinations(subset, 2))
                    for subset in itertools.combinations(range(1, N + 1), m)]
                blue_masks = [
                    sum(1 << (edge_var(a, b, N) - 1)
                        for a, b in itertools.combinations(subset, 2))
                    for subset in itertools.combinations(range(1, N + 1), n)]
                assert sorted(map(int, neg_masks)) == sorted(red_masks)
                assert sorted(map(int, pos_masks)) == sorted(blue_masks)
                assignments = np.arange(1 << instance.var_count,
                                        dtype=np.uint64)
                satisfied = np.ones(assignments.shape, dtype=bool)
                for mask in neg_masks:
                    satisfied &= (assignments & mask) != mask
                for mask in pos_masks:
                    satisfied &= (assignments & mask) != np.uint64(0)
                good = np.ones(assignments.shape, dtype=bool)
                for mask in red_masks:
                    sm = np.uint64(mask)
                    good &= (assignments & sm) != sm
                for mask in blue_masks:
                    good &= (assignments & np.uint64(mask)) != np.uint64(0)
                assert np.array_equal(satisfied, good), (N, m, n)
        main_instance = stream_cnf(12, 5, 5, io.StringIO())
        assert main_instance.var_count == 66
        assert main_instance.clause_count == 1584
    assert clock.elapsed < 120.0


def test_10_qubit_cost_table():
    qubit_cost(2)
    with Stopwatch() as clock:
        assert qubit_cost(44) == (946, 962)
        assert qubit_cost(45) == (990, 1006)
        assert qubit_cost(46) == (1035, 1051)
    assert clock.elapsed < 1e-3


def test_11_quantum_classical_bridge():
    rng = np.random.default_rng(2024)
    with Stopwatch() as clock:
        batch = sample_directions(8, 20, 77)
        accumulator = build_accumulator(batch)
        operand = mat_exp(-0.5 * accumulator)
        encoding = encode_operator(operand, alpha0=1.0)
        estimate = hutchinson_trace(encoding, probes=10_000, seed=909)
        exact = 10.0 ** exp_witness(accumulator, 0.5)
        assert abs(estimate.value - exact) <= 3.0 * estimate.std_error

        def unit(dim):
            raw = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            return raw / np.linalg.norm(raw)

        u, v = unit(8), unit(8)
        single = block_encode_rank1(u, v)
        assert np.abs(2.0 * single.block - np.outer(u, v.conj())).max() <= 1e-7
        terms = [(float(rng.normal()), unit(8), unit(8)) for _ in range(3)]
        combined = lcu_block_encode(terms)
        target = sum(w * np.outer(uu, vv.conj()) for w, uu, vv in terms)
        assert np.abs(combined.alpha0 * combined.block[:8, :8]
                      - target).max() <= 1e-7

        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            left, sigma, right_h = np.linalg.svd(a)
            t = math.pi / (2.0 * np.linalg.norm(a, "fro"))
            aligned = np.concatenate(
                [left[:, 0], right_h[0].conj()]) / math.sqrt(2.0)
            read = phase_estimate_dilation(a, m_bits=7, t=t, state=aligned)
            assert abs(read - sigma[0]) <= phase_resolution(7, t)
    assert clock.elapsed < 60.0


def test_12_decision_rule_soundness(am46_dir):
    planted = ConstraintRestricted({5: 3, 6: 2, 7: 0, 8: 1})
    control = load_control_coloring(am46_dir)
    with Stopwatch() as clock:
        for seed in (11, 23, 42, 73, 101, 137, 211, 307, 401, 509):
            config = DiagnosticsConfig(d=24, k=400, seeds=(seed,))
            records = run_diagnostics(config, (5, 6, 7, 8),
                                      embedding=planted)
            fired = [record.n for record in records
                     if record.critical is True]
            assert fired == [7], (seed, fired)
            assert control_record(control, config).critical is not True
    assert clock.elapsed < 30.0


def test_13_determinism(tmp_path, am46_dir, capsys):
    def pipeline(out_dir):
        out_dir.mkdir()
        assert dispatch(["diag", "--d", "24", "--k", "400",
                         "--alpha", "0.5", "--seed", "12345",
                         "--out_dir", str(out_dir),
                         "--am46_dir", str(am46_dir)]) == 0
        assert dispatch(["cnf", "-N", "12", "-m", "5", "-n", "5",
                         "-o", str(out_dir / "r55_N12.cnf"), "--map"]) == 0
        assert dispatch(["glue", "-m", "3", "-n", "4", "--vmax", "9",
                         "--out_dir", str(out_dir)]) == 0
        assert dispatch(["prime", "--out_dir", str(out_dir)]) == 0
        assert dispatch(["qsim", "--out_dir", str(out_dir)]) == 0
        assert dispatch(["estimate", "--out_dir", str(out_dir)]) == 0

    pipeline(tmp_path / "first")
    pipeline(tmp_path / "second")
    capsys.readouterr()
    names = sorted(p.name for p in (tmp_path / "first").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "second").iterdir())
    assert "results_table_I.csv" in names and "r55_N12.cnf" in names
    for name in names:
        first = (tmp_path / "first" / name).read_bytes()
        second = (tmp_path / "second" / name).read_bytes()
        assert first == second, name
