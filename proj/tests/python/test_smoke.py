from fractions import Fraction

import pytest

import coopcache


def test_example_network_rates():
    assert coopcache.rate_rc(6, 6, 4, 2) == Fraction(2, 9)
    r1, r2 = coopcache.rates(6, 6, 4, 2, alpha=2, loads=(2, 1))
    assert (r1, r2) == (Fraction(2, 15), Fraction(1, 3))
    assert coopcache.allocate_loads(6, 6, 4, 2, 2) == (4, 5)


def test_report_fields():
    rep = coopcache.report(100, 10, 40, 5)
    assert rep["alpha_star"] == 2
    assert rep["R1"] == rep["R2"] == rep["R_C"]
    assert rep["R_C"] == rep["R_MN"] * rep["G_c"]
    frac = coopcache.report(20, 10, "3", 5)
    assert not frac["integral_t"]
    assert frac["envelope"] == Fraction(137, 126)


def test_cache_accepts_fractions():
    assert coopcache.lower_bound(20, 10, Fraction(4), 5) == Fraction(2, 5)
    assert coopcache.optimal_alpha(20, 10, "2", 5) == 5


def test_simulate_decodes():
    out = coopcache.simulate(6, 6, 4, 2, seed=3, alpha=2, loads=(2, 1))
    assert out["user_slots"] == 15
    assert out["server_symbols"] == 6
    assert out["subfiles_per_file"] == 45
    assert all(out["decoded"])
    assert coopcache.check_schedule(out["schedule"]) == []


def test_corrupted_schedule_names_constraint():
    text = coopcache.simulate(6, 6, 4, 2, seed=3, alpha=2, loads=(2, 1))["schedule"]
    lines = text.splitlines(keepends=True)
    idx = next(i for i, line in enumerate(lines) if line.startswith("user "))
    sender = int(lines[idx].split()[1])
    lines[idx] = lines[idx].replace(f"user {sender} ", f"user {sender % 6 + 1} ", 1)
    assert coopcache.check_schedule("".join(lines))


def test_sweep_and_gap():
    csv = coopcache.sweep_csv(20, 10, 5)
    assert len(csv.strip().splitlines()) == 12
    gap = coopcache.verify_gap()
    assert gap["violations"] == 0
    assert gap["max_ratio"] == Fraction(88, 25)


def test_errors():
    with pytest.raises(ValueError):
        coopcache.rate_rc(6, 6, 4, 4)
    with pytest.raises(coopcache.ValidationError):
        coopcache.rate_rc(20, 10, 3, 5)
    with pytest.raises(coopcache.FormatError):
        coopcache.check_schedule("not a schedule\n")
