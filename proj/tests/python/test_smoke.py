import math

import pytest

import apsum


def test_builtin_smooth_value():
    f = apsum.builtin_spectrum("smooth")
    assert f(0.0) == pytest.approx(1.1, abs=1e-15)
    assert f.max_lambda == 10.0


def test_kernel_matches_direct():
    f = apsum.builtin_spectrum("smooth")
    for k in (1, 5, 19, 20, 21):
        direct = apsum.partial_sum_direct(f, 0.5 * k, 0.7)
        assert apsum.partial_sum_kernel(f, k, 0.7) == pytest.approx(direct, abs=1e-6)


def test_kernel_normalization():
    assert apsum.kernel_normalization(1.0, 7) == pytest.approx(0.5, abs=1e-6)


def test_closed_forms_for_cosine():
    cos = apsum.Function([(1.0, 1.0, 0.0)])
    assert apsum.stepanov_norm(cos, 2.0) == pytest.approx(math.sqrt(0.5), abs=1e-3)
    assert apsum.modulus_omega(cos, 1.0, math.inf) == pytest.approx(2 * math.sin(0.5), abs=1e-3)
    d = 1.0
    assert apsum.pointwise_modulus(cos, 0.0, d, 1.0) == pytest.approx(2 - 2 * math.sin(d) / d, abs=1e-6)


def test_best_approx_tail():
    f = apsum.builtin_spectrum("smooth")
    assert apsum.best_approx_tail(f, 5.0) == pytest.approx(0.1)
    assert apsum.best_approx_tail(f, 0.5) == pytest.approx(1.1)
    assert apsum.best_approx_tail(f, 10.0) == 0.0


def test_class_constants():
    row = apsum.cesaro_row(9)
    assert apsum.is_ms(row)
    assert apsum.rbvs_constant(row) == pytest.approx(1.0, abs=1e-12)
    assert not apsum.is_ms(apsum.osc_gm2_row(8))
    assert apsum.gm2_constant(apsum.osc_gm2_row(8), 2.0) < 8.0


def test_strong_mean_single_mass():
    f = apsum.builtin_spectrum("smooth")
    row = [0.0, 0.0, 1.0]
    expected = abs(apsum.partial_sum_direct(f, 1.0, 0.3) - f(0.3))
    assert apsum.strong_mean(f, 0.3, row, q=2.0) == pytest.approx(expected, rel=1e-14)


def test_validation_errors_raise_value_error():
    with pytest.raises(ValueError):
        apsum.builtin_spectrum("nope")
    with pytest.raises(ValueError):
        apsum.stepanov_norm(apsum.builtin_spectrum("smooth"), 1.0)


def test_run_config_roundtrip():
    report = apsum.run({"spectrum": "smooth", "matrix": {"type": "cesaro"}, "n_range": [1, 8],
                        "q": 2, "x": 0.0, "theorem": "thm6"})
    assert [r["n"] for r in report["records"]] == list(range(1, 9))
    assert report["summary"]["max_ratio"] > 0
    again = apsum.run(report["config"])
    assert again["records"] == report["records"]
