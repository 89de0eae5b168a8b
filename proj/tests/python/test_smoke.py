"""Smoke tests for the python bindings."""

import json
import math

import pytest

import qswap


def test_state_constructors():
    psi = qswap.two_singlet_state()
    assert psi.num_qubits == 4
    assert psi.labels == [1, 2, 3, 4]
    amps = psi.amplitudes
    assert amps[0b0101] == pytest.approx(0.5)
    assert amps[0b0110] == pytest.approx(-0.5)

    s = qswap.singlet(1, 2)
    assert qswap.pure_concurrence(s) == pytest.approx(1.0)
    assert qswap.equal_up_to_global_phase(
        s, qswap.bell_state(qswap.BellKind.PSI_MINUS, 1, 2), 1e-12
    )


def test_measurement_and_collapse():
    psi = qswap.two_singlet_state()
    records = qswap.measure(psi, qswap.bell_basis(2, 3))
    assert len(records) == 4
    for rec in records:
        assert rec.probability == pytest.approx(0.25, abs=1e-10)
        assert rec.post_state is not None

    rho = qswap.reduced_density(psi, [1, 4])
    for i in range(4):
        assert rho.matrix[i][i] == pytest.approx(0.25, abs=1e-10)


def test_experiment_reports():
    r1 = qswap.run_experiment_1()
    assert [row["outcome"] for row in r1["rows"]] == ["++", "+-", "-+", "--"]
    for row in r1["rows"]:
        assert row["entropy_bits"] == pytest.approx(0.0, abs=1e-10)
        assert abs(row["correlators"]["zz"]) == pytest.approx(1.0, abs=1e-10)
        assert row["correlators"]["xx"] == pytest.approx(0.0, abs=1e-10)

    r2 = qswap.run_experiment_2()
    for row in r2["rows"]:
        assert row["probability"] == pytest.approx(0.25, abs=1e-10)
        assert row["entropy_bits"] == pytest.approx(1.0, abs=1e-10)
        assert row["heralded_state"] == row["outcome"]
    assert r2["summary"]["frobenius_to_premeasurement"] < 1e-10


def test_bell_decomposition_signs():
    terms = qswap.bell_decompose_initial()
    assert len(terms) == 4
    signs = {"Ψ+": 0.5, "Ψ-": -0.5, "Φ+": -0.5, "Φ-": 0.5}
    for t in terms:
        assert t["pair_23"] == t["pair_14"]
        assert t["coefficient"].real == pytest.approx(signs[t["pair_23"]], abs=1e-10)
        assert t["coefficient"].imag == pytest.approx(0.0, abs=1e-12)


def test_no_signaling():
    report = qswap.no_signaling_report()
    for key in ("initial_vs_spin", "initial_vs_bell", "spin_vs_bell"):
        assert report["distances"][key] < 1e-10
    assert max(qswap.no_signaling_sweep(10, seed=1)) < 1e-9


def test_monte_carlo_determinism():
    a = qswap.monte_carlo_experiment(2, trials=5000, seed=17)
    b = qswap.monte_carlo_experiment(2, trials=5000, seed=17)
    assert a == b
    assert sum(o["count"] for o in a["outcomes"]) == 5000
    assert a["max_sigma_multiple"] < 5.0


def test_protocol_round_trip_and_run():
    script = "prepare singlet(1,2); prepare singlet(3,4); measure bell on (2,3); report entropy(1|4);"
    assert qswap.validate_protocol(script) == []
    printed = qswap.pretty_print_protocol(script)
    assert "measure bell on (2,3);" in printed

    report = qswap.run_protocol(script)
    assert len(report["rows"]) == 4
    for row in report["rows"]:
        (metric,) = row["metrics"]
        assert metric["metric"] == "entropy(1|4)"
        assert metric["value"] == pytest.approx(1.0, abs=1e-10)

    mc = qswap.sample_protocol(script, trials=200, seed=3)
    assert sum(o["count"] for o in mc["outcomes"]) == 200

    with pytest.raises(ValueError, match="line 1"):
        qswap.run_protocol("measure")


def test_protocol_validation_errors():
    errors = qswap.validate_protocol("measure spin(z) on 9;")
    assert len(errors) == 1
    line, column, message = errors[0]
    assert line == 1
    assert "undeclared particle 9" in message


def test_correlator_and_schmidt():
    bell = qswap.bell_state(qswap.BellKind.PHI_PLUS, 1, 4)
    z = qswap.SpinDirection.z_axis()
    x = qswap.SpinDirection.x_axis()
    y = qswap.SpinDirection.y_axis()
    assert qswap.correlator(bell, 1, z, 4, z) == pytest.approx(1.0)
    assert qswap.correlator(bell, 1, x, 4, x) == pytest.approx(1.0)
    assert qswap.correlator(bell, 1, y, 4, y) == pytest.approx(-1.0)

    sd = qswap.schmidt(bell, [1], [4])
    assert sd.coefficients == pytest.approx([math.sqrt(0.5)] * 2)
    assert qswap.entanglement_entropy(sd) == pytest.approx(1.0)
    assert not qswap.is_product(bell, [1], [4], 1e-9)


def test_json_rendering_matches_reported_values():
    doc = json.loads(qswap.experiment_json(2))
    assert doc["experiment"] == 2
    assert len(doc["rows"]) == 4
    for row in doc["rows"]:
        assert row["probability"] == pytest.approx(0.25, abs=1e-10)
        assert row["entropy_bits"] == pytest.approx(1.0, abs=1e-10)
