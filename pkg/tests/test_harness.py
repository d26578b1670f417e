"""
Tests for the verification suites, use-case reproduction and configuration
"""

import json
import os
import sys

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cvnn_cost.analysis.cost_model import cost
from cvnn_cost.core.errors import InvalidSpecError, NotApplicableError, TableError
from cvnn_cost.core.specs import ArchKind, AsymptoticRegime, DeepSpec, Mode, ShallowSpec
from cvnn_cost.generators.report_generator import ReportGenerator
from cvnn_cost.harness import (
    DEFAULT_TABLE,
    SpecGenerator,
    empirical_asymptote,
    load_use_case_table,
    measure,
    regime_spec,
    reproduce_use_cases,
    summarize,
    verify_counts,
    xor_demo,
    xor_sweep,
)
from cvnn_cost.harness.xor import PATTERNS, SplitNeuron, accuracy, classify
from cvnn_cost.utils.config import (
    DEFAULTS,
    SEED_ENV,
    load_config,
    load_run_config,
    resolve_seed,
    run_config_spec,
)

T, I = Mode.TRAINING, Mode.INFERENCE


# -- count verification ----------------------------------------------------

def test_verify_counts_all_match():
    """Test every random spec matches its formula"""
    reports = verify_counts(SpecGenerator(seed=7), trials=5, deep_trials=3)
    assert reports
    assert all(r.match for r in reports), [r.describe() for r in reports if not r.match]
    totals = summarize(reports)
    # 6 x 5 shallow specs plus 4 deep-capable x 3 deep specs, two reports each
    assert totals == {"specs": 42, "matching_specs": 42, "reports": 84, "matching_reports": 84}


def test_verify_counts_full_scale():
    """Test a full-size verification run"""
    reports = verify_counts(SpecGenerator(seed=2024), trials=1000, deep_trials=300)
    totals = summarize(reports)
    assert totals["specs"] == 6 * 1000 + 4 * 300
    assert totals["matching_reports"] == totals["reports"]


def test_verify_counts_reports_corrupted_formula():
    """Test a wrong formula is reported as a mismatch"""
    def off_by_one(spec, mode):
        return cost(spec, mode) + (1 if spec.arch is ArchKind.CRBF and mode is T else 0)

    reports = verify_counts(SpecGenerator(seed=1), trials=3, formula=off_by_one)
    bad = [r for r in reports if not r.match]
    assert len(bad) == 3
    assert all(r.spec.arch is ArchKind.CRBF and r.mode is T for r in bad)
    assert "MISMATCH (diff -1)" in bad[0].describe()
    assert summarize(reports)["matching_specs"] == 15


def test_verify_counts_is_reproducible():
    """Test verification is reproducible for a seed"""
    first = verify_counts(SpecGenerator(seed=3), trials=2, archs=[ArchKind.PTRBF], deep_trials=2)
    second = verify_counts(SpecGenerator(seed=3), trials=2, archs=[ArchKind.PTRBF], deep_trials=2)
    assert [r.spec for r in first] == [r.spec for r in second]


def test_verify_counts_rejects_bad_trials():
    """Test zero trials and a one-layer generator are rejected"""
    with pytest.raises(InvalidSpecError):
        verify_counts(SpecGenerator(), trials=0)
    with pytest.raises(InvalidSpecError):
        SpecGenerator(max_layers=1)


def test_measure_phase_breakdown():
    """Test per-phase counts from measure"""
    rng = np.random.default_rng(0)
    spec = ShallowSpec(ArchKind.CVFNN, 6, 3, 97)
    inference, training = measure(spec, 0, rng.standard_normal(6) + 0j, np.zeros(3, dtype=complex))
    assert inference.metered_count == 3492
    assert training.metered_count == 8948
    assert training.per_phase["forward"] == 3492
    assert sum(training.per_phase.values()) == 8948


def test_spec_generator_respects_bounds():
    """Test random specs stay within bounds"""
    generator = SpecGenerator(seed=5, max_inputs=3, max_outputs=2, max_neurons=4, max_layers=3)
    for _ in range(50):
        spec = generator.shallow(ArchKind.FCRBF)
        assert 1 <= spec.P <= 3 and 1 <= spec.R <= 2 and 1 <= spec.N <= 4
        deep = generator.deep(ArchKind.MLMVN)
        assert 2 <= deep.L <= 3 and deep.outputs <= 2
        pt = generator.deep(ArchKind.PTRBF)
        assert 1 <= pt.L <= 3 and len(pt.bottlenecks) == pt.L


# -- use cases -------------------------------------------------------------

def test_reproduce_bundled_table():
    """Test the bundled use-case table reproduces"""
    report = reproduce_use_cases()
    assert report.matched == 46
    assert report.mismatched == []
    assert report.open_cells == 2
    assert report.ok

    cell = report.cell("ofdm", ArchKind.PTRBF, T)
    assert cell.is_open and cell.match is None
    assert report.cell("mimo", ArchKind.CVFNN, T).computed == 583968
    assert report.cell("beamforming", ArchKind.PTRBF, I).computed == 16400


def test_cheapest_architectures():
    """Test cheapest architecture per use case"""
    cheapest = reproduce_use_cases().cheapest
    for name in ("mimo", "beamforming", "ofdm"):
        assert cheapest[name] == {T: ArchKind.CRBF, I: ArchKind.CRBF}
    assert cheapest["fbmc"] == {T: ArchKind.SCFNN, I: ArchKind.CVFNN}


def _edited_table(tmp_path, edit):
    data = json.loads(DEFAULT_TABLE.read_text(encoding="utf-8"))
    edit(data)
    path = tmp_path / "table.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_edited_table_is_reported(tmp_path):
    """Test an edited cell is reported"""
    def bump(data):
        data["use_cases"][0]["entries"][0]["expected_training"] += 1

    report = reproduce_use_cases(load_use_case_table(_edited_table(tmp_path, bump)))
    assert not report.ok
    assert len(report.mismatched) == 1
    cell = report.mismatched[0]
    assert (cell.expected, cell.computed) == (583969, 583968)


def test_table_errors(tmp_path):
    """Test malformed tables are rejected"""
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(TableError):
        load_use_case_table(broken)
    with pytest.raises(FileNotFoundError):
        load_use_case_table(tmp_path / "missing.json")

    def extra_key(data):
        data["use_cases"][0]["entries"][0]["colour"] = "red"

    with pytest.raises(TableError):
        load_use_case_table(_edited_table(tmp_path, extra_key))

    def deep_rbf(data):
        data["use_cases"][0]["entries"][3]["neurons"] = [10, 32]

    with pytest.raises(TableError):
        load_use_case_table(_edited_table(tmp_path, deep_rbf))


def test_markdown_report():
    """Test the Markdown use-case report"""
    table = load_use_case_table()
    titles = {case.name: case.title for case in table.use_cases}
    text = ReportGenerator().render_markdown(reproduce_use_cases(table), titles)
    assert "46/46 derived cells reproduced exactly, 2 open." in text
    assert "583,968 ✓" in text
    assert "open" in text
    assert "| FC-RBF |" in text


# -- single-neuron XOR -----------------------------------------------------

def test_classify_guards_undefined_outputs():
    """Test outputs near the axes are left unclassified"""
    assert list(classify(np.array([0.5 + 0.5j, 0.5 - 0.5j, 1e-4 + 1j]))) == [1, -1, 0]


def test_xor_single_neuron():
    """Test a single neuron learns XOR"""
    results = xor_sweep()
    assert len(results) == 10
    assert any(r.converged for r in results)
    for r in results:
        if r.converged:
            assert r.accuracy == 1.0 and r.steps <= 10000


def test_xor_untrained_neuron_fails():
    """Test an untrained neuron does not solve XOR"""
    assert accuracy(SplitNeuron()) <= 0.75
    assert xor_demo(0, max_steps=0).steps == 0


def test_xor_patterns():
    """Test the XOR pattern set"""
    assert len(PATTERNS) == 4


# -- asymptotes ------------------------------------------------------------

POPULATED = [
    (arch, regime)
    for arch in ArchKind
    for regime in AsymptoticRegime
    if not (arch.shallow_only and regime.deep)
]


@pytest.mark.parametrize("arch,regime", POPULATED)
@pytest.mark.parametrize("mode", [T, I])
def test_empirical_slope_matches_order(arch, regime, mode):
    """Test fitted slopes match the tabulated order"""
    fit = empirical_asymptote(arch, regime, mode=mode)
    assert fit.order is fit.expected
    assert abs(fit.slope - fit.order.value) < 0.05
    assert fit.N[0] == 16


@pytest.mark.parametrize("arch", [ArchKind.CRBF, ArchKind.FCRBF])
def test_empirical_asymptote_not_applicable(arch):
    """Test slope fits for inapplicable regimes"""
    with pytest.raises(NotApplicableError):
        empirical_asymptote(arch, AsymptoticRegime.DEEP_BALANCED)


def test_regime_spec_couplings():
    """Test how each regime ties the shape to N"""
    assert regime_spec(ArchKind.CVFNN, AsymptoticRegime.SHALLOW_N_DOMINANT, 64) == \
        ShallowSpec(ArchKind.CVFNN, 4, 4, 64)
    assert regime_spec(ArchKind.CRBF, AsymptoticRegime.SHALLOW_BALANCED, 8) == ShallowSpec(ArchKind.CRBF, 8, 8, 8)
    assert regime_spec(ArchKind.MLMVN, AsymptoticRegime.DEEP_BALANCED, 5) == \
        DeepSpec(ArchKind.MLMVN, 5, (5, 5, 5, 5, 5))
    pt = regime_spec(ArchKind.PTRBF, AsymptoticRegime.DEEP_N_DOMINANT, 6)
    assert pt.neurons == (6, 6, 6, 6) and pt.bottlenecks == (6, 6, 6, 6)


# -- configuration ---------------------------------------------------------

def test_load_config_defaults(tmp_path, monkeypatch):
    """Test defaults without a config file"""
    monkeypatch.chdir(tmp_path)
    assert load_config() == DEFAULTS


def test_load_config_merges_sections(tmp_path, monkeypatch):
    """Test a config file is merged over defaults"""
    monkeypatch.chdir(tmp_path)
    (tmp_path / "config.yaml").write_text("seed: 4\nverify:\n  max_neurons: 8\n", encoding="utf-8")
    config = load_config()
    assert config["seed"] == 4
    assert config["verify"]["max_neurons"] == 8
    assert config["verify"]["max_inputs"] == 16
    assert DEFAULTS["verify"]["max_neurons"] == 64


def test_load_config_errors(tmp_path):
    """Test invalid config files"""
    bad = tmp_path / "bad.yaml"
    bad.write_text("verify:\n  max_nodes: 8\n", encoding="utf-8")
    with pytest.raises(InvalidSpecError, match="verify.max_nodes"):
        load_config(bad)
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.yaml")


def test_resolve_seed(monkeypatch):
    """Test seed precedence"""
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert resolve_seed(None, {"seed": 2}) == 2
    monkeypatch.setenv(SEED_ENV, "11")
    assert resolve_seed(None, {"seed": 2}) == 11
    assert resolve_seed(5, {"seed": 2}) == 5
    monkeypatch.setenv(SEED_ENV, "eleven")
    with pytest.raises(InvalidSpecError):
        resolve_seed(None, {"seed": 2})


def test_run_config(tmp_path):
    """Test reading a run config"""
    path = tmp_path / "run.yaml"
    path.write_text("architecture: ptrbf\ninputs: 6\noutputs: 3\nneurons: [50, 50]\n"
                    "bottlenecks: [50, 3]\nmode: training\n", encoding="utf-8")
    data = load_run_config(path)
    assert cost(run_config_spec(data), T) == 54412

    path.write_text("architecture: cvfnn\ninputs: 6\noutputs: 3\nneurons: 97\nlayers: 2\n", encoding="utf-8")
    with pytest.raises(InvalidSpecError):
        load_run_config(path)

    path.write_text("architecture: cvfnn\ninputs: 6\noutputs: 3\n", encoding="utf-8")
    with pytest.raises(InvalidSpecError):
        load_run_config(path)
