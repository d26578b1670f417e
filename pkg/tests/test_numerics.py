"""
Tests for the multiplication ledger and the metered kernels
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cvnn_cost.core import numerics as nx
from cvnn_cost.core.counter import (
    CounterSnapshot,
    MultCounter,
    MultEvent,
    MultKind,
    Phase,
    counter_diff,
    counter_reset,
    counter_snapshot,
    replay,
)
from cvnn_cost.core.errors import DimensionError, LedgerError


@pytest.fixture
def ctx():
    counter = MultCounter()
    with counter.phase(Phase.FORWARD):
        yield counter


def test_event_costs():
    """Fixed real-multiplication cost per event kind"""
    assert MultKind.COMPLEX_TIMES_COMPLEX.cost == 4
    assert MultKind.COMPLEX_TIMES_REAL.cost == 2
    assert MultKind.REAL_TIMES_REAL.cost == 1
    assert MultKind.SQUARED_MAGNITUDE.cost == 2
    assert MultKind.REAL_DIVISION.cost == 1
    assert MultEvent(Phase.FORWARD, MultKind.COMPLEX_TIMES_COMPLEX, 3).cost == 12


def test_cmul(ctx):
    """Test complex times complex costs four real multiplications"""
    assert nx.cmul(1 + 2j, 3 + 4j, ctx) == -5 + 10j
    assert ctx.grand_total == 4


def test_cmul_identity_still_counted(ctx):
    """Test multiplying by one is still metered"""
    z = 2.5 - 1j
    assert nx.cmul(z, 1 + 0j, ctx) == z
    assert ctx.grand_total == 4


def test_cscale(ctx):
    """Test complex times real costs two"""
    assert nx.cscale(3 + 4j, 0.5, ctx) == 1.5 + 2j
    assert nx.cscale(1 + 1j, 0.0, ctx) == 0
    assert ctx.grand_total == 4


def test_sqmag(ctx):
    """Test squared magnitude costs two"""
    assert nx.sqmag(3 + 4j, ctx) == 25
    assert nx.sqmag(0j, ctx) == 0
    assert ctx.grand_total == 4


def test_div_real(ctx):
    """Test real division costs one"""
    assert nx.div_real(6.0, 2.0, ctx) == 3.0
    assert ctx.grand_total == 1


def test_div_real_by_zero(ctx):
    """Test division by zero is rejected"""
    with pytest.raises(ZeroDivisionError):
        nx.div_real(1.0, 0.0, ctx)
    assert ctx.grand_total == 0


def test_normalize_costs_four(ctx):
    """Test unit-circle projection costs four"""
    y, modulus = nx.normalize(3 + 4j, ctx)
    assert abs(y - (0.6 + 0.8j)) < 1e-15
    assert modulus == pytest.approx(5.0)
    assert ctx.grand_total == 4


def test_normalize_zero_is_guarded(ctx):
    """Test normalizing zero stays finite"""
    y, modulus = nx.normalize(np.zeros(3, dtype=complex), ctx)
    assert np.all(np.isfinite(y))
    assert np.all(modulus > 0)
    assert ctx.grand_total == 12


def test_vectorised_kernels_count_by_size(ctx):
    """Test array kernels count once per element"""
    a = np.ones(5, dtype=complex)
    nx.cmul(a, a, ctx)
    assert ctx.grand_total == 20
    nx.cmul(a, 2j, ctx)
    assert ctx.grand_total == 40


def test_matrix_kernels(ctx):
    """Test matrix kernels match numpy and count per entry"""
    W = np.arange(6).reshape(2, 3) + 1j
    x = np.array([1, 1j, -1])
    assert np.allclose(nx.matvec(W, x, ctx), W @ x)
    assert ctx.grand_total == 24
    e = np.array([1 + 1j, 2])
    assert np.allclose(nx.rmatvec(W, e, ctx), W.conj().T @ e)
    assert ctx.grand_total == 48
    assert np.allclose(nx.outer_conj(e, x, ctx), np.outer(e, x.conj()))
    assert ctx.grand_total == 72
    assert np.allclose(nx.rmatvec_re(W, e, ctx), np.real(W.conj().T @ e))
    assert ctx.grand_total == 84


def test_real_kernels(ctx):
    """Test real-matrix kernels count two per entry"""
    W = np.array([[1 + 1j, 2], [0, 1j]])
    phi = np.array([0.5, 0.25])
    assert np.allclose(nx.matvec_real(W, phi, ctx), W @ phi)
    assert ctx.grand_total == 8
    assert np.allclose(nx.outer_real(np.array([1j, 1]), phi, ctx), np.outer([1j, 1], phi))
    assert ctx.grand_total == 16


def test_split_kernels(ctx):
    """Test split-complex kernels"""
    a = np.array([1 + 2j])
    b = np.array([3 + 4j])
    assert nx.hadamard(a, b, ctx)[0] == 3 + 8j
    assert nx.cinner_re(a, b, ctx)[0] == 11
    assert ctx.grand_total == 4


def test_matvec_dimension_mismatch(ctx):
    """Test shape mismatch raises DimensionError"""
    with pytest.raises(DimensionError):
        nx.matvec(np.ones((2, 3)), np.ones(2), ctx)


def test_no_active_phase():
    """Test recording outside a phase is an error"""
    counter = MultCounter()
    with pytest.raises(LedgerError):
        nx.cmul(1j, 1j, counter)


def test_phase_restored_after_block():
    """Test nested phases restore the outer phase"""
    counter = MultCounter()
    with counter.phase(Phase.FORWARD):
        with counter.phase(Phase.BACKWARD_DELTA):
            nx.cmul(1j, 1j, counter)
        assert counter.active_phase is Phase.FORWARD
        nx.sqmag(1j, counter)
    assert counter.active_phase is None
    snap = counter.snapshot()
    assert snap.phase_total(Phase.BACKWARD_DELTA) == 4
    assert snap.phase_total(Phase.FORWARD) == 2


def test_snapshot_diff_and_reset():
    """Test snapshots, diffs and reset"""
    counter = MultCounter()
    before = counter_snapshot(counter)
    with counter.phase(Phase.FORWARD):
        nx.cmul(1 + 1j, 2 - 1j, counter)
    after = counter_snapshot(counter)
    assert counter_diff(before, after).grand_total == 4

    counter_reset(counter)
    assert counter.grand_total == 0
    assert counter.snapshot().cells == {}


def test_diff_with_negative_cell():
    """Test a diff that would go negative is rejected"""
    counter = MultCounter()
    with counter.phase(Phase.FORWARD):
        nx.cmul(1j, 1j, counter)
    later = counter.snapshot()
    with pytest.raises(LedgerError):
        counter_diff(later, CounterSnapshot())


def test_overflow_is_an_error():
    """Test that overflow raises and leaves the ledger unchanged"""
    counter = MultCounter()
    with counter.phase(Phase.FORWARD):
        counter.record(MultKind.REAL_TIMES_REAL, 2 ** 64 - 2)
        with pytest.raises(LedgerError):
            counter.record(MultKind.COMPLEX_TIMES_COMPLEX, 1)
    assert counter.grand_total == 2 ** 64 - 2
    assert counter.grand_total == counter.snapshot().grand_total


def test_snapshot_to_dict():
    """Test snapshot serialization"""
    counter = MultCounter()
    with counter.phase(Phase.PARAMETER_UPDATE):
        nx.cscale(1j, 2.0, counter)
    assert counter.snapshot().to_dict() == {"parameter_update": {"complex_times_real": 1}}


KERNELS = st.sampled_from(["cmul", "cscale", "rmul", "sqmag", "div_real", "cdiv_real", "hadamard"])


@given(st.lists(st.tuples(KERNELS, st.integers(min_value=1, max_value=8),
                          st.sampled_from(list(Phase))), max_size=30))
@settings(max_examples=50, deadline=None)
def test_conservation_under_replay(ops):
    """grand_total equals the replayed cost of the recorded event log"""
    counter = MultCounter(record_events=True)
    for name, size, phase in ops:
        a = np.full(size, 1.5 - 0.5j)
        with counter.phase(phase):
            if name == "sqmag":
                nx.sqmag(a, counter)
            elif name in ("div_real", "cdiv_real"):
                getattr(nx, name)(a, np.full(size, 2.0), counter)
            else:
                getattr(nx, name)(a, a, counter)
    assert counter.grand_total == replay(counter.events)
    assert counter.grand_total == counter.snapshot().grand_total
    assert sum(counter.snapshot().by_phase().values()) == counter.grand_total


def test_zero_cost_helpers_do_not_touch_counter(ctx):
    """Test activations and updates are free"""
    z = np.array([0.3 + 0.1j, -0.2j])
    nx.ctanh(z)
    nx.split_tanh(z)
    nx.csech(z)
    nx.csinh(z)
    nx.gaussian(np.abs(z))
    nx.fused_axpy(z, 0.1, z)
    nx.complex_from_parts(z.real, z.imag)
    assert nx.mvn_rate(1.0, 3) == 0.25
    assert ctx.grand_total == 0


def test_monitors():
    """Test loss monitors need no counter"""
    assert nx.half_sq_norm(np.array([3 + 4j])) == 12.5
    assert nx.angular_loss(np.array([1j]), np.array([1j])) == 0.0
    assert nx.angular_loss(np.array([-1 + 1e-12j]), np.array([-1 - 1e-12j])) < 1e-20
