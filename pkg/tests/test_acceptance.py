"""Acceptance suite: every criterion as a timed test with a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines.  The slow-marked ordering count (m = 7) is opt-in via
``pytest -m slow``.
"""

import time

import numpy as np
import pytest

from ewspectra.appt import is_appt, is_asep_2n
from ewspectra.families import double_pair_23, flat_band_33
from ewspectra.feasibility import (
    PsdCertificate,
    check_pairing_certificate,
    check_psd_certificate,
    decide_conv_dbp,
)
from ewspectra.linalg import eigvals_hermitian
from ewspectra.orderings import apply_L_adjoint, enumerate_orderings, iter_orderings
from ewspectra.qubit_qudit import (
    condc_matrix_ok,
    conv_bp2n_member_c,
    conv_bp2n_member_d,
    threshold_bisect,
)
from ewspectra.rank1 import SchmidtVector, build_rank1_pt, rank1_pt_spectrum
from ewspectra.region import region_labels
from ewspectra.spectra import Spectrum, descending_values
from ewspectra.two_qubit import construct_bp22, is_bp22_spectrum
from ewspectra.witnesses import (
    battery_passed,
    necessary_battery,
    probe_block_positivity,
    sample_decomposable,
)
from util import random_admissible_22

GOLD = (1 + np.sqrt(5)) / 2
CSTAR = -(3 + np.sqrt(5)) / 6


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def report(tag: str, ok: bool, elapsed: float, limit: float | None = None):
    bound = f" < {limit:g}s" if limit else ""
    print(f"[acceptance] {tag}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s{bound})")
    assert ok, f"{tag} failed"
    if limit is not None:
        assert elapsed < limit, f"{tag} exceeded {limit}s ({elapsed:.2f}s)"


# --- independent oracles -----------------------------------------------------


def oracle_bp22(rows: np.ndarray) -> np.ndarray:
    """The three two-qubit inequalities, written independently."""
    v = np.sort(np.asarray(rows, dtype=float), axis=1)[:, ::-1]
    t = 1e-9 * np.maximum(1.0, np.abs(v).max(axis=1))
    cond_a = v[:, 2] >= -t
    cond_b = v[:, 3] + v[:, 1] >= -t
    cond_c = v[:, 3] + np.sqrt(np.clip(v[:, 0] * v[:, 2], 0, None)) >= -t
    return cond_a & cond_b & cond_c


def oracle_cond_d(rows: np.ndarray) -> np.ndarray:
    """The closed-form hull condition, written independently."""
    v = np.sort(np.asarray(rows, dtype=float), axis=1)[:, ::-1]
    scale = np.maximum(np.abs(v).max(axis=1), 1e-300)
    v = v / scale[:, None]
    s1 = v.sum(axis=1)
    s2 = s1 - v[:, 0]
    s3 = s2 - v[:, 1]
    sm = np.where(v < 0, v, 0).sum(axis=1)
    q1 = s1**2 - 4 * sm**2
    q2 = (s1 + 2 * s3) ** 2 - 8 * s3**2
    t = 1e-9
    ok = (q1 >= -t) & (q2 >= -t)
    r1, r2 = np.sqrt(np.clip(q1, 0, None)), np.sqrt(np.clip(q2, 0, None))
    ok &= r1 >= s1 - 2 * s2 - t
    ok &= r2 >= s1 - 4 * s2 + 2 * s3 - t
    ok &= 2 * r1 + r2 >= s1 - 2 * s3 - t
    return ok


# --- criteria ----------------------------------------------------------------


def test_c01_two_qubit_exactness():
    with Timer() as t:
        ok = is_bp22_spectrum(Spectrum(np.array([4.0, 2, 1, -2]), (2, 2)))
        ok &= not is_bp22_spectrum(Spectrum(np.array([4.0, 2, -0.5, -0.5]), (2, 2)))
        ok &= is_bp22_spectrum(Spectrum(np.array([1.0, 1, 1, -1]), (2, 2)))
        rng = np.random.default_rng(1)
        rows = rng.uniform(-1, 1, size=(10_000, 4))
        rows[::7] *= 100.0
        expected = oracle_bp22(rows)
        got = np.array(
            [is_bp22_spectrum(Spectrum(row, (2, 2))) for row in rows], dtype=bool
        )
        ok &= bool(np.array_equal(expected, got))
    report("1 two-qubit exactness", ok, t.elapsed, 1.0)


def test_c02_constructor_round_trip():
    rng = np.random.default_rng(2)
    with Timer() as t:
        ok = True
        for _ in range(1000):
            s = Spectrum(random_admissible_22(rng), (2, 2))
            op = construct_bp22(s)
            want = descending_values(s)
            scale = max(1.0, np.abs(want).max())
            ok &= bool(np.abs(eigvals_hermitian(op) - want).max() <= 1e-9 * scale)
            value, _ = probe_block_positivity(op, restarts=4, iters=50, seed=2)
            ok &= value >= -1e-8
            if not ok:
                break
    report("2 constructor round-trip", ok, t.elapsed, 30.0)


def test_c03a_qubit_qutrit_threshold():
    with Timer() as t:
        got = threshold_bisect(double_pair_23, -2.0, 0.0, conv_bp2n_member_d)
        ok = abs(got - CSTAR) <= 1e-9
    report("3a family threshold by bisection", ok, t.elapsed, 1.0)


def test_c03b_threshold_certificate_matrix():
    # the published certificate matrix at the threshold value
    with Timer() as t:
        x = np.array([[GOLD, CSTAR], [CSTAR, GOLD + 2 * CSTAR + 2]])
        ok = condc_matrix_ok(double_pair_23(CSTAR), x)
    report("3b published threshold certificate matrix", ok, t.elapsed, 1.0)


def test_c04_condition_c_d_equivalence():
    rng = np.random.default_rng(4)
    with Timer() as t:
        ok = True
        for i in range(10_000):
            n = 2 + i % 4
            vals = rng.uniform(-1, 1, 2 * n)
            s = Spectrum(vals, (2, n))
            d = conv_bp2n_member_d(s)
            c = conv_bp2n_member_c(s) is not None
            if c != d:
                near = conv_bp2n_member_d(s, tol=1e-7) != conv_bp2n_member_d(s, tol=-1e-7)
                if not near:
                    ok = False
                    break
    report("4 certificate/closed-form equivalence", ok, t.elapsed, 60.0)


def test_c05_ordering_counts():
    with Timer() as t:
        counts = [len(enumerate_orderings(m)) for m in range(2, 7)]
        ok = counts == [1, 2, 10, 114, 2608]
        maps3 = enumerate_orderings(3)
        ok &= maps3[0].order == ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
        ok &= maps3[1].order == ((1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3))
    report("5 ordering counts m=2..6", ok, t.elapsed, 60.0)


@pytest.mark.slow
def test_c05_slow_ordering_count_m7():
    with Timer() as t:
        count = sum(1 for _ in iter_orderings(7))
        ok = count == 107_498
    report("5+ ordering count m=7", ok, t.elapsed)


def test_c06_appt_pins():
    rng = np.random.default_rng(6)
    with Timer() as t:
        flat = Spectrum(np.array([2, 2, 2, 1, 1, 1, 1, 1, 1]) / 12, (3, 3))
        ok = is_appt(flat)
        for i in range(10_000):
            n = 2 + i % 4
            lam = rng.dirichlet(np.ones(2 * n)) if i % 3 else np.sort(
                rng.uniform(0, 1, 2 * n)
            )
            s = Spectrum(lam, (2, n))
            if is_appt(s) != is_asep_2n(s):
                ok = False
                break
        (ord2,) = enumerate_orderings(2)
        for _ in range(100):
            n = int(rng.integers(2, 7))
            lam = rng.uniform(0, 1, 2 * n)
            d = np.sort(lam)[::-1]
            corner = np.array(
                [[2 * d[-1], d[-2] - d[0]], [d[-2] - d[0], 2 * d[-3]]]
            )
            if np.abs(apply_L_adjoint(ord2, n, lam) - corner).max() > 1e-12:
                ok = False
                break
    report("6 absolute-PPT pins", ok, t.elapsed)


def test_c07_flat_band_thresholds():
    with Timer() as t:
        ok = True
        for c in (-1.0, -0.5, 0.0):
            mu = flat_band_33(c)
            v = decide_conv_dbp(mu)
            ok &= v.is_member and check_psd_certificate(mu, v.psd)
        half = np.full((3, 3), 0.5)
        ok &= check_psd_certificate(
            flat_band_33(-1.0), PsdCertificate((half, half), np.zeros(9))
        )
        for c in (-1.01, -1.5):
            mu = flat_band_33(c)
            v = decide_conv_dbp(mu)
            ok &= v.is_nonmember and check_pairing_certificate(mu, v.pairing)
            ok &= abs(v.pairing.pairing_value - (c + 1) / 6) <= 1e-9
    report("7 flat-band membership threshold", ok, t.elapsed, 60.0)


def test_c08_decomposable_necessity_sweep():
    with Timer() as t:
        ok = True
        rank_plans = [
            lambda d: (d, d),
            lambda d: (1, d),
            lambda d: (d, 0),
            lambda d: (1, 0),
        ]
        for dims in [(2, 2), (2, 3), (3, 3)]:
            d = dims[0] * dims[1]
            for pi, plan in enumerate(rank_plans):
                ops = sample_decomposable(dims, plan(d), seed=80 + pi, count=250)
                for op in ops:
                    s = Spectrum(eigvals_hermitian(op), dims)
                    if not battery_passed(necessary_battery(s, decomposable=True)):
                        ok = False
                        break
                    if dims == (2, 2):
                        accepted = is_bp22_spectrum(s)
                    elif dims == (2, 3):
                        accepted = conv_bp2n_member_d(s)
                    else:
                        accepted = decide_conv_dbp(s).is_member
                    if not accepted:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
    report("8 sampled witness necessity sweep", ok, t.elapsed, 300.0)


def test_c09_rank1_formula_agreement():
    rng = np.random.default_rng(9)
    with Timer() as t:
        ok = True
        dims_cycle = [(2, 2), (2, 4), (3, 3), (3, 5)]
        for i in range(1000):
            m, n = dims_cycle[i % 4]
            coeffs = np.sort(rng.uniform(0, 2, m))[::-1]
            if i % 10 == 0:
                coeffs[-1] = 0.0
            vec = SchmidtVector(coeffs, (m, n))
            formula = descending_values(rank1_pt_spectrum(vec))
            solved = eigvals_hermitian(build_rank1_pt(vec))
            if np.abs(formula - solved).max() > 1e-10:
                ok = False
                break
    report("9 rank-1 partial-transpose spectrum agreement", ok, t.elapsed)


def test_c10_region_export():
    with Timer() as t:
        coords, labels = region_labels(0.02, which="convexhull")
        labels = np.asarray(labels)
        mu4 = 1.0 - coords.sum(axis=1)
        spectra = np.column_stack([coords, mu4])
        exact = oracle_bp22(spectra)
        hull = oracle_cond_d(spectra)
        green = labels == "green"
        orange = labels == "orange"
        ok = bool(np.all(exact[green]))
        ok &= bool(np.all(hull[orange] & ~exact[orange]))
        ok &= bool(orange.any())
        # the scaled known witness spectrum appears as a green cell
        target = np.array([0.8, 0.4, 0.2])
        near = np.abs(coords - target).max(axis=1) < 0.011
        ok &= bool(green[near].any())
    report("10 region export labels", ok, t.elapsed, 120.0)
