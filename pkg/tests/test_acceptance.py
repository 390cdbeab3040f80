"""Acceptance suite: every release criterion at its stated tolerance.

Each criterion records a PASS/FAIL line that conftest prints in the terminal
summary.  Criterion 6d is expected to fail and is marked xfail(strict): the
bump-spliced profile approaches beta = -1 only like 2/t^2, so at t = 12 the
true gap is 1.374e-2, far above the demanded 1e-3 (the bound would hold from
t ~ 45 on); see test_nocontract_beta_negative_and_limits for the true limit.
"""

import functools
import io
import json
import math
import time

import numpy as np
import pytest

from gdesitter.cli import main as cli_main
from gdesitter.curvature import (christoffel, einstein_residual, ricci,
                                 ricci_fd_crosscheck, scalar_curvature)
from gdesitter.errors import NotInPsi
from gdesitter.geometry import (ChartPoint, defining_residual, embed,
                                embed_inverse, pullback_check, warped_metric)
from gdesitter.oracles import (ClosedForm4D, christoffel_closed, ricci_closed,
                               scalar_closed)
from gdesitter.profiles import (CausalKind, Profile, beta, check_psi, classify,
                                eval_jet)

RESULTS: dict[str, str] = {}


def criterion(name, note_on_fail=""):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[name] = "FAIL" + (f" ({note_on_fail})" if note_on_fail
                                          else "")
                raise
            RESULTS[name] = "PASS"
        return run
    return wrap


def seeded_points(seed, count, t_lo=-3.0, t_hi=3.0, margin=0.2, n=3):
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        t = rng.uniform(t_lo, t_hi)
        angles = [rng.uniform(margin, math.pi - margin) for _ in range(n - 1)]
        angles.append(rng.uniform(0.0, 2.0 * math.pi))
        pts.append(ChartPoint(t, tuple(angles)))
    return pts


# ---------------------------------------------------------------------------

@criterion("01 oracle-engine equivalence")
def test_c01_oracle_engine_equivalence():
    start = time.perf_counter()
    points = seeded_points(1001, 25)
    for lam in (-0.9, -0.7, -0.3, 0.0, 0.3, 0.7, 0.9):
        for r in (1.0, 2.5):
            field = warped_metric(Profile.exponential(r, lam), 3)
            cf = ClosedForm4D(lam, r)
            for pt in points:
                pairs = (
                    (christoffel(field, pt), christoffel_closed(cf, pt)),
                    (ricci(field, pt), ricci_closed(cf, pt)),
                )
                for got, want in pairs:
                    bound = np.maximum(1e-9, 1e-9 * np.abs(want))
                    assert np.all(np.abs(got - want) <= bound)
                s, so = scalar_curvature(field, pt), scalar_closed(cf, pt.t)
                assert abs(s - so) <= max(1e-9, 1e-9 * abs(so))
    assert time.perf_counter() - start < 5.0


@criterion("02 de Sitter reduction")
def test_c02_de_sitter_reduction():
    points = seeded_points(1002, 5)
    for r in (1.0, 2.0):
        field = warped_metric(Profile.constant(r), 3)
        lam_vac = 3.0 / r ** 2
        for pt in points:
            g = field.value(pt)
            ric = ricci(field, pt)
            assert np.max(np.abs(ric - (3.0 / r ** 2) * g)) <= 1e-9
            assert abs(scalar_curvature(field, pt) * r ** 2 - 12.0) <= 1e-9
            assert einstein_residual(field, pt, lam_vac) <= 1e-9
    for n in (1, 2, 3, 4):
        for r in (1.0, 2.0):
            field = warped_metric(Profile.constant(r), n)
            angles = tuple([1.1] * (n - 1) + [2.0])
            s = scalar_curvature(field, ChartPoint(0.4, angles))
            assert abs(s - n * (n + 1) / r ** 2) <= 1e-9


@criterion("03 spot value S(lambda=0.5, t=0) = 16")
def test_c03_spot_value():
    field = warped_metric(Profile.exponential(1.0, 0.5), 3)
    pt = ChartPoint(0.0, (math.pi / 2, math.pi / 2, 1.0))
    s = scalar_curvature(field, pt)
    assert abs(s - 16.0) <= 1e-9
    data = field.evaluate(pt)
    ginv = np.diag(1.0 / np.diag(data.g))
    ric_fd = ricci_fd_crosscheck(field, pt, step=1e-3)
    s_fd = float(np.einsum("mn,mn->", ginv, ric_fd))
    assert abs(s_fd - 16.0) <= 1e-4


@criterion("04 embedding verification")
def test_c04_embedding_verification():
    start = time.perf_counter()
    profiles = [Profile.constant(1.0), Profile.exponential(1.0, 0.5),
                Profile.exponential(1.0, -0.5), Profile.cosh(1.0),
                Profile.sech(1.0)]
    rng = np.random.default_rng(1004)
    for profile in profiles:
        for pt in seeded_points(1005, 100):
            x = embed(profile, pt)
            assert abs(defining_residual(profile, x)) <= \
                1e-10 * (1.0 + float(np.dot(x, x)))
            back = embed_inverse(profile, x)
            assert abs(back.t - pt.t) <= 1e-10
            assert max(abs(b - a) for a, b in
                       zip(pt.angles, back.angles)) <= 1e-10
            u = rng.uniform(-1.0, 1.0, 4)
            v = rng.uniform(-1.0, 1.0, 4)
            g_uv, eta_uv = pullback_check(profile, pt, u, v)
            assert abs(g_uv - eta_uv) <= 1e-9 * (1.0 + abs(g_uv))
    assert time.perf_counter() - start < 2.0


@criterion("05 classification table")
def test_c05_classification_table():
    expected = [
        (Profile.constant(1.0), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, 0.3), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, -0.3), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, 0.7), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, -0.7), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, 0.9), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, -0.9), CausalKind.TIMELIKE),
        (Profile.exponential(1.0, 1.0), CausalKind.NULL),
        (Profile.exponential(1.0, -1.0), CausalKind.NULL),
        (Profile.cosh(1.0), CausalKind.TIMELIKE),
        (Profile.sech(1.0), CausalKind.TIMELIKE),
        (Profile.spacelike311(), CausalKind.SPACELIKE),
        (Profile.nocontract(2.4), CausalKind.TIMELIKE),
    ]
    for profile, kind in expected:
        character = classify(profile, -10.0, 10.0, 2001)
        assert character.kind is kind, (profile.family, character.kind)
        if kind is CausalKind.NULL:
            assert max(abs(character.beta_min), abs(character.beta_max)) <= 1e-12
        if profile.family.value == "cosh":
            assert abs(character.beta_min + 1.0) <= 1e-10
            assert abs(character.beta_max + 1.0) <= 1e-10
    for lam in (1.5, -1.5):
        profile = Profile.exponential(1.0, lam)
        report = check_psi(profile, -10.0, 10.0, 2001)
        assert not report.in_psi
        assert abs(abs(report.witness_t0) - 0.80472) <= 1e-5
        with pytest.raises(NotInPsi):
            classify(profile, -10.0, 10.0, 2001)


@criterion("06a expansion radius constant for t <= 0")
def test_c06a_radius_constant():
    profile = Profile.nocontract(2.4)
    for t in np.linspace(-10.0, 0.0, 501):
        radius = eval_jet(profile, float(t)).v * math.cosh(float(t))
        assert abs(radius - 2.4) <= 1e-12


@criterion("06b expansion radius strictly increasing for t > 0")
def test_c06b_radius_increasing():
    profile = Profile.nocontract(2.4)
    # increments are representable in double precision from t ~ 0.17 on
    # (exp(-1/t^2) cosh t < ulp(2.4) before that); sample the resolvable part
    ts = np.linspace(0.25, 10.0, 391)
    radii = [eval_jet(profile, float(t)).v * math.cosh(float(t)) for t in ts]
    assert all(b > a for a, b in zip(radii, radii[1:]))
    assert radii[-1] > 10 * 2.4


@criterion("06c no contraction anywhere, beta < 0")
def test_c06c_beta_negative():
    profile = Profile.nocontract(2.4)
    for t in np.linspace(-10.0, 10.0, 2001):
        assert beta(profile, float(t)) < 0.0


@criterion("06d beta(12) within 1e-3 of -1",
           note_on_fail="expected: true gap is 2/t^2 ~ 1.374e-2 at t=12; "
                        "the stated bound first holds near t = 45")
@pytest.mark.xfail(strict=True, reason=(
    "beta(t) + 1 = 2/t^2 + O(t^-4) for the bump-spliced profile; at t = 12 "
    "the exact gap is 1.3736e-2 > 1e-3, independent of implementation"))
def test_c06d_beta_limit_at_twelve():
    assert abs(beta(Profile.nocontract(2.4), 12.0) + 1.0) <= 1e-3


@criterion("07 scalar curvature limits")
def test_c07_scalar_limits():
    angles = (1.0, 1.0, 1.0)
    for lam, direction in ((0.5, +1.0), (-0.5, -1.0)):
        field = warped_metric(Profile.exponential(1.0, lam), 3)
        assert scalar_curvature(field, ChartPoint(15.0 * direction, angles)) <= 1e-5
        assert scalar_curvature(field, ChartPoint(-15.0 * direction, angles)) >= 1e5


@criterion("08 finite-difference cross-validation")
def test_c08_fd_cross_validation():
    rng = np.random.default_rng(1008)
    for lam in (0.0, 0.5):
        field = warped_metric(Profile.exponential(1.0, lam), 3)
        for _ in range(10):
            pt = ChartPoint(float(rng.uniform(-2.0, 2.0)),
                            (float(rng.uniform(0.45, math.pi - 0.45)),
                             float(rng.uniform(0.45, math.pi - 0.45)),
                             float(rng.uniform(0.0, 2.0 * math.pi))))
            exact = ricci(field, pt)
            approx = ricci_fd_crosscheck(field, pt, step=1e-3)
            assert np.max(np.abs(exact - approx)) <= 1e-4


@criterion("09 jet correctness against finite differences")
def test_c09_jet_correctness():
    profiles = [Profile.constant(2.0), Profile.exponential(1.0, 0.7),
                Profile.exponential(1.0, -0.4), Profile.cosh(1.0),
                Profile.sech(1.5), Profile.spacelike311(),
                Profile.nocontract(2.4)]
    rng = np.random.default_rng(1009)
    cases = 0
    for profile in profiles:
        for _ in range(80):
            t = float(rng.uniform(-10.0, 10.0))
            jet = eval_jet(profile, t)
            chan = (jet.v, jet.d1, jet.d2, jet.d3)
            scale = sum(abs(c) for c in chan)
            # d3 needs the smaller step: its truncation carries alpha^(5)
            for k, h in ((1, 1e-3), (2, 1e-3), (3, 1e-4)):
                plus = eval_jet(profile, t + h)
                minus = eval_jet(profile, t - h)
                cp = (plus.v, plus.d1, plus.d2, plus.d3)[k - 1]
                cm = (minus.v, minus.d1, minus.d2, minus.d3)[k - 1]
                fd = (cp - cm) / (2.0 * h)
                assert abs(fd - chan[k]) <= 1e-5 * (abs(chan[k]) + scale)
                cases += 1
    assert cases >= 500


@criterion("10 CLI contract")
def test_c10_cli_contract():
    def run(argv):
        out = io.StringIO()
        code = cli_main(argv, stdout=out, stderr=io.StringIO())
        return code, out.getvalue()

    code, out = run(["classify", "--profile", "exp:r=1,lambda=1"])
    assert code == 0 and json.loads(out)["character"] == "Null"

    code, out = run(["classify", "--profile", "spacelike311"])
    assert code == 0 and json.loads(out)["character"] == "Spacelike"

    code, out = run(["classify", "--profile", "exp:r=1,lambda=1.5"])
    assert code == 2
    assert abs(abs(json.loads(out)["witness_t0"]) - 0.80472) <= 1e-5

    for argv in (["classify", "--profile", "exp:r=1,lambda=1"],
                 ["embed-check", "--profile", "sech:r=1", "--count", "20",
                  "--seed", "42"]):
        assert run(argv) == run(argv)
