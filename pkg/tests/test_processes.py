import math

import numpy as np
import pytest

from deltess.errors import InvalidSpecError, RejectedSpecError, UnsupportedProcessError
from deltess.geometry import Box, PointConfiguration
from deltess.processes import (
    CampbellAverage,
    PairPotential,
    ProcessSpec,
    campbell_palm_average,
    extend_poisson,
    palm_root_slivnyak,
    sample,
    sample_gibbs_chain,
)
from deltess.rng import RngStream

# chi-square 0.999 quantiles by degrees of freedom (frozen table values)
CHI2_999 = {3: 16.266, 4: 18.467, 5: 20.515, 6: 22.458, 7: 24.322, 8: 26.124}


def test_determinism_and_stream_independence():
    spec = ProcessSpec.poisson(2.0)
    win = Box((0.0, 0.0), 3.0)
    a = sample(spec, win, RngStream(42, 7, "sample"))
    b = sample(spec, win, RngStream(42, 7, "sample"))
    c = sample(spec, win, RngStream(42, 8, "sample"))
    assert np.array_equal(a.points, b.points)
    assert a.points.shape != c.points.shape or not np.array_equal(a.points, c.points)


def test_poisson_count_law_chi_square():
    spec = ProcessSpec.poisson(1.0)
    win = Box((0.0, 0.0), 0.5)  # unit volume
    reps = 10_000
    counts = np.array(
        [len(sample(spec, win, RngStream(1, r, "count"))) for r in range(reps)]
    )
    mean = counts.mean()
    var = counts.var(ddof=1)
    assert abs(mean - 1.0) < 3.0 * math.sqrt(1.0 / reps)
    # variance of Poisson(1) sample variance ~ (mu4 - var^2)/n with mu4 = 10... keep 4 sigma
    assert abs(var - 1.0) < 4.0 * math.sqrt(10.0 / reps)
    # goodness of fit against the Poisson pmf, bins {0..4, >=5}
    pmf = [math.exp(-1.0) / math.factorial(k) for k in range(5)]
    probs = pmf + [1.0 - sum(pmf)]
    observed = [int(np.sum(counts == k)) for k in range(5)] + [int(np.sum(counts >= 5))]
    chi2 = sum(
        (o - reps * p) ** 2 / (reps * p) for o, p in zip(observed, probs)
    )
    assert chi2 < CHI2_999[5]


def test_poisson_disjoint_boxes_uncorrelated():
    spec = ProcessSpec.poisson(1.0)
    win = Box((0.0, 0.0), 2.0)
    b1 = Box((-1.0, -1.0), 0.5)
    b2 = Box((1.0, 1.0), 0.5)
    reps = 4000
    n1 = np.zeros(reps)
    n2 = np.zeros(reps)
    for r in range(reps):
        cfg = sample(spec, win, RngStream(5, r, "cov"))
        n1[r] = cfg.count_in(b1)
        n2[r] = cfg.count_in(b2)
    cov = np.mean((n1 - n1.mean()) * (n2 - n2.mean()))
    # se of the sample covariance of two independent Poisson(1) counts
    se = math.sqrt(1.0 / reps)
    assert abs(cov) < 3.0 * se


def test_matern_cluster_intensity():
    spec = ProcessSpec.matern_cluster(0.5, 4.0, 0.7)
    win = Box((0.0, 0.0), 3.0)
    reps = 600
    counts = np.array(
        [len(sample(spec, win, RngStream(11, r, "mc"))) for r in range(reps)]
    )
    expected = 0.5 * 4.0 * win.volume()
    se = counts.std(ddof=1) / math.sqrt(reps)
    assert abs(counts.mean() - expected) < 3.5 * se


def test_matern_hardcore_min_distance_and_retention():
    lam, r_hc = 2.0, 0.45
    spec = ProcessSpec.matern_hardcore(lam, r_hc)
    win = Box((0.0, 0.0), 3.0)
    reps = 300
    total = 0
    for r in range(reps):
        cfg = sample(spec, win, RngStream(13, r, "mh"))
        pts = cfg.points
        total += len(pts)
        if len(pts) > 1:
            diff = pts[:, None, :] - pts[None, :, :]
            d2 = np.sum(diff * diff, axis=2)
            np.fill_diagonal(d2, np.inf)
            assert d2.min() >= r_hc * r_hc
    # independent Monte Carlo oracle for the type-II retention probability:
    # a proposal with mark u survives iff the disk of radius r_hc holds no
    # earlier-marked proposal, an event of probability exp(-lam*pi*r^2*u)
    gen = RngStream(14, 0, "oracle").generator()
    u = gen.uniform(0.0, 1.0, 200_000)
    surv = np.exp(-lam * math.pi * r_hc * r_hc * u)
    p_hat = surv.mean()
    se_p = surv.std(ddof=1) / math.sqrt(len(u))
    rate = total / (reps * win.volume())
    se_rate = math.sqrt(rate / (reps * win.volume()))  # Poisson-scale bound
    assert abs(rate - lam * p_hat) < 3.0 * (se_rate + lam * se_p)


def test_gibbs_beta_zero_matches_poisson_moments():
    pot = PairPotential.strauss(0.5, 0.5)
    spec = ProcessSpec.gibbs(1.0, 0.0, pot, burn_in=200, thin=5)
    win = Box((0.0, 0.0), 1.0)  # volume 4
    samples = sample_gibbs_chain(spec, win, RngStream(21, 0, "gibbs0"), 3000)
    counts = np.array([len(s) for s in samples])
    vol = win.volume()
    se = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - vol) < 4.0 * se
    m2 = counts.astype(float) ** 2
    se2 = m2.std(ddof=1) / math.sqrt(len(counts))
    assert abs(m2.mean() - (vol + vol * vol)) < 4.0 * se2


def test_gibbs_hardcore_no_close_pairs():
    pot = PairPotential.hard_core(0.4)
    spec = ProcessSpec.gibbs(2.0, 1.0, pot, burn_in=300, thin=10)
    win = Box((0.0, 0.0), 1.5)
    for k, cfg in enumerate(sample_gibbs_chain(spec, win, RngStream(31, 0, "hc"), 20)):
        pts = cfg.points
        if len(pts) > 1:
            diff = pts[:, None, :] - pts[None, :, :]
            d2 = np.sum(diff * diff, axis=2)
            np.fill_diagonal(d2, np.inf)
            assert d2.min() >= 0.4 * 0.4 * (1 - 1e-12)


def test_gibbs_rejects_bad_tables():
    with pytest.raises(RejectedSpecError):
        PairPotential((0.0, 1.0), (float("-inf"), 0.0), 1.0)
    with pytest.raises(RejectedSpecError):
        PairPotential((0.0, 1.0), (float("nan"), 0.0), 1.0)
    with pytest.raises(InvalidSpecError):
        ProcessSpec.poisson(0.0)
    with pytest.raises(InvalidSpecError):
        ProcessSpec.matern_hardcore(1.0, -0.1)


def test_tiny_intensity_mostly_empty():
    spec = ProcessSpec.poisson(0.0001)
    win = Box((0.0, 0.0), 1.0)
    counts = [len(sample(spec, win, RngStream(3, r, "tiny"))) for r in range(2000)]
    # mean count = 0.0001 * 4
    assert sum(counts) < 10


def test_slivnyak_contains_origin_and_count_law():
    spec = ProcessSpec.poisson(1.0)
    win = Box((0.0, 0.0), 6.0)
    reps = 3000
    for L in (1.0, 3.0):
        box = Box((0.0, 0.0), L)
        vals = np.zeros(reps)
        for r in range(reps):
            rooted = palm_root_slivnyak(spec, win, RngStream(77, r, f"sv{L}"))
            assert np.all(rooted.root == 0.0)
            assert np.any(np.all(rooted.rooted_points() == 0.0, axis=1))
            vals[r] = rooted.count_around_root(box)
        expected = 1.0 + (2.0 * L) ** 2
        se = vals.std(ddof=1) / math.sqrt(reps)
        assert abs(vals.mean() - expected) < 3.0 * se


def test_slivnyak_rejects_non_poisson():
    spec = ProcessSpec.matern_hardcore(1.0, 0.2)
    with pytest.raises(UnsupportedProcessError):
        palm_root_slivnyak(spec, Box((0.0, 0.0), 2.0), RngStream(0))


def test_campbell_constant_functional_is_exact():
    spec = ProcessSpec.poisson(1.0)
    win = Box((0.0, 0.0), 6.0)
    core = Box((0.0, 0.0), 2.0)
    total = count = 0
    for r in range(10):
        cfg = sample(spec, win, RngStream(9, r, "cpa"))
        res = campbell_palm_average(lambda rooted: 1.0, cfg, core)
        total += res.total
        count += res.count
    assert total == count > 0


def test_campbell_count_agrees_with_slivnyak():
    spec = ProcessSpec.poisson(1.0)
    win = Box((0.0, 0.0), 5.5)
    core = Box((0.0, 0.0), 1.5)
    box = Box((0.0, 0.0), 1.0)
    reps = 250
    tot = cnt = 0.0
    per_rep = []
    for r in range(reps):
        cfg = sample(spec, win, RngStream(123, r, "cc"))
        res = campbell_palm_average(lambda ro: ro.count_around_root(box), cfg, core)
        tot += res.total
        cnt += res.count
        per_rep.append((res.total, res.count))
    est = tot / cnt
    # linearized standard error of the ratio estimator
    resid = [t - est * c for t, c in per_rep]
    se = math.sqrt(sum(x * x for x in resid)) / cnt
    assert abs(est - 5.0) < 4.0 * se


def test_extend_poisson_preserves_core_and_law():
    spec = ProcessSpec.poisson(1.5)
    win = Box((0.0, 0.0), 2.0)
    cfg = sample(spec, win, RngStream(55, 0, "base"))
    big = extend_poisson(cfg, 1.5, 4.0, RngStream(55, 0, "ext"))
    assert big.window.half_side == 4.0
    inner = big.points[win.contains_points(big.points)]
    assert np.array_equal(np.sort(inner, axis=0), np.sort(cfg.points, axis=0))
    counts = []
    for r in range(800):
        c0 = sample(spec, win, RngStream(56, r, "b"))
        c1 = extend_poisson(c0, 1.5, 3.0, RngStream(56, r, "e"))
        counts.append(len(c1))
    mean = np.mean(counts)
    expect = 1.5 * 36.0
    se = np.std(counts, ddof=1) / math.sqrt(len(counts))
    assert abs(mean - expect) < 3.5 * se
