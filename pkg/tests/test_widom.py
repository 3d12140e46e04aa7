import math

import numpy as np
import pytest

from widomlab import sets, widom
from widomlab.errors import DomainError


def test_lgamma_backend_accuracy():
    # factorials up to 20! exactly representable checks
    for k in range(1, 21):
        assert math.exp(math.lgamma(k + 1)) == pytest.approx(
            math.factorial(k), rel=1e-13)
    # Legendre duplication: lgamma(2x) = lgamma(x)+lgamma(x+1/2)
    #                                    +(2x-1)log2 - log(sqrt(pi))/...
    for x in (1.3, 7.0, 123.456, 1e5, 1e7):
        lhs = math.lgamma(2 * x)
        rhs = (math.lgamma(x) + math.lgamma(x + 0.5)
               + (2 * x - 1) * math.log(2) - 0.5 * math.log(math.pi))
        assert lhs == pytest.approx(rhs, rel=1e-13)


def test_gamma_ratio_collapses():
    for n in (1, 2, 10, 1000):
        assert widom.gamma_ratio(n, 0.0) == 2.0
        assert widom.gamma_ratio(n, 1.0) == 2.0


def test_gamma_ratio_known_values():
    # gamma_1(1/2) = 8/(2.5 * Gamma(2.5)^2), with Gamma(2.5) = 0.75 sqrt(pi)
    expected = 8.0 / (2.5 * (0.75 * math.sqrt(math.pi)) ** 2)
    assert widom.gamma_ratio(1, 0.5) == pytest.approx(expected, rel=1e-12)
    assert widom.gamma_ratio(1, 1.5) == pytest.approx(
        2 * math.gamma(3) * math.gamma(5) / (3.5 * math.gamma(3.5) ** 2),
        rel=1e-12)


def test_gamma_step_identity_and_sign():
    assert widom.gamma_step(5, 1.0) == 1.0
    assert widom.gamma_step(1, 0.5) == pytest.approx(
        widom.gamma_ratio(2, 0.5) / widom.gamma_ratio(1, 0.5), rel=1e-12)
    for n in (1, 10, 100):
        assert widom.gamma_step(n, 0.3) > 1
        assert widom.gamma_step(n, 1.7) < 1


def test_ortho_norm_matches_gamma():
    for m in (2, 3):
        for degree in range(2 * m, 12 * m):
            n, l = degree // (2 * m), degree % (2 * m)
            if n < 1:
                continue
            direct = widom.ortho_norm_direct(m, degree)
            closed = widom.gamma_ratio(n, l / m)
            assert direct == pytest.approx(closed, rel=1e-10)


def test_ortho_norm_degree_below_period():
    # n = 0: the total mass of the weight; equals 2^{2l/m} scaled value
    v = widom.ortho_norm_direct(2, 0)
    assert v == pytest.approx(1.0, rel=1e-12)  # mass of arcsine on [0,4]


def test_widom_inf_interval():
    spec = sets.SetSpec(kind="interval", a=-2.0, b=2.0)
    for r in widom.widom_inf_series(spec, [1, 4, 9]):
        assert r.factor == pytest.approx(2.0, rel=1e-14)
        assert r.route == "exact"
    # shorter interval: norm shrinks but factor stays 2
    spec = sets.SetSpec(kind="interval", a=0.0, b=1.0)
    r = widom.widom_inf_series(spec, [3])[0]
    assert r.norm == pytest.approx(2 * 0.25 ** 3, rel=1e-14)
    assert r.factor == pytest.approx(2.0, rel=1e-12)


def test_widom_inf_star_routes_and_values():
    spec = sets.SetSpec(kind="star_even", m=2)
    recs = widom.widom_inf_series(spec, range(1, 9))
    by_deg = {r.degree: r for r in recs}
    for d in (2, 4, 6, 8):
        assert by_deg[d].factor == 2.0
        assert by_deg[d].route == "exact"
    assert by_deg[5].route == "remez"
    assert by_deg[5].factor == pytest.approx(1.8466618, rel=1e-6)


def test_widom_inf_star_odd():
    spec = sets.SetSpec(kind="star_odd", m=3)
    recs = widom.widom_inf_series(spec, [1, 2, 3, 6])
    by_deg = {r.degree: r for r in recs}
    assert by_deg[3].factor == 2.0
    assert by_deg[6].factor == 2.0
    assert by_deg[1].factor == pytest.approx(2 ** (2 / 3), rel=1e-12)
    assert by_deg[2].factor == pytest.approx(2 ** (4 / 3), rel=1e-12)


def test_widom_inf_error_markers():
    # an unreachable tolerance on a discrete route must not abort the sweep
    spec = sets.SetSpec(kind="arc", alpha=1.0)
    recs = widom.widom_inf_series(spec, [2, 3], tol=1e-10)
    assert len(recs) == 2
    assert all(r.route == "error" and math.isnan(r.factor) for r in recs) \
        or all(r.route == "discrete" for r in recs)


def test_widom_limits():
    assert widom.widom_limit(
        sets.SetSpec(kind="star_even", m=7)) == widom.WidomLimit(2.0, 2.0)
    lim = widom.widom_limit(sets.SetSpec(kind="quadratic", a=0.0, b=-1.5))
    assert lim.even == 2.0 and lim.odd == 2.0
    lim = widom.widom_limit(sets.SetSpec(kind="quadratic", a=0.0, b=3.0))
    assert lim.odd == pytest.approx(1 + math.sqrt(5), rel=1e-12)
    lim = widom.widom_limit(sets.SetSpec(kind="arc", alpha=math.pi / 2))
    assert lim.even == pytest.approx((2 + math.sqrt(2)) / 2, rel=1e-12)
    lim = widom.widom_limit(sets.shabat_spec())
    assert lim.conjecture and lim.even == 2.0
    with pytest.raises(DomainError):
        widom.widom_limit(sets.SetSpec(kind="spiked_circle", n=1, l=1))


def test_l2_series():
    recs = widom.widom_l2_series(2, [4, 5, 8])
    assert [r.flavor for r in recs] == ["L2squared"] * 3
    assert recs[0].factor == 2.0
    assert 0 < recs[1].factor < 4
    assert recs[1].factor == pytest.approx(widom.gamma_ratio(1, 0.5))


def test_sup_factor_lower_bounds():
    # capacity-normalized monic norms are >= 1; real sets >= 2
    specs = [sets.SetSpec(kind="star_even", m=2),
             sets.SetSpec(kind="quadratic", a=0.0, b=0.5)]
    for spec in specs:
        for r in widom.widom_inf_series(spec, [1, 2, 3, 4, 5]):
            assert r.factor >= 1.0 - 1e-9
    for r in widom.widom_inf_series(
            sets.SetSpec(kind="interval", a=-1.0, b=3.0), [1, 2, 3]):
        assert r.factor >= 2.0 - 1e-9
