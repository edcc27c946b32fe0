"""Smoke test for the threegap_py extension.

Build first:  pip install --no-build-isolation -e crates/py
Then run:     python python/smoke_test.py
"""

from fractions import Fraction

import threegap_py as tg


def main():
    golden = tg.golden()
    assert str(golden) == "[0;period(1)]", str(golden)
    assert tg.two_gap_set(golden, 1000) == [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987]
    assert tg.two_gap_set("sqrt2-1", 30) == [2, 3, 5, 7, 12, 17, 29]

    cf = tg.CfExpansion("[0;3,period(1,2)]")
    assert cf.head == [3] and cf.period == [1, 2]
    assert tg.CfExpansion.from_digits([3], [1, 2]) == cf
    assert tg.expand_surd(*tg.surd_of(cf)) == cf
    assert tg.q_closed_form(cf, 10) == cf.convergents(9)[-1][2]

    rational = tg.CfExpansion.from_rational(7, 24)
    assert rational.head == [3, 2, 3] and rational.value() == Fraction(7, 24)

    report = tg.gap_report("7/24", 3)
    assert report.exact and report.distinct_count == 2
    assert report.gaps == [(Fraction(7, 24), 2), (Fraction(5, 12), 1)]
    assert sum(g * m for g, m in report.gaps) == 1

    assert tg.gap_report(golden, 5).permutation == [0, 2, 4, 1, 3]

    p = tg.predict("sqrt2-1", 4)
    assert (p.scenario, p.index, p.sub_index, p.u2, p.u_last, p.is_two_gap) == (
        "semiconvergent_interval", 2, 2, 3, 2, False,
    )

    rows = tg.frequency_trace(golden, [100, 10000])
    assert rows[0] == (100, 9, Fraction(9, 100), Fraction(1, 10))
    assert rows[1][:3] == (10000, 18, Fraction(18, 10000))

    try:
        tg.gap_report("1/2", 5)
    except tg.ThreegapError as e:
        assert "gap_oracle" in str(e)
    else:
        raise AssertionError("degenerate rational accepted")

    samples = tg.sample_alpha(42, 500)
    assert len(samples) == 500
    levy = tg.levy_report(samples, 25)
    assert levy["within_tolerance"], levy["mean"]
    assert tg.digit_sum_report(samples, 20)["mean"] < tg.digit_sum_report(samples, 10)["mean"]
    assert abs(tg.LEVY_CONSTANT - 1.1865691104156255) < 1e-15

    print("smoke test passed: mean ln(q_25)/25 = %.5f" % levy["mean"])


if __name__ == "__main__":
    main()
