import os
import pathlib

import pytest

import genprio

DATA = pathlib.Path(os.environ.get("GENPRIO_TEST_DATA", pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"))
MINI = DATA / "mini5"


@pytest.fixture(scope="module")
def mini():
    base = genprio.load_case(MINI)
    return base, genprio.load_timeseries(MINI, base)


def test_counts(mini):
    base, ts = mini
    assert base.counts["buses"] == 5
    assert base.counts["conventional"] == 3
    assert ts.first_period == 1 and ts.period_count == 48


def test_periods():
    assert genprio.parse_period("01/26 TP-22") == 622
    assert genprio.format_period(622) == "01/26 TP-22"
    assert genprio.period_index(12, 31, 24) == 8784
    with pytest.raises(genprio.ConfigError):
        genprio.parse_period("someday")


def test_missing_dataset_raises():
    with pytest.raises(genprio.DataError):
        genprio.load_case(DATA / "nope")


def test_ranking_and_schedules(mini):
    base, ts = mini
    case = genprio.build_period_case(base, ts, 12)
    ranking = genprio.rank_units(case)
    assert [r["gpwd"] for r in ranking] == sorted((r["gpwd"] for r in ranking), reverse=True)
    assert all(r["gpwd"] >= 0 for r in ranking)

    uss = genprio.run_uss(case, 12)
    assert uss.method == "uss"
    assert 1 <= uss.step_reached <= 3
    mng = genprio.run_mng(case, 12, previous=uss)
    milp = genprio.run_milp_uc(case, 12)
    for s in (uss, mng, milp):
        assert s.period == 12
        assert s.elapsed > 0
        assert set(s.setpoints) <= {u for u, on in s.unit_status.items() if on}


def test_window_report(mini):
    base, ts = mini
    report = genprio.run_window(base, ts, "uss,mng", 1, 4)
    assert [r["method"] for r in report["rows"]] == ["uss", "mng"]
    assert all(r["periods"] == 4 for r in report["rows"])


def test_case_json_round_trip(mini):
    base, _ = mini
    text = base.to_json()
    assert genprio.Case.from_json(text).to_json() == text
