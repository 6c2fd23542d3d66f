#!/usr/bin/env python3
"""Writes the committed test datasets in the RTS-GMLC file layout.

    data/synthetic_rts   three-area, 73-bus system on the RTS-96 topology,
                         timeseries for Jan 26 - Feb 8 2020
    tests/data/mini5     5-bus, 2-area case, timeseries for Jan 1 - Jan 2 2020

Everything is a closed-form function of the period index; there is no RNG,
so rerunning the script reproduces the files byte for byte.
"""

import argparse
import csv
import datetime as dt
import math
from pathlib import Path

BUS_COLS = ["Bus ID", "Bus Name", "BaseKV", "Bus Type", "MW Load", "MVAR Load", "V Mag",
            "V Angle", "MW Shunt G", "MVAR Shunt B", "Area", "Sub Area", "Zone"]
BRANCH_COLS = ["UID", "From Bus", "To Bus", "R", "X", "B", "Cont Rating", "LTE Rating",
               "STE Rating", "Tr Ratio", "Length"]
GEN_COLS = ["GEN UID", "Bus ID", "Gen ID", "Unit Group", "Unit Type", "Category", "Fuel",
            "MW Inj", "MVAR Inj", "V Setpoint p.u.", "PMax MW", "PMin MW", "QMax MVAR",
            "QMin MVAR", "Ramp Rate MW/Min", "Start Heat Cold MBTU", "Non Fuel Start Cost $",
            "Fuel Price $/MMBTU", "Output_pct_0", "Output_pct_1", "Output_pct_2", "Output_pct_3",
            "HR_avg_0", "HR_incr_1", "HR_incr_2", "HR_incr_3", "VOM"]

# Per-bus load of one RTS-24 area (MW, MVar), keyed by the last two digits.
AREA_LOADS = {1: (108, 22), 2: (97, 20), 3: (180, 37), 4: (74, 15), 5: (71, 14), 6: (136, 28),
              7: (125, 25), 8: (171, 35), 9: (175, 36), 10: (195, 40), 13: (265, 54),
              14: (194, 39), 15: (317, 64), 16: (100, 20), 18: (333, 68), 19: (181, 37),
              20: (128, 26)}

# RTS-24 branches: from, to, r, x, b, rating.
AREA_BRANCHES = [
    (1, 2, 0.003, 0.014, 0.461, 175), (1, 3, 0.055, 0.211, 0.057, 175),
    (1, 5, 0.022, 0.085, 0.023, 175), (2, 4, 0.033, 0.127, 0.034, 175),
    (2, 6, 0.050, 0.192, 0.052, 175), (3, 9, 0.031, 0.119, 0.032, 175),
    (3, 24, 0.002, 0.084, 0.0, 400), (4, 9, 0.027, 0.104, 0.028, 175),
    (5, 10, 0.023, 0.088, 0.024, 175), (6, 10, 0.014, 0.061, 2.459, 175),
    (7, 8, 0.016, 0.061, 0.017, 175), (8, 9, 0.043, 0.165, 0.045, 175),
    (8, 10, 0.043, 0.165, 0.045, 175), (9, 11, 0.002, 0.084, 0.0, 400),
    (9, 12, 0.002, 0.084, 0.0, 400), (10, 11, 0.002, 0.084, 0.0, 400),
    (10, 12, 0.002, 0.084, 0.0, 400), (11, 13, 0.006, 0.048, 0.100, 500),
    (11, 14, 0.005, 0.042, 0.088, 500), (12, 13, 0.006, 0.048, 0.100, 500),
    (12, 23, 0.012, 0.097, 0.203, 500), (13, 23, 0.011, 0.087, 0.182, 500),
    (14, 16, 0.005, 0.059, 0.082, 500), (15, 16, 0.002, 0.017, 0.036, 500),
    (15, 21, 0.006, 0.049, 0.103, 500), (15, 21, 0.006, 0.049, 0.103, 500),
    (15, 24, 0.007, 0.052, 0.109, 500), (16, 17, 0.003, 0.026, 0.055, 500),
    (16, 19, 0.003, 0.023, 0.049, 500), (17, 18, 0.002, 0.014, 0.030, 500),
    (17, 22, 0.014, 0.105, 0.221, 500), (18, 21, 0.003, 0.026, 0.055, 500),
    (18, 21, 0.003, 0.026, 0.055, 500), (19, 20, 0.005, 0.040, 0.083, 500),
    (19, 20, 0.005, 0.040, 0.083, 500), (20, 23, 0.003, 0.022, 0.046, 500),
    (20, 23, 0.003, 0.022, 0.046, 500), (21, 22, 0.009, 0.068, 0.142, 500),
]

TIES = [("AB1", 107, 203, 0.042, 0.161, 0.044, 175), ("AB2", 113, 215, 0.010, 0.075, 0.158, 500),
        ("AB3", 123, 217, 0.010, 0.074, 0.155, 500), ("CA-1", 325, 121, 0.012, 0.097, 0.203, 500),
        ("CB-1", 318, 223, 0.013, 0.104, 0.218, 500), ("C35", 325, 323, 0.000, 0.009, 0.000, 722)]

V_SET = {1: 1.01, 2: 1.01, 7: 1.01, 13: 1.005, 14: 0.99, 15: 1.005, 16: 1.005, 18: 1.01,
         21: 1.01, 22: 1.01, 23: 1.01}

# Conventional unit classes: unit type, fuel, pmax, pmin, qmax, qmin, ramp MW/min,
# cold start heat MBTU, non-fuel start $, fuel $/MMBTU, HR_avg_0, HR increments, VOM.
CLASSES = {
    "U20": ("CT", "Oil", 20, 8, 10, 0, 3, 50, 60, 12.0, 15000, (13200, 13600, 14000), 0.0),
    "U55": ("CT", "NG", 55, 22, 19, -15, 3.7, 100, 40, 4.5, 12300, (10000, 10300, 10700), 1.0),
    "U76": ("STEAM", "Coal", 76, 30, 30, -25, 2, 1500, 80, 2.1, 14000, (10100, 10500, 11000), 0.9),
    "U12": ("STEAM", "Oil", 12, 5, 6, 0, 1, 80, 20, 10.5, 14500, (11500, 11800, 12100), 0.0),
    "U155": ("STEAM", "Coal", 155, 62, 80, -50, 3, 3000, 120, 2.0, 12300, (9300, 9600, 10100), 0.9),
    "U350": ("STEAM", "Coal", 350, 140, 150, -25, 4, 7000, 200, 2.0, 11500, (9100, 9300, 9700), 0.9),
    "U355": ("CC", "NG", 355, 170, 150, -25, 4.5, 1600, 100, 4.1, 8800, (6400, 6600, 6900), 2.0),
    "U400": ("NUCLEAR", "Nuclear", 400, 396, 200, -50, 20, 40000, 0, 0.8, 10500, (10500, 10500, 10500), 0.0),
}

CONVENTIONAL = [  # (bus, unit suffix, class)
    (1, "CT_1", "U20"), (1, "CT_2", "U20"), (1, "STEAM_3", "U76"), (1, "STEAM_4", "U76"),
    (2, "CT_1", "U20"), (2, "CT_2", "U20"), (2, "STEAM_3", "U76"), (2, "STEAM_4", "U76"),
    (7, "CC_1", "U355"),
    (13, "CT_1", "U55"), (13, "CT_2", "U55"), (13, "CT_3", "U55"), (13, "CT_4", "U55"),
    (15, "STEAM_1", "U12"), (15, "STEAM_2", "U12"), (15, "STEAM_3", "U155"),
    (15, "CT_4", "U55"), (15, "CT_5", "U55"),
    (16, "STEAM_1", "U155"),
    (18, "CC_1", "U355"),
    (23, "STEAM_2", "U155"), (23, "STEAM_3", "U350"), (23, "CT_1", "U55"), (23, "CT_4", "U55"),
    (23, "CT_5", "U55"),
]

# Renewable units: (uid, bus, unit type, fuel, pmax, qmax, qmin, profile).
RENEWABLES = [
    ("101_PV_1", 101, "PV", "Solar", 25.6), ("101_PV_2", 101, "PV", "Solar", 25.9),
    ("102_PV_1", 102, "PV", "Solar", 25.3), ("103_PV_1", 103, "PV", "Solar", 61.5),
    ("104_PV_1", 104, "PV", "Solar", 27.0), ("119_PV_1", 119, "PV", "Solar", 66.5),
    ("118_RTPV_1", 118, "RTPV", "Solar", 10.3), ("118_RTPV_2", 118, "RTPV", "Solar", 9.8),
    ("120_RTPV_1", 120, "RTPV", "Solar", 9.2),
    ("122_WIND_1", 122, "WIND", "Wind", 713.5),
    ("215_PV_1", 215, "PV", "Solar", 50.0), ("213_RTPV_1", 213, "RTPV", "Solar", 13.2),
    ("212_CSP_1", 212, "CSP", "Solar", 200.0),
    ("303_WIND_1", 303, "WIND", "Wind", 847.0), ("309_WIND_1", 309, "WIND", "Wind", 148.3),
    ("317_WIND_1", 317, "WIND", "Wind", 799.1),
    ("313_PV_1", 313, "PV", "Solar", 93.6), ("314_PV_1", 314, "PV", "Solar", 51.6),
    ("320_PV_1", 320, "PV", "Solar", 51.6), ("324_PV_1", 324, "PV", "Solar", 49.7),
    ("308_RTPV_1", 308, "RTPV", "Solar", 100.9), ("313_RTPV_1", 313, "RTPV", "Solar", 12.6),
]
for area in (1, 2, 3):
    for k in range(1, 7):
        RENEWABLES.append((f"{area}22_HYDRO_{k}", area * 100 + 22, "HYDRO", "Hydro", 50.0))
for k in range(1, 4):
    RENEWABLES.append((f"215_HYDRO_{k}", 215, "HYDRO", "Hydro", 50.0))


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def fmt(x):
    return f"{x:.4f}".rstrip("0").rstrip(".") if isinstance(x, float) else x


def conventional_row(uid, bus, cls, vset):
    ut, fuel, pmax, pmin, qmax, qmin, ramp, heat, start, price, hr0, incr, vom = CLASSES[cls]
    return [uid, bus, uid.rsplit("_", 1)[1], cls, ut, f"{fuel} {ut}", fuel, fmt(float(pmin)), 0,
            vset, pmax, pmin, qmax, qmin, ramp, heat, start, price,
            *[fmt(pmin / pmax + (1 - pmin / pmax) * k / 3) for k in range(4)],
            hr0, incr[0], incr[1], incr[2], vom]


def renewable_row(uid, bus, ut, fuel, pmax, vset):
    qmax, qmin = (0.0, 0.0) if ut != "HYDRO" else (16.0, 0.0)
    return [uid, bus, uid.rsplit("_", 1)[1], ut, ut, fuel, fuel, 0, 0, vset, pmax, 0, qmax, qmin,
            0, 0, 0, 0, "", "", "", "", "", "", "", "", 0]


def sync_cond_row(uid, bus, vset):
    return [uid, bus, "1", "SYNC_COND", "SYNC_COND", "Sync_Cond", "Sync_Cond", 0, 0, vset, 0, 0,
            200, -50, 0, 0, 0, 0, "", "", "", "", "", "", "", "", 0]


def storage_row(uid, bus, vset):
    return [uid, bus, "1", "STORAGE", "STORAGE", "Storage", "Storage", 0, 0, vset, 50, 0, 0, 0,
            0, 0, 0, 0, "", "", "", "", "", "", "", "", 0]


# ---------------------------------------------------------------- timeseries

def hour_rows(start, hours):
    rows = []
    for k in range(hours):
        t = start + dt.timedelta(hours=k)
        rows.append((t.year, t.month, t.day, t.hour + 1))
    return rows


def day_of_series(k):
    return k // 24


def load_shape(hour, day_index, weekday, phase):
    # Winter double peak: morning ramp near 8, evening peak near 18-19.
    h = hour
    shape = (0.70 + 0.13 * math.exp(-((h - 8.5) / 2.2) ** 2)
             + 0.22 * math.exp(-((h - 18.5) / 2.8) ** 2)
             - 0.06 * math.exp(-((h - 3.5) / 2.0) ** 2))
    weekly = 0.92 if weekday >= 5 else 1.0
    drift = 1.0 + 0.035 * math.sin(2 * math.pi * day_index / 6.3 + phase)
    return shape * weekly * drift


def solar_shape(hour, day_index, phase):
    if hour < 8 or hour > 17:
        return 0.0
    bell = math.sin(math.pi * (hour - 7.5) / 10.5)
    clear = 0.55 + 0.3 * math.sin(2 * math.pi * day_index / 4.7 + phase)
    return max(0.0, bell * clear)


def wind_shape(k, phase):
    v = (0.42 + 0.22 * math.sin(2 * math.pi * k / 61.0 + phase)
         + 0.10 * math.sin(2 * math.pi * k / 13.0 + 2 * phase)
         + 0.05 * math.sin(2 * math.pi * k / 5.0 + 3 * phase))
    return min(0.95, max(0.05, v))


def hydro_shape(k, phase):
    return 0.62 + 0.06 * math.sin(2 * math.pi * (k % 24) / 24.0 + phase) \
        + 0.04 * math.sin(2 * math.pi * k / 150.0 + phase)


def write_timeseries(root, start, hours, area_peaks, renewables):
    ts = root / "timeseries_data_files"
    stamps = hour_rows(start, hours)
    head = ["Year", "Month", "Day", "Period"]

    load_rows = []
    for k, (y, m, d, p) in enumerate(stamps):
        weekday = dt.date(y, m, d).weekday()
        vals = [round(peak * load_shape(p, day_of_series(k), weekday, 0.7 * i), 2)
                for i, peak in enumerate(area_peaks)]
        load_rows.append([y, m, d, p] + vals)
    write_csv(ts / "Load" / "DAY_AHEAD_regional_Load.csv",
              head + [str(i + 1) for i in range(len(area_peaks))], load_rows)

    groups = {"PV": ("PV", "DAY_AHEAD_pv.csv"), "RTPV": ("RTPV", "DAY_AHEAD_rtpv.csv"),
              "WIND": ("WIND", "DAY_AHEAD_wind.csv"), "HYDRO": ("Hydro", "DAY_AHEAD_hydro.csv")}
    for ut, (folder, name) in groups.items():
        units = [r for r in renewables if r[2] == ut]
        if not units:
            continue
        rows = []
        for k, (y, m, d, p) in enumerate(stamps):
            vals = []
            for j, (uid, bus, _, _, pmax) in enumerate(units):
                phase = 0.37 * j + 0.011 * bus
                if ut in ("PV", "RTPV"):
                    f = solar_shape(p, day_of_series(k), phase)
                elif ut == "WIND":
                    f = wind_shape(k, phase)
                else:
                    f = hydro_shape(k, phase)
                vals.append(round(pmax * f, 2))
            rows.append([y, m, d, p] + vals)
        write_csv(ts / folder / name, head + [u[0] for u in units], rows)


# ---------------------------------------------------------------- cases

def synthetic_rts(root):
    src = root / "SourceData"
    buses, branches, gens = [], [], []
    gen_buses = {b for b, _, _ in CONVENTIONAL} | {14}
    for area in (1, 2, 3):
        for n in range(1, 25):
            bid = area * 100 + n
            kv = 138 if n <= 10 else 230
            pd, qd = AREA_LOADS.get(n, (0, 0))
            kind = "Ref" if bid == 113 else ("PV" if n in gen_buses or n == 22 else "PQ")
            bs = -100 if n == 6 else 0
            buses.append([bid, f"Bus{bid}", kv, kind, pd, qd, V_SET.get(n, 1.0), 0, 0, bs, area,
                          area * 10 + (1 if n <= 10 else 2), area * 10 + (1 if n <= 10 else 2)])
        if area == 3:
            buses.append([325, "Bus325", 230, "PQ", 0, 0, 1.0, 0, 0, 0, 3, 32, 32])
    buses.sort(key=lambda r: r[0])

    for area in (1, 2, 3):
        letter = "ABC"[area - 1]
        for k, (f, t, r, x, b, rate) in enumerate(AREA_BRANCHES, start=1):
            branches.append([f"{letter}{k}", area * 100 + f, area * 100 + t, r, x, b, rate,
                             round(rate * 1.15), round(rate * 1.2), 1.0 if x == 0.084 else 0, 0])
    for uid, f, t, r, x, b, rate in TIES:
        branches.append([uid, f, t, r, x, b, rate, round(rate * 1.15), round(rate * 1.2), 0, 0])

    for area in (1, 2, 3):
        for n, suffix, cls in CONVENTIONAL:
            gens.append(conventional_row(f"{area}{n:02d}_{suffix}", area * 100 + n, cls,
                                         V_SET.get(n, 1.0)))
        if area == 1:
            gens.append(conventional_row("121_NUCLEAR_1", 121, "U400", V_SET[21]))
        else:
            gens.append(conventional_row(f"{area}21_CC_1", area * 100 + 21, "U355", V_SET[21]))
        gens.append(sync_cond_row(f"{area}14_SYNC_COND_1", area * 100 + 14, V_SET[14]))
    for uid, bus, ut, fuel, pmax in RENEWABLES:
        gens.append(renewable_row(uid, bus, ut, fuel, pmax, V_SET.get(bus % 100, 1.0)))
    gens.append(storage_row("313_STORAGE_1", 313, 1.0))

    write_csv(src / "bus.csv", BUS_COLS, buses)
    write_csv(src / "branch.csv", BRANCH_COLS, branches)
    write_csv(src / "gen.csv", GEN_COLS, gens)
    write_timeseries(root, dt.datetime(2020, 1, 26), 14 * 24, [2480.0, 2560.0, 2520.0], RENEWABLES)
    return len(buses), len(branches), len(gens)


def mini5(root):
    src = root / "SourceData"
    buses = [
        [1, "One", 138, "Ref", 0, 0, 1.03, 0, 0, 0, 1, 11, 11],
        [2, "Two", 138, "PQ", 80, 20, 1.0, 0, 0, 0, 1, 11, 11],
        [3, "Three", 230, "PV", 0, 0, 1.02, 0, 0, 0, 2, 21, 21],
        [4, "Four", 230, "PV", 120, 30, 1.02, 0, 0, 0, 2, 21, 21],
        [5, "Five", 230, "PQ", 60, 15, 1.0, 0, 0, 0, 2, 21, 21],
    ]
    branches = [
        ["L12", 1, 2, 0.01, 0.06, 0.03, 175, 200, 210, 0, 0],
        ["T13", 1, 3, 0.002, 0.084, 0.0, 400, 450, 480, 1.0, 0],
        ["L24", 2, 4, 0.02, 0.10, 0.02, 175, 200, 210, 0, 0],
        ["L34", 3, 4, 0.006, 0.048, 0.10, 500, 575, 600, 0, 0],
        ["L45", 4, 5, 0.008, 0.06, 0.08, 500, 575, 600, 0, 0],
    ]
    gens = [
        conventional_row("1_CT_1", 1, "U55", 1.03),
        conventional_row("3_STEAM_1", 3, "U155", 1.02),
        conventional_row("4_CC_1", 4, "U355", 1.02),
        renewable_row("2_PV_1", 2, "PV", "Solar", 30.0, 1.0),
        renewable_row("5_WIND_1", 5, "WIND", "Wind", 80.0, 1.0),
        renewable_row("3_HYDRO_1", 3, "HYDRO", "Hydro", 40.0, 1.02),
    ]
    write_csv(src / "bus.csv", BUS_COLS, buses)
    write_csv(src / "branch.csv", BRANCH_COLS, branches)
    write_csv(src / "gen.csv", GEN_COLS, gens)
    units = [("2_PV_1", 2, "PV", "Solar", 30.0), ("5_WIND_1", 5, "WIND", "Wind", 80.0),
             ("3_HYDRO_1", 3, "HYDRO", "Hydro", 40.0)]
    write_timeseries(root, dt.datetime(2020, 1, 1), 48, [90.0, 200.0], units)
    return len(buses), len(branches), len(gens)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--root", type=Path, default=Path(__file__).resolve().parent.parent)
    args = ap.parse_args()
    print("synthetic_rts: %d buses, %d branches, %d generators" % synthetic_rts(args.root / "data" / "synthetic_rts"))
    print("mini5: %d buses, %d branches, %d generators" % mini5(args.root / "tests" / "data" / "mini5"))


if __name__ == "__main__":
    main()
