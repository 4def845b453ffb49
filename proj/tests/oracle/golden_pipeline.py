#!/usr/bin/env python3
"""Independent pipeline that produces the golden report files.

Re-implements scoring, the toughness table, cohort statistics, binning and
trends from the published formulas with plain Python (fractions, math.fsum,
scipy for the t-distribution). It reads the seeded fixture and writes the
expected outputs that the C++ golden test compares byte-for-byte:

    python3 tests/oracle/golden_pipeline.py tests/golden/fixture tests/golden/expected
"""

import csv
import math
import os
import sys
from collections import defaultdict
from fractions import Fraction

from scipy import stats

LEVELS = 10
BIN_STEP = 0.5
BIN_MAX_T = 20.0
BIN_EXCLUDE = [36.0, 50.0, 84.5]
TREND_COUNTRY = "CN"
METRICS = ["o_raw", "o_weighted", "t_equiv", "efficiency", "leadership"]


def read(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def g6(v):
    return "%.6g" % v


def shortest(v):
    return str(int(v)) if v == int(v) else repr(v)


def mean(values):
    return math.fsum(values) / len(values)


def sd(values):
    if len(values) < 2 or all(v == values[0] for v in values):
        return 0.0
    m = mean(values)
    return math.sqrt(math.fsum((v - m) ** 2 for v in values) / (len(values) - 1))


def welch_p(a, b):
    return float(stats.ttest_ind(a, b, equal_var=False).pvalue)


def stars(p):
    return "**" if p < 0.01 else "*" if p < 0.05 else ""


def a_index(n, pos):
    return float(sum(Fraction(1, j) for j in range(pos, n + 1)) / n)


# --- toughness table ------------------------------------------------------

def build_table(citations):
    counts = defaultdict(int)
    for row in citations:
        impact = float(row["impact_factor"])
        if impact == 0.0:
            continue
        n = round(float(row["total_citations"]) / impact)  # half-to-even
        if n:
            counts[impact] += n
    total = sum(counts.values())
    base = total // (2 ** LEVELS - 1)
    level_min = [None] * LEVELS
    pos = 0
    for impact in sorted(counts, reverse=True):
        q = pos // base
        level = min(LEVELS - 1, (q + 1).bit_length() - 1)
        level_min[level] = impact
        pos += counts[impact]
    cutoffs = []
    carry = max(counts)
    for k in range(LEVELS - 1):
        if level_min[k] is not None:
            carry = level_min[k]
        cutoffs.append(carry)
    return cutoffs, base, total


def weight_of(cutoffs, impact):
    for k, c in enumerate(cutoffs):
        if impact >= c:
            return LEVELS - k
    return 1


# --- scoring --------------------------------------------------------------

def score(papers):
    """papers: list of (impact_factor, weighted value, a). Returns the card metrics."""
    o_raw = math.fsum(p[0] for p in papers)
    o = math.fsum(p[1] for p in papers)
    t = math.fsum(p[1] / p[2] for p in papers) / o
    e = o / t
    return {"o_raw": o_raw, "o_weighted": o, "t_equiv": t, "efficiency": e, "leadership": math.sqrt(o * e)}


def main(fixture, out_dir):
    pubs = read(os.path.join(fixture, "publications.csv"))
    journals = {(r["journal"], int(r["year"])): float(r["impact_factor"])
                for r in read(os.path.join(fixture, "journals.csv"))}
    profiles = sorted(read(os.path.join(fixture, "profiles.csv")), key=lambda r: r["pi_id"])
    funding = defaultdict(list)
    for g in read(os.path.join(fixture, "grants.csv")):
        funding[g["pi_id"]].append(float(g["amount"]))
    cutoffs, base, total = build_table(read(os.path.join(fixture, "journal_citations.csv")))

    years = [int(p["year"]) for p in pubs]
    start, end = min(years), max(years)

    by_pi = defaultdict(list)
    for p in pubs:
        if p["is_corresponding"] != "true":
            continue
        impact = journals[(p["journal"], int(p["year"]))]
        value = weight_of(cutoffs, impact) * impact
        a = a_index(int(p["author_count"]), int(p["credit_position"]))
        by_pi[p["pi_id"]].append((p["paper_id"], int(p["year"]), impact, value, a))

    os.makedirs(out_dir, exist_ok=True)

    def write(name, header, rows, delim=","):
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="") as f:
            f.write(delim.join(header) + "\n")
            for r in rows:
                f.write(delim.join(r) + "\n")

    table_lines = ["# leadix-toughness-table v1,level_count=%d,divisor_mode=geometric_sum,base_count=%d,"
                   "total_papers=%d" % (LEVELS, base, total), "weight,min_if"]
    table_lines += ["%d,%s" % (LEVELS - k, shortest(c)) for k, c in enumerate(cutoffs)] + ["1,0"]
    with open(os.path.join(out_dir, "toughness_table.csv"), "w", encoding="utf-8", newline="") as f:
        f.write("\n".join(table_lines) + "\n")

    # scorecards over the whole span
    cards = {}
    rows = []
    for prof in profiles:
        pid = prof["pi_id"]
        papers = [(imp, val, a) for (_, y, imp, val, a) in by_pi[pid] if start <= y <= end]
        if not papers:
            rows.append([pid, str(start), str(end), "0", "false"] + [""] * 6 + ["no_papers"])
            continue
        m = score(papers)
        cards[pid] = m
        fund = math.fsum(funding[pid]) if funding[pid] else 0.0
        fl = g6(m["o_weighted"] / math.sqrt(fund)) if fund > 0 else ""
        rows.append([pid, str(start), str(end), str(len(papers)), "true"] + [g6(m[k]) for k in METRICS] + [fl, ""])
    write("scorecards.csv", ["pi_id", "start_year", "end_year", "paper_count", "scored"] + METRICS +
          ["funding_leadership", "unscored_reason"], rows)

    # cohort report by class, reference class 1
    groups = defaultdict(list)
    for prof in profiles:
        if prof["pi_id"] in cards:
            groups[prof["class"]].append(cards[prof["pi_id"]])
    keys = [k for k in ("1", "2", "3") if k in groups]
    ref = keys[0]
    rows = []
    for k in keys:
        for metric in METRICS:
            vals = [c[metric] for c in groups[k]]
            p, mark = "", ""
            if k != ref and len(vals) >= 2 and len(groups[ref]) >= 2:
                pv = welch_p(vals, [c[metric] for c in groups[ref]])
                p, mark = g6(pv), stars(pv)
            rows.append([k, str(len(vals)), metric, g6(mean(vals)), g6(sd(vals)), p, mark])
    write("cohort_class.csv", ["group", "n", "metric", "mean", "sd", "p_value", "mark"], rows)
    write("cohort_class_counts.csv", ["category", "count"],
          [["grouped", str(sum(len(groups[k]) for k in keys))], ["unscored", str(len(profiles) - len(cards))],
           ["unknown_group", "0"]])
    rows = []
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            rows.append([a, b, g6(welch_p([c["leadership"] for c in groups[a]],
                                          [c["leadership"] for c in groups[b]]))])
    write("pairwise_class_leadership.csv", ["group_a", "group_b", "p_value"], rows)

    # bins of mean L by equivalent time
    bins = defaultdict(list)
    excluded = []
    for pid in sorted(cards):
        t, lead = cards[pid]["t_equiv"], cards[pid]["leadership"]
        if any(abs(t - e) <= 1e-9 * max(1.0, abs(e)) for e in BIN_EXCLUDE):
            excluded.append((t, lead, "excluded_value"))
        elif t > BIN_MAX_T:
            excluded.append((t, lead, "above_max_t"))
        else:
            # nearest multiple of the step; exact midpoints go up
            k = min(range(math.floor(t / BIN_STEP) - 1, math.floor(t / BIN_STEP) + 3),
                    key=lambda j: (abs(t - j * BIN_STEP), -j))
            bins[k].append(lead)
    write("bins_leadership.tsv", ["center", "mean_leadership"],
          [[g6(k * BIN_STEP), g6(mean(v))] for k, v in sorted(bins.items())], "\t")
    write("bins_count.tsv", ["center", "count"], [[g6(k * BIN_STEP), str(len(v))] for k, v in sorted(bins.items())],
          "\t")
    write("bins_excluded.tsv", ["t", "leadership", "reason"],
          [[g6(t), g6(lead), why] for t, lead, why in sorted(excluded)], "\t")

    # yearly trend for one country
    country = {p["pi_id"]: p["country"] for p in profiles}
    series = {name: [] for name in ("leadership", "output", "efficiency", "time", "count")}
    for year in range(start, end + 1):
        per_pi = []
        for pid in sorted(by_pi):
            if country.get(pid) != TREND_COUNTRY:
                continue
            papers = [(imp, val, a) for (_, y, imp, val, a) in by_pi[pid] if y == year]
            if papers:
                per_pi.append(score(papers))
        for name, key in (("leadership", "leadership"), ("output", "o_weighted"), ("efficiency", "efficiency"),
                          ("time", "t_equiv")):
            series[name].append([str(year), g6(mean([m[key] for m in per_pi])) if per_pi else ""])
        series["count"].append([str(year), str(len(per_pi))])
    for name in ("leadership", "output", "efficiency", "time"):
        write("trend_%s.tsv" % name, ["year", name], series[name], "\t")
    write("trend_count.tsv", ["year", "scored"], series["count"], "\t")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
