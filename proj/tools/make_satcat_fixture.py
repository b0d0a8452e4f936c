#!/usr/bin/env python3
"""Regenerates data/satcat_fixture.txt, the synthetic fixed-width catalog
snapshot used by the tests and examples.

The snapshot is synthetic. It follows the column layout in
data/satcat_columns.json and is shaped to resemble a late-2018 catalog:
about 42.7% of objects still in orbit, about 51.6% reentered, early end-year
counts of 1, 6, 10, 20 and 58 for 1957-1961, and mean lifespans that grow
roughly exponentially with the end year. Output is deterministic.
"""
import math
import random
import sys

SEED = 20181219
TOTAL = 6000
IN_ORBIT_FRAC = 0.4268
REENTERED_FRAC = 0.5157
NO_DATE_ENDED = 18          # ended-class objects with a blank status date
EARLY = {1957: 1, 1958: 6, 1959: 10, 1960: 20, 1961: 58}
LAST_YEAR = 2018
MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
OWNERS = ["US", "SU", "CIS", "PRC", "J", "F", "UK", "IND", "ESA", "I"]

rng = random.Random(SEED)


def day_of(month):
    return rng.randint(1, 28 if month == 2 else 30)


def fmt_date(y, m, d):
    return f"{y:4d} {MONTHS[m - 1]} {d:2d}"


def line(cat, name, launch, status, sdate, owner):
    return (f"{cat:<8} {name:<24} {launch:<17} {status:<4} {sdate:<17} {owner:<8}").rstrip()


def main(out):
    n_in_orbit = round(TOTAL * IN_ORBIT_FRAC)
    n_reentered = round(TOTAL * REENTERED_FRAC)
    n_ended = TOTAL - n_in_orbit
    n_dated = n_ended - NO_DATE_ENDED

    # End-year counts: fixed early years, then a rise to a bumpy plateau.
    later = list(range(1962, LAST_YEAR + 1))
    weights = [(1 - math.exp(-(y - 1961) / 6.0)) * (1 + 0.25 * math.sin((y - 1962) / 3.0)) + 0.4 for y in later]
    remaining = n_dated - sum(EARLY.values())
    raw = [w / sum(weights) * remaining for w in weights]
    counts = [int(r) for r in raw]
    for i in sorted(range(len(raw)), key=lambda i: raw[i] - counts[i], reverse=True)[: remaining - sum(counts)]:
        counts[i] += 1
    per_year = dict(EARLY)
    per_year.update(zip(later, counts))

    objects = []
    for y, c in sorted(per_year.items()):
        mean = 0.549 * 2 ** ((y - 1957) / 12.17)
        for _ in range(c):
            life = min(int(mean * rng.expovariate(1.0) + 0.5), y - 1957)
            ly = y - life
            lm = rng.randint(10 if ly == 1957 else 1, 12)
            ld = day_of(lm)
            sm = rng.randint(lm if life == 0 else 1, 12)
            sd = day_of(sm)
            if life == 0 and sm == lm:
                sd = max(sd, ld)
            objects.append([ly, lm, ld, None, fmt_date(y, sm, sd)])

    # Status classes for the dated ended objects.
    dated = list(range(len(objects)))
    rng.shuffle(dated)
    n_reentered_dated = n_reentered
    for k, i in enumerate(dated):
        if k < n_reentered_dated:
            objects[i][3] = "R" if rng.random() < 0.93 else "D"
        else:
            objects[i][3] = rng.choice(["L", "E", "AR", "AL"])

    for _ in range(NO_DATE_ENDED):
        ly = rng.randint(1960, LAST_YEAR)
        lm = rng.randint(1, 12)
        objects.append([ly, lm, day_of(lm), rng.choice(["L", "E"]), ""])

    for _ in range(n_in_orbit):
        ly = min(LAST_YEAR, 1958 + int(60 * rng.random() ** 0.7))
        lm = rng.randint(1, 12)
        sdate = ""
        if rng.random() < 0.03:
            sm = rng.randint(1, 12)
            sdate = fmt_date(rng.randint(ly, LAST_YEAR), sm, day_of(sm)) if ly < LAST_YEAR else ""
        objects.append([ly, lm, day_of(lm), "O", sdate])

    objects.sort(key=lambda o: (o[0], o[1], o[2]))
    out.write("# Synthetic SATCAT-style snapshot (fixed width). Not real catalog data.\n")
    out.write("# Columns: see data/satcat_columns.json. Generated by tools/make_satcat_fixture.py.\n")
    for k, (ly, lm, ld, status, sdate) in enumerate(objects, start=1):
        cat = f"S{k:05d}"
        out.write(line(cat, f"SYNTH-{k:05d}", fmt_date(ly, lm, ld), status, sdate, rng.choice(OWNERS)) + "\n")
        if k in (1500, 4200):
            # Deliberately malformed lines to exercise the rejects report.
            out.write(line(f"X{k:05d}", "MALFORMED", "19?? Foo  1", "R", "", "US") + "\n")


if __name__ == "__main__":
    path = sys.argv[1] if len(sys.argv) > 1 else "data/satcat_fixture.txt"
    with open(path, "w", newline="\n") as f:
        main(f)
