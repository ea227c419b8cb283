#!/usr/bin/env python3
"""Writes the synthetic sample corpora under data/samples.

The corpora are invented: template messages over the bundled lexicons, drawn
with a fixed seed so reruns produce identical files.

  e11_*       Bitcoin Gold, January 2020; busiest day 27 Jan 2020
  e4_*, e9_*  two more events for the heat-map manifest
  watch_*     baseline corpus and a stream with one attack day
"""

import datetime as dt
import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "samples"

ATTACK_NEG = [
    "{t} suffered a 51% attack and exchanges are scared",
    "another attack on the {t} chain, terrible news for the coin",
    "double spend on {t} again, holders lost funds",
    "{t} hit by a 51% attack, miners are angry",
    "wow a 51% attack on {t}, shocked",
    "panic after the {t} attack, worried about my coins",
]
ATTACK_OTHER = [
    "{t} developers publish a report on the 51% attack",
    "exchanges raise {t} confirmations after the attack",
]
POSITIVE = [
    "{t} coin looks good this week",
    "happy with my {t} mining rig",
    "great day for crypto and {t}",
    "glad i kept my {t} coins",
]
NEUTRAL = [
    "{t} coin price update",
    "checking the {t} block explorer",
    "new {t} wallet release is out",
    "{t} mining pool stats",
]
NEGATIVE = [
    "{t} coin price is bad today",
    "sad to see crypto down, {t} included",
    "{t} miners are furious about fees",
]
FEAR = ["scared", "worried"]


def stamp(day, rng):
    t = dt.datetime.combine(day, dt.time()) + dt.timedelta(seconds=rng.randrange(86400))
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def message(rng, ticker, attack_p, neg_p, fear_p, pos_p=0.2):
    r = rng.random()
    if r < attack_p:
        pool = ATTACK_NEG if rng.random() < 0.8 else ATTACK_OTHER
    elif r < attack_p + neg_p:
        pool = NEGATIVE
    elif r < attack_p + neg_p + pos_p:
        pool = POSITIVE
    else:
        pool = NEUTRAL
    text = rng.choice(pool).format(t=ticker)
    if rng.random() < fear_p:
        text += " " + rng.choice(FEAR)
    return text


class Writer:
    def __init__(self, prefix, rng):
        self.prefix = prefix
        self.rng = rng
        self.rows = []

    def add(self, day, text, lang="en"):
        n = len(self.rows)
        row = {"id": f"{self.prefix}{n:05d}", "created_at": stamp(day, self.rng),
               "author": f"{self.prefix}u{n:05d}", "text": text}
        if lang:
            row["lang"] = lang
        self.rows.append(row)
        return row

    def noise(self, day, ticker):
        # A duplicate, a non-English unit and a link, for the cleaning step.
        first = self.rows[0]
        self.rows.append(dict(first, id=first["id"] + "d"))
        self.add(day, f"{ticker} moneda sube hoy", lang="es")
        self.add(day, f"{ticker} coin news https://example.org/{ticker.lower()}")

    def save(self, name):
        self.rows.sort(key=lambda r: (r["created_at"], r["id"]))
        with open(OUT / name, "w", encoding="utf-8", newline="\n") as f:
            for r in self.rows:
                f.write(json.dumps(r, ensure_ascii=False) + "\n")


def days(start, n):
    return [start + dt.timedelta(days=i) for i in range(n)]


def event_corpora(tag, ticker, attack_start, bench_start, volumes, attack_share, seed):
    rng = random.Random(seed)
    whole = Writer(f"{tag}w", rng)
    for day, n, share in zip(days(attack_start, len(volumes)), volumes, attack_share):
        for _ in range(n):
            whole.add(day, message(rng, ticker, share, 0.15, 0.15))
    whole.noise(attack_start, ticker)
    whole.save(f"{tag}_whole.jsonl")

    bench = Writer(f"{tag}b", rng)
    for day in days(bench_start, len(volumes)):
        for _ in range(15):
            bench.add(day, message(rng, ticker, 0.0, 0.15, 0.05, 0.3))
    bench.noise(bench_start, ticker)
    bench.save(f"{tag}_benchmark.jsonl")


def watch_corpora(seed):
    rng = random.Random(seed)
    base = Writer("wb", rng)
    for day in days(dt.date(2021, 3, 1), 10):
        for _ in range(120):
            base.add(day, message(rng, "XYZ", 0.0, 0.2, 0.1))
    base.save("watch_baseline.jsonl")

    stream = Writer("ws", rng)
    for i, day in enumerate(days(dt.date(2021, 3, 15), 8)):
        attack = i == 5
        for _ in range(360 if attack else 120):
            if attack:
                stream.add(day, message(rng, "XYZ", 0.56, 0.14, 0.3))
            else:
                stream.add(day, message(rng, "XYZ", 0.0, 0.2, 0.1))
    stream.save("watch_stream.jsonl")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    event_corpora("e11", "BTG", dt.date(2020, 1, 22), dt.date(2019, 12, 22),
                  [30, 45, 60, 55, 70, 120, 80, 50, 35],
                  [0.2, 0.5, 0.6, 0.5, 0.5, 0.7, 0.5, 0.4, 0.3], 11)
    event_corpora("e4", "BTG", dt.date(2018, 5, 15), dt.date(2018, 4, 15),
                  [40, 90, 110, 70, 60, 50, 40, 30, 30, 25, 20],
                  [0.3, 0.6, 0.6, 0.5, 0.4, 0.4, 0.3, 0.3, 0.2, 0.2, 0.2], 4)
    event_corpora("e9", "LCC", dt.date(2019, 7, 3), dt.date(2019, 6, 3),
                  [15, 20, 25, 25, 30, 40, 50, 70, 45, 30, 20],
                  [0.1, 0.3, 0.4, 0.4, 0.5, 0.5, 0.6, 0.6, 0.4, 0.3, 0.2], 9)
    (OUT / "heatmap.yaml").write_text(
        "kind: whole\n"
        "events:\n"
        "  - id: E4\n    whole: e4_whole.jsonl\n    benchmark: e4_benchmark.jsonl\n"
        "  - id: E9\n    whole: e9_whole.jsonl\n    benchmark: e9_benchmark.jsonl\n"
        "  - id: E11\n    whole: e11_whole.jsonl\n    benchmark: e11_benchmark.jsonl\n")
    (OUT / "policy.yaml").write_text(
        "negative_jump: 20\nfear_jump: 0.1\nvolume_ratio: 2\nmin_units: 10\nwindow_days: 1\n")
    watch_corpora(21)


if __name__ == "__main__":
    main()
