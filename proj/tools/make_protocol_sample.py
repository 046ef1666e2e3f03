#!/usr/bin/env python3
"""Writes tests/data/protocol_sample.csv and prints the counts the tests expect.

The counts are computed here with the csv module, independently of the C++ reader.
"""
import collections
import csv
import io
import random
import sys

GLOSSES = ["BUCHSTABE1", "HAUS1A", "GEHEN1", "ICH1", "DU1", "SCHULE2", "GUT1*", "NICHT3B^",
           "ARBEIT1", "HEUTE1", "MORGEN1", "FRAU1", "MANN1", "KIND2", "ESSEN1"]
WORDS = ["ich", "du", "gehe", "heute", "morgen", "zur", "schule", "das", "haus", "ist", "gut", "nicht",
         "die", "frau", "der", "mann", "isst", "arbeitet", "kind"]


def main(path):
    rng = random.Random(7)
    rows = []
    for i in range(10):
        start = rng.randrange(0, 5000)
        frame = start
        spans = []
        for _ in range(rng.randint(1, 5)):
            a = frame + rng.randint(0, 3)
            b = a + rng.randint(0, 20)
            spans.append(f"{rng.choice(GLOSSES)}/{a}/{b}")
            frame = b
        text = " ".join(rng.choice(WORDS) for _ in range(rng.randint(2, 8)))
        if i == 3:
            text = 'er sagt: "ja, gut"'
        if i == 6:
            text += ", oder"
        rows.append([f"1{i:03d}_seg{i}.mp4", "A" if i % 3 else "B", text, " ".join(spans), start, frame + rng.randint(0, 5)])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["filename", "camera", "ger_text", "gloss", "start_time", "stop_time"])
    w.writerows(rows)
    with open(path, "w", newline="") as f:
        f.write(buf.getvalue())

    gloss = collections.Counter(s.split("/")[0] for r in rows for s in r[3].split())
    text = collections.Counter(t for r in rows for t in r[2].split())
    frames = sum(r[5] - r[4] + 1 for r in rows)
    print(f"segments={len(rows)} frames={frames}")
    print(f"gloss total={sum(gloss.values())} vocabulary={len(gloss)} singletons={sum(1 for c in gloss.values() if c == 1)}")
    print(f"text total={sum(text.values())} vocabulary={len(text)} singletons={sum(1 for c in text.values() if c == 1)}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/protocol_sample.csv")
