"""Stage 2 of the fixture search: dedupe the Alexander survivors by word
rotation (conjugation preserves the transverse type), then compute hat
augmentation counts per class looking for a {0, 5} pair."""

import json
import sys
import time

from scratch_search76 import TARGET, alexander, burau_gens, candidates, is_knot_word

from kch.augment import count_augmentations
from kch.braid import BraidWord, parse_braid
from kch.dga import build_dga


def hat_count(word, n, p=3):
    b = BraidWord(n, tuple(word))
    return count_augmentations(build_dga(b, "hat", "commuted"), p, chord_cap=24)


def top_count(word, n, p=3):
    b = BraidWord(n, tuple(word))
    return count_augmentations(build_dga(b, "topological", "commuted"), p, chord_cap=24)


def rotation_class(word):
    w = tuple(word)
    return min(w[k:] + w[:k] for k in range(len(w)))


def main():
    length = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    n, writhe = 4, 3
    gens = burau_gens(n)
    survivors = []
    t0 = time.time()
    scanned = knots = 0
    for word in candidates(n, length, writhe):
        scanned += 1
        if not is_knot_word(word, n):
            continue
        knots += 1
        if alexander(word, n, gens) == TARGET:
            survivors.append(tuple(word))
    print(f"scan: {scanned} words, {knots} knots, {len(survivors)} survivors "
          f"({time.time()-t0:.1f}s)", flush=True)

    classes = {}
    for w in survivors:
        classes.setdefault(rotation_class(w), []).append(w)
    reps = sorted(classes)
    print(f"{len(reps)} rotation classes", flush=True)

    by_count = {}
    for k, rep in enumerate(reps):
        t1 = time.time()
        h = hat_count(rep, n)
        print(f"[{k+1}/{len(reps)}] {rep} hat3={h} ({time.time()-t1:.1f}s)",
              flush=True)
        by_count.setdefault(h, []).append(rep)

    print("histogram:", {c: len(v) for c, v in sorted(by_count.items())}, flush=True)
    if 0 in by_count and 5 in by_count:
        b1 = min(by_count[0])
        b2 = min(by_count[5])
        t1, t2 = top_count(b1, n), top_count(b2, n)
        print(f"PAIR b1={b1} b2={b2} top3=({t1},{t2})", flush=True)
        out = {"b1": list(b1), "b2": list(b2), "n": n,
               "hat3": [0, 5], "top3": [t1, t2],
               "hat5": [hat_count(b1, n, 5), hat_count(b2, n, 5)]}
        with open("/root/pkg/search76_result.json", "w") as f:
            json.dump(out, f, indent=2)
        print("result written", flush=True)
    else:
        print("no (0,5) pair at this length", flush=True)


if __name__ == "__main__":
    main()
