"""Time the compiled Dynnikov kernel against the pure-Python one.

    python3 benchmarks/bench_dynnikov.py [--words N] [--length L] [--strands S]
"""
import argparse
import random
import timeit

from twotheory.models import _dynnikov_py, braids


def words(count, length, strands, seed):
    rng = random.Random(seed)
    letters = [i for k in range(1, strands) for i in (k, -k)]
    return [[rng.choice(letters) for _ in range(length)] for _ in range(count)]


def run(fn, batch, strands, repeat):
    return min(timeit.repeat(lambda: [fn(w, strands) for w in batch], number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--strands", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    batch = words(a.words, a.length, a.strands, a.seed)
    py = run(_dynnikov_py.dynnikov_coords, batch, a.strands, a.repeat)
    print(f"{a.words} words, length {a.length}, {a.strands} strands")
    print(f"python  {py * 1e3:9.2f} ms")
    if braids._compiled is None:
        print("cython  not built")
        return
    cy = run(braids._compiled.dynnikov_coords, batch, a.strands, a.repeat)
    agree = all(_dynnikov_py.dynnikov_coords(w, a.strands) ==
                tuple(braids._compiled.dynnikov_coords(w, a.strands)) for w in batch)
    print(f"cython  {cy * 1e3:9.2f} ms")
    print(f"speedup {py / cy:9.1f}x   results agree: {agree}")


if __name__ == "__main__":
    main()
