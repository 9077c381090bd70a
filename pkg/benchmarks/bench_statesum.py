"""Timing comparison of the compiled and pure bracket kernels.

Each workload runs in a fresh subprocess so the backend choice (made at
import time from TWISTLINK_PURE) is honest.  The big twisted word only
runs compiled; the pure path would take minutes on 45 crossings.

Usage: python3 benchmarks/bench_statesum.py
"""

import os
import subprocess
import sys

SNIPPET = """
import time
from twistlink.braid import parse_braid
from twistlink.diagram import braid_closure
from twistlink.jones import kauffman_bracket
import twistlink.kernels as kernels

d = braid_closure(parse_braid({word!r}))
t0 = time.perf_counter()
kauffman_bracket(d, limit=64)
print(f"{{kernels.BACKEND}} {{time.perf_counter() - t0:.3f}}")
"""

WORKLOADS = [
    ("T(2,11)   11 crossings", "2: " + " ".join(["1"] * 11), True),
    ("T(3,7)    14 crossings", "3: " + " ".join(["1", "2"] * 7), True),
    ("T(7,3)    18 crossings", "7: " + " ".join("1 2 3 4 5 6".split() * 3), True),
    ("T(2,21)   21 crossings", "2: " + " ".join(["1"] * 21), True),
    (
        "T(8,3,4,-2) 45 crossings (seam)",
        "8: " + " ".join([str(g) for g in list(range(1, 8)) * 3 + [-3, -2, -1] * 8]),
        False,
    ),
]


def run(word, pure):
    env = dict(os.environ)
    if pure:
        env["TWISTLINK_PURE"] = "1"
    else:
        env.pop("TWISTLINK_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", SNIPPET.format(word=word)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    print(f"{'workload':34s} {'compiled':>10s} {'pure':>10s} {'speedup':>9s}")
    for label, word, run_pure in WORKLOADS:
        backend, fast = run(word, pure=False)
        if backend != "compiled":
            print(f"{label:34s} compiled kernel unavailable, built pure only")
            continue
        if run_pure:
            _, slow = run(word, pure=True)
            print(f"{label:34s} {fast:9.3f}s {slow:9.3f}s {slow / fast:8.1f}x")
        else:
            print(f"{label:34s} {fast:9.3f}s {'skipped':>10s}")


if __name__ == "__main__":
    main()
