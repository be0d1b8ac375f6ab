"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Every workload is run on both backends; outputs are compared before timing
so the numbers only ever describe identical results.
"""

import argparse
import random
import sys
import timeit

from judgagg._kernels import implementations


def _masks(rng, m, atoms):
    full = (1 << (1 << atoms)) - 1
    pos = [rng.getrandbits(1 << atoms) for _ in range(m)]
    return pos, [full & ~p for p in pos], full


def workloads(seed):
    rng = random.Random(seed)
    pos, neg, base = _masks(rng, 14, 10)
    cands = [rng.getrandbits(16) for _ in range(4000)]
    agents = [(rng.getrandbits(16), (1 << 16) - 1) for _ in range(60)]
    pc = [rng.randint(0, 60) for _ in range(16)]
    nc = [60 - c for c in pc]
    small = [rng.getrandbits(6) for _ in range(12)]
    dist = [[(a ^ c).bit_count() for c in small] for a in (rng.getrandbits(6) for _ in range(5))]
    return {
        "enumerate_patterns m=14 atoms=10": ("enumerate_patterns", (pos, neg, base)),
        "hamming_rows 60x4000": ("hamming_rows", (cands, agents)),
        "support_values 4000 cands": ("support_values", (cands, pc, nc)),
        "full_search n=5 C=12 sum": ("full_search", (dist, small, 6, False)),
        "full_search n=5 C=12 max": ("full_search", (dist, small, 6, True)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    impls = implementations()
    if "cython" not in impls:
        print("compiled kernels not built; only the fallback is available", file=sys.stderr)
    names = sorted(impls)
    print(f"{'workload':36}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, (fn, params) in workloads(args.seed).items():
        results = {n: getattr(impls[n], fn)(*params) for n in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"{label}: backends disagree")
        best = {}
        for n in names:
            f = getattr(impls[n], fn)
            t = timeit.Timer(lambda f=f: f(*params))
            loops, _ = t.autorange()
            best[n] = min(t.repeat(args.repeat, loops)) / loops
        row = f"{label:36}" + "".join(f"{best[n] * 1e3:>10.3f}ms" for n in names)
        if len(names) == 2:
            row += f"{best['python'] / best['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
