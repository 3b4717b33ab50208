"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Both implementations are called directly through ``numba_impl`` and
``numpy_impl``, so the ``HULLKIT_BACKEND`` setting does not matter here.
The first numba call (compilation or cache load) is excluded by a warm-up.
"""

from __future__ import annotations

import argparse
import json
import timeit

import networkx as nx
import numpy as np

from hullkit import _kernels
from hullkit.graph import Graph


def _graph(n: int, seed: int) -> Graph:
    h = nx.connected_watts_strogatz_graph(n, 4, 0.2, seed=seed)
    return Graph.from_networkx(h)


def cases(seed: int):
    for n in (100, 400, 1000):
        g = _graph(n, seed)
        indptr, indices = g.csr
        yield f"bfs_all_pairs n={n}", lambda impl, a=(indptr, indices, n): impl.bfs_all_pairs(*a)
        nodes = np.arange(0, n, 2, dtype=np.int64)
        yield (f"induced_distances n={n} k={len(nodes)}",
               lambda impl, a=(indptr, indices, nodes, n): impl.induced_distances(*a))
    for n in (12, 16, 18):
        step = _graph(n, seed).step_masks
        yield f"isometric_table n={n}", lambda impl, a=(step, n): impl.isometric_table(*a)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", metavar="FILE", help="also write the rows as JSON")
    args = ap.parse_args(argv)
    if _kernels.numba_impl is None:
        ap.error("numba is not importable")
    impls = {"numba": _kernels.numba_impl, "numpy": _kernels.numpy_impl}
    rows = []
    print(f"{'kernel':<34} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, fn in cases(args.seed):
        t = {}
        for label, impl in impls.items():
            fn(impl)
            t[label] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        rows.append({"kernel": name, **t, "speedup": t["numpy"] / t["numba"]})
        print(f"{name:<34} {t['numba']:>10.5f} {t['numpy']:>10.5f} {t['numpy'] / t['numba']:>7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
