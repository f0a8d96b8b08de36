"""Compare the numba flow kernels with the pure Python fallback.

Usage: python3 benchmarks/bench_flow.py [--repeat N]
"""

import argparse
import time

import numpy as np

from chamberconn import _kernels
from chamberconn._kernels import FlowNetwork, distance_two_pairs
from chamberconn.building import flag_building
from chamberconn.lattice import partition_lattice

CASES = {
    "flag_building(4,2)": lambda: flag_building(4, 2).graph,
    "flag_building(3,3)": lambda: flag_building(3, 3).graph,
    "partition(5)": lambda: partition_lattice(5).chamber_graph,
}


def time_batch(net, pairs, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = net.batch_flows(pairs)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; only the fallback can run")
    print(f"{'graph':<22}{'pairs':>8}{'python s':>12}{'numba s':>12}{'speedup':>10}")
    for name, build in CASES.items():
        G = build()
        pairs = distance_two_pairs(G.indptr, G.indices, jit=False)
        slow_t, slow = time_batch(FlowNetwork(G.indptr, G.indices, jit=False), pairs, args.repeat)
        if _kernels.HAVE_NUMBA:
            fast_net = FlowNetwork(G.indptr, G.indices, jit=True)
            fast_net.batch_flows(pairs[:1])  # compile
            fast_t, fast = time_batch(fast_net, pairs, args.repeat)
            assert np.array_equal(fast, slow), "kernels disagree"
            print(f"{name:<22}{len(pairs):>8}{slow_t:>12.3f}{fast_t:>12.4f}{slow_t / fast_t:>9.1f}x")
        else:
            print(f"{name:<22}{len(pairs):>8}{slow_t:>12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
