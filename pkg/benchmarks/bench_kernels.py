"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the raw kernel sums and two end-to-end workloads (a default-size local
explanation and a global delta estimate) under each available backend.
"""

import argparse
import statistics
import time

import numpy as np

from deltaxai import GaussianPopulation, LinearModel, delta_global, kernels, sample_population
from deltaxai.scenarios import builtin, run_scenario


def timed(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def workloads():
    rng = np.random.default_rng(0)
    samples = rng.normal(size=10_000)
    grid = np.linspace(-5, 5, 4096)
    point = np.array([0.3])
    data = sample_population(GaussianPopulation.standard(2), 10_000, seed=0)
    model = LinearModel(np.array([3.0, 1.0]))
    case = builtin("case1_extreme")
    return {
        "pdf_sum 4096 pts x 10k": lambda: kernels.pdf_sum(samples, grid, 0.2),
        "cdf_mean 4096 pts x 10k": lambda: kernels.cdf_mean(samples, grid, 0.2),
        "pdf_sum 1 pt x 10k (x1000)": lambda: [kernels.pdf_sum(samples, point, 0.2) for _ in range(1000)],
        "explain case1_extreme N=5000 L=200": lambda: run_scenario(case, outputs={"shapley": False}),
        "delta_global N=10k K=15": lambda: delta_global(model, data, 0, 15),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(kernels.BACKENDS, reverse=True)
    results = {}
    for backend in names:
        kernels.set_backend(backend)
        for label, fn in workloads().items():
            results[(label, backend)] = timed(fn, args.repeat)

    labels = list(workloads())
    width = max(map(len, labels))
    print(f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in names) + ("     speedup" if len(names) > 1 else ""))
    for label in labels:
        row = [results[(label, b)] for b in names]
        line = f"{label:<{width}}  " + "  ".join(f"{t * 1e3:>8.1f}ms" for t in row)
        if len(names) > 1:
            line += f"  {row[names.index('python')] / row[names.index('cython')]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
