"""Compare the compiled and pure-Python kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 20]

Prints the best-of-N time per call for each kernel and backend, plus the
largest difference between the two backends' results.
"""

import argparse
import timeit

import numpy as np

from majorana_readout import _kernels
from majorana_readout.scenario import default_config, qubit_params
from majorana_readout.transmon import build_mt_hamiltonian, mt_number_operator
from majorana_readout.engine import coupling_matrix
from majorana_readout.operators import ChargeBasis, hermitian_eig
from majorana_readout.units import TWO_PI


def sw_inputs(n_max):
    cfg = default_config("majorana-transmon")
    b = ChargeBasis(n_max)
    eig = hermitian_eig(build_mt_hamiltonian(qubit_params(cfg), 1, b))
    g = coupling_matrix(eig, mt_number_operator(b), TWO_PI * 0.1)
    return eig.values, g.g, TWO_PI * 5.5


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    cases = []
    for n_max in (30, 120, 480):
        w, g, wr = sw_inputs(n_max)
        cases.append((f"sw_sums L={len(w)}", lambda m, w=w, g=g, wr=wr: m.sw_sums(w, g, wr, 1e-3, 1e-13)))
    xs = np.linspace(0.0, 6.0, 4096)
    cases.append(("erfc scalar x1000", lambda m: [m.erfc(float(x)) for x in xs[:1000]]))
    cases.append((f"erfc array n={len(xs)}", lambda m: m.erfc(xs)))

    print(f"{'kernel':<24}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}{'max diff':>12}")
    for name, call in cases:
        times = {b: bench(lambda: call(_kernels.get_backend(b)), args.repeat) for b in backends}
        outs = {b: call(_kernels.get_backend(b)) for b in backends}
        diff = 0.0
        if len(backends) == 2:
            a, c = outs["python"], outs["compiled"]
            a = a[0] if isinstance(a, tuple) else a
            c = c[0] if isinstance(c, tuple) else c
            diff = float(np.max(np.abs(np.asarray(a) - np.asarray(c))))
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{name:<24}" + "".join(f"{times[b] * 1e3:>12.3f}ms" for b in backends) + f"{speed:>9.1f}x{diff:>12.2e}")


if __name__ == "__main__":
    main()
