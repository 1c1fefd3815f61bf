#!/usr/bin/env python3
"""Time the pure-Python kernels against the compiled extension.

Both modules are generated from the same source (casimir1d/_core.py); the
compiled variant is produced by Cython at build time.  This script times the
hot scalar kernels on representative argument grids and reports per-call
cost and speedup, plus a cross-check that the two implementations agree to
rounding on every sampled point.

Usage: python3 scripts/benchmark_kernels.py [--repeats N]
"""

import argparse
import sys
import time

from casimir1d import _core as pure

try:
    from casimir1d import _core_c as compiled
except ImportError:
    compiled = None

MILD_L = (3.0, 2.0, 0.5, False)
MILD_R = (2.5, 1.5, 1.0, False)
FIG = (10.0, 10.0, 0.1, False)

KGRID = [0.013 * i + 0.0071 for i in range(1, 400)]

CASES = [
    ("refractive_at",
     lambda m: [m.refractive_at(-1j * k, *FIG) for k in KGRID]),
    ("slab_parts",
     lambda m: [m.slab_parts(k, complex(1.4, 0.3 / k), 0.7) for k in KGRID]),
    ("ic_bracket",
     lambda m: [m.ic_bracket(k, 1.0, 0.7, MILD_L, MILD_R) for k in KGRID]),
    ("bath_integrand",
     lambda m: [m.bath_integrand(k, 1.0, 0.7, MILD_L, MILD_R, 5.0, 7.0)
                for k in KGRID]),
    ("nodiss_bracket",
     lambda m: [m.nodiss_bracket(k, 1.0, 0.7, (4.0, 3.0, 0.0, True),
                                 (4.0, 3.0, 0.0, True)) for k in KGRID]),
    ("roundtrip_rot_direct",
     lambda m: [m.roundtrip_rot_direct(k, 1.0, 0.7, MILD_L, MILD_R)
                for k in KGRID]),
]


def _flatten(values):
    out = []
    for v in values:
        if isinstance(v, tuple):
            out.extend(v)
        else:
            out.append(v)
    return out


def _time(fn, module, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(module)
        best = min(best, time.perf_counter() - t0)
    return best / len(KGRID), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled extension not importable; timing pure Python only")
    print("%-22s %14s %14s %9s" % ("kernel", "pure (us)", "compiled (us)",
                                   "speedup"))
    worst_dev = 0.0
    for name, fn in CASES:
        t_pure, vals_pure = _time(fn, pure, args.repeats)
        if compiled is None:
            print("%-22s %14.3f %14s %9s" % (name, t_pure * 1e6, "-", "-"))
            continue
        t_comp, vals_comp = _time(fn, compiled, args.repeats)
        for u, v in zip(_flatten(vals_pure), _flatten(vals_comp)):
            worst_dev = max(worst_dev, abs(u - v))
        print("%-22s %14.3f %14.3f %8.2fx"
              % (name, t_pure * 1e6, t_comp * 1e6, t_pure / t_comp))
    if compiled is not None:
        print("max |pure - compiled| over all samples: %.3e" % worst_dev)
        if worst_dev > 1e-12:
            print("DISAGREEMENT above 1e-12: investigate", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
