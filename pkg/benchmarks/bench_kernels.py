#!/usr/bin/env python3
"""Compare the compiled kernel against the pure-Python fallback on the
identity-satisfaction brute force that dominates catalog runtimes.

Run after an editable install (the compiled backend needs the built
extension):

    python benchmarks/bench_kernels.py
"""

import time

from monvar import _kernel_py
from monvar.monoids import zero_element
from monvar.rees import build_rees
from monvar.systems import family, parse_identity
from monvar.words import parse_word

try:
    from monvar import _kernel
except ImportError:
    _kernel = None

CASES = [
    ("pair-swap on S(xzxyty)", "xzxyty", parse_identity("x^2y^2 = y^2x^2")),
    ("three-letter insertion on S(xzxyty)", "xzxyty", parse_identity("x^2yzx^2 = x^2yxzx^2")),
    ("marker swap (alpha 1) on S(xzxyty)", "xzxyty", family("alpha", 1)),
    ("marker swap (delta 2,2) on S(xzxyty)", "xzxyty", family("delta", 2, 2)),
]


def run(impl, monoid, ident):
    seq = ident.lhs + ident.rhs
    letters = sorted(frozenset(seq), key=seq.index)
    slot = {x: k for k, x in enumerate(letters)}
    flat = monoid.flat()
    zero = zero_element(monoid)
    t0 = time.perf_counter()
    res = impl.check_identity(
        flat,
        monoid.size,
        monoid.one,
        [slot[x] for x in ident.lhs],
        [slot[x] for x in ident.rhs],
        len(letters),
        zero,
    )
    return time.perf_counter() - t0, res


def main():
    backends = [("python", _kernel_py)]
    if _kernel is not None:
        backends.append(("compiled", _kernel))
    print(f"{'case':45s} " + " ".join(f"{n:>12s}" for n, _ in backends) + "  speedup")
    for name, word, ident in CASES:
        monoid = build_rees([parse_word(word)]).base
        times = []
        result = None
        for _, impl in backends:
            dt, res = run(impl, monoid, ident)
            if result is None:
                result = res
            assert res == result, "backends disagree"
            times.append(dt)
        ratio = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else float("nan")
        print(
            f"{name:45s} "
            + " ".join(f"{dt * 1000:10.2f}ms" for dt in times)
            + f"  {ratio:6.1f}x"
        )


if __name__ == "__main__":
    main()
