"""Sweep a handful of registered identities over their default grids.

The same runs are available from the shell as ``qeuler sweep ID`` or
``qeuler verify --all``.

    python3 demos/verify_registry.py
"""
import time

from qeuler.identities import registry, sweep

print(f"{len(registry())} identities registered\n")
for ident in ("thm1.1", "eq-li-li-2", "thm1.4", "thm1.4-symbolic", "cor4.1", "ex-s231bar"):
    t0 = time.perf_counter()
    res = sweep(ident)
    s = res.summary
    print(f"{ident:18} {s['passed']:3}/{s['count']:<3} passed  worst residual/bound {s.get('worst_ratio', '-'):>10}"
          f"  ({time.perf_counter() - t0:.1f}s)")
