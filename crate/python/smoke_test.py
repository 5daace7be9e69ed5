"""Smoke test for the llg_bdf extension module.

Build first with `cargo build -p llg-py` (or `--release`); the script
loads the shared library straight from the cargo target directory.
"""

import importlib.machinery
import importlib.util
import math
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libllg_bdf.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("llg_bdf", str(lib))
            spec = importlib.util.spec_from_file_location("llg_bdf", str(lib), loader=loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            return mod
    sys.exit("libllg_bdf.so not found; run `cargo build -p llg-py` first")


def check(name, ok):
    print(f"{'PASS' if ok else 'FAIL'} {name}")
    return ok


def main():
    llg = load()
    results = []

    # (I - Lap) u = cos(pi x) on [0,1] has u = cos(pi x) / (1 + pi^2).
    n = 64
    xs = [(i + 0.5) / n for i in range(n)]
    rhs = [math.cos(math.pi * x) for x in xs]
    u = llg.solve([n, 1, 1], [1.0, 1.0, 1.0], 1.0, 1.0, rhs, 4)
    err = max(abs(a - r / (1 + math.pi**2)) for a, r in zip(u, rhs))
    results.append(check(f"solver matches cosine mode (err {err:.2e})", err < 1e-6))

    cells, extent = [4, 4, 4], [1.0, 1.0, 1.0]
    m = [[0.3, -0.5, 0.8]] * 64
    fast = llg.stray_field(cells, extent, m)
    direct = llg.stray_field_direct(cells, extent, m)
    diff = max(abs(a - b) for fa, fb in zip(fast, direct) for a, b in zip(fa, fb))
    results.append(check(f"stray field transform equals direct sum (diff {diff:.2e})", diff < 1e-10))

    k, h_e, eps, q = llg.convert_units(480.0, 1.0, 5.0)
    results.append(check(f"unit conversion k={k:.4f} h_e={h_e:.3e}", abs(k - 0.177) < 0.01 and abs(h_e - 4.97e-3) < 1e-4))

    row = llg.manufactured_run("bdf3", 1, 1000, 0.1 / 8)
    results.append(check(f"bdf3 manufactured error {row['linf']:.3e}", 1e-7 < row["linf"] < 3e-7))

    stepper = llg.Stepper("bdf2", 0.01, [8, 1, 1], [1.0, 1.0, 1.0], 0.1, 1.0)
    m0 = [[math.cos(0.3 * i), math.sin(0.3 * i), 0.0] for i in range(8)]
    stepper.startup(m0)
    e0 = stepper.energy()
    ok = stepper.step(50)
    results.append(check(f"stepper dissipates energy ({e0:.4e} -> {stepper.energy():.4e})", ok and stepper.energy() < e0))
    results.append(check("unit length preserved", stepper.max_unit_deviation <= 4 * sys.float_info.epsilon))
    results.append(check("bad scheme rejected", raises(lambda: llg.Stepper("bdf4", 0.1, [4, 1, 1], [1, 1, 1], 1.0, 1.0))))

    return 0 if all(results) else 1


def raises(f):
    try:
        f()
    except ValueError:
        return True
    return False


if __name__ == "__main__":
    sys.exit(main())
