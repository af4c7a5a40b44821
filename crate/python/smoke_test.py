"""Smoke test for the vanline_py extension module.

Build it first:

    cargo build -p vanline-py --features extension-module --release

then run this script from the repository root. It looks for the built
library under target/ when the module is not importable already.
"""

import importlib.machinery
import importlib.util
import json
import math
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import vanline_py  # noqa: F401

        return vanline_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libvanline_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("vanline_py", str(lib))
            spec = importlib.util.spec_from_loader("vanline_py", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("vanline_py not built; see the docstring")


def main():
    v = load()
    assert v.SCHEMA_VERSION == 1

    report = json.loads(v.run_all())
    statuses = {c["checkName"]: c["status"] for c in report["checks"]}
    assert report["schemaVersion"] == 1
    assert sum(s == "flagged" for s in statuses.values()) == 3
    assert statuses["dwork.orbits"] == "pass"
    assert v.run_all() == v.run_all()

    dilog = json.loads(v.run_suite("dilog"))
    assert [c["checkName"] for c in dilog["checks"]][0] == "dilog.li2Values"

    n = json.loads(v.bps_invert(json.dumps({"1": [280000, 1], "2": [22296200000, 3]})))
    assert n["2"] == [22296410000, 3]
    back = json.loads(v.bps_expand(json.dumps(n)))
    assert back["2"] == [22296200000, 3]

    assert [v.chi(k) for k in range(6)] == [0, 1, -1, 0, 1, -1]
    re, im = v.li2(1.0, 0.0)
    assert abs(re - math.pi ** 2 / 6) < 1e-12 and abs(im) < 1e-15
    assert abs(v.clausen(math.pi / 3) - 1.0149416064096536) < 1e-12

    ext = json.loads(v.locsys_extend("omega", "omega"))
    assert len(ext["solutions"]) == 1
    assert json.loads(v.locsys_residues(json.dumps(ext["solutions"][0]))) == ["0"] * 5
    assert v.riemann_hurwitz_genus(25, 3, [[5] * 5] * 3) == 6

    curve = {"vertices": [[0, 0, 0]], "edges": [{"from": 0, "rayDir": d} for d in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1])]}
    assert v.tropical_balanced(json.dumps(curve))

    for bad in (lambda: v.run_suite("nope"), lambda: v.run_all("{oops"), lambda: v.li2(2.0, 0.0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
