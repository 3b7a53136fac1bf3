#!/usr/bin/env python3
"""Smoke test for the pybunchkit extension module.

Build the module first, then run from the repository root:

    cargo build --release -p bunchkit-py
    PYTHONPATH=python python3 python/smoke_test.py

(the build step drops libpybunchkit.so into target/release; the loader
shim below links it as a proper module name).
"""

import json
import pathlib
import sys

root = pathlib.Path(__file__).resolve().parent.parent
so = root / "target" / "release" / "libpybunchkit.so"
link = root / "python" / "pybunchkit.so"
if so.exists() and not link.exists():
    link.symlink_to(so)
sys.path.insert(0, str(root / "python"))

import pybunchkit as bk  # noqa: E402

TWO_POINT = json.dumps(
    {
        "kind": "BBI",
        "states": ["e", "a"],
        "order": [["e", "e"], ["a", "a"]],
        "comp": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"]],
        "E": ["e"],
        "minus": {},
        "nabla": [],
        "U": [],
        "seq": [],
        "R": [],
        "sigma": [],
        "modal": "none",
    }
)


def main() -> None:
    assert bk.parse_formula("(p * q) -* r", "BBI") == "p * q -* r"
    try:
        bk.parse_formula("p *- q", "BBI")
    except ValueError as e:
        assert "*-" in str(e)
    else:
        raise AssertionError("dnaw must be rejected in BBI")
    assert bk.expand_defined("!p", "BI") == "p -> bot"

    assert bk.check_frame(TWO_POINT) == []
    assert bk.sat(TWO_POINT, '{"p": ["a"]}', "a", "p * p") is False
    assert bk.entails(TWO_POINT, '{"p": ["a"]}', "p |- p * p") is False
    assert bk.entails(TWO_POINT, '{"p": ["a"]}', "p /\\ q |- p") is True

    com = bk.complex_algebra(TWO_POINT)
    assert bk.check_algebra(com) == []
    ok, surjective, failures = bk.theta_check(com)
    assert ok and surjective and failures == []
    pf = bk.prime_filter_frame(com)
    assert bk.check_frame(pf) == []
    assert bk.eta_check(TWO_POINT) is True

    universe = json.dumps({"loc": [1, 2], "val": [0, 1, 2, 5, 7]})
    heap = json.dumps({"heap": {"1": 5, "2": 7}})
    assert bk.heap_sat(universe, ["x"], [1], heap, "x |-> 5", "bi") is True
    assert bk.heap_sat(universe, ["x"], [1], heap, "x |-> 5", "bbi") is False
    assert bk.indexed_sat(universe, ["x"], [1], heap, "x |-> 5", "bi") is True
    assert (
        bk.heap_sat(universe, ["x"], [1], heap, "exists v. v |-> 7", "bi") is True
    )

    props = dict(bk.separation_properties(TWO_POINT))
    assert props["Disjointness"] is True
    assert props["Divisibility"] is False

    cm = bk.countermodel("BBI", "p |- p * p", 2)
    assert cm is not None
    witness = json.loads(cm)
    assert len(witness["frame"]["states"]) == 2
    assert bk.countermodel("BBI", "p /\\ q |- p", 2) is None

    names = [name for name, _ in bk.samples()]
    assert "bbi-2pt" in names and "ckbi-2pt" in names
    for name, frame in bk.samples():
        assert bk.check_frame(frame) == [], name

    print("pybunchkit smoke test: all checks passed")


if __name__ == "__main__":
    main()
