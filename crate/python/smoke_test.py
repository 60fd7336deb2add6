#!/usr/bin/env python3
"""Smoke test for the pyliering extension module.

Builds the cdylib if needed, stages it as an importable module, and
exercises the main types and operations. Run from anywhere:

    python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
BUILD = REPO / "python" / "build"


def stage_module() -> None:
    lib = REPO / "target" / "release" / "libpyliering.so"
    if not lib.exists():
        subprocess.run(
            [
                "cargo", "build", "-p", "pyliering", "--release",
                "--features", "extension-module",
            ],
            cwd=REPO,
            check=True,
        )
    BUILD.mkdir(parents=True, exist_ok=True)
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(lib, BUILD / f"pyliering{suffix}")
    sys.path.insert(0, str(BUILD))


def main() -> None:
    stage_module()
    import pyliering

    # Family construction and basic structure.
    g = pyliering.LieRing.family("affine2", p=5)
    assert g.p == 5 and g.dim == 2
    assert g.validate() is None
    assert g.bracket([1, 0], [0, 1]) == [0, 1]
    assert g.is_soluble() and not g.is_nilpotent()

    # Cartan subring of the affine ring is the first complement line.
    cartan = g.cartan_subring()
    assert cartan.dim == 1 and cartan.basis() == [[1, 0]]
    assert g.is_cartan(cartan)
    assert g.normalizer(cartan) == cartan

    # Engel sets and ad-nilpotency data.
    engel, stationary_at = g.engel_element([0, 1])
    assert engel.dim == 2 and stationary_at == 2
    line, stationary_at = g.engel_element([1, 0])
    assert line.basis() == [[1, 0]] and stationary_at == 1

    # Fitting subring of the Borel ring: scalars plus the nilpotent part.
    b = pyliering.LieRing.family("borel", p=5, n=2)
    space, is_subspace, is_ideal, is_nilpotent = b.fitting()
    assert (is_subspace, is_ideal, is_nilpotent) == (True, True, True)
    assert space.basis() == [[1, 1, 0], [0, 0, 1]]

    # Frattini subring of the Heisenberg ring is its center.
    h = pyliering.LieRing.family("heisenberg", p=3)
    phi, is_ideal, is_nilpotent = h.frattini()
    assert phi.basis() == [[0, 0, 1]] and is_ideal and is_nilpotent
    assert phi == h.center()

    # Def-abnormal lattice data.
    g3 = pyliering.LieRing.family("affine2", p=3)
    minimal = g3.minimal_def_abnormal()
    assert sorted(s.basis() for s in minimal) == [[[1, 0]], [[1, 1]], [[1, 2]]]
    assert g3.is_def_abnormal(minimal[0])
    assert not g3.is_def_abnormal(g3.span([[0, 1]]))

    # Inner automorphisms: a shear fixing the derived line.
    assert g3.exp_ad([0, 1]) == [[1, 0], [2, 1]]

    # Structure-constant JSON round trip.
    doc = json.loads(g.to_json())
    assert doc["p"] == 5 and doc["brackets"] == [[0, 1, [0, 1]]]
    back = pyliering.LieRing.from_json(g.to_json())
    assert back.bracket([1, 0], [0, 1]) == [0, 1]

    # Reproducible random rings with construction logs.
    r1, log1 = pyliering.random_soluble(7, max_dim=4, p=5)
    r2, _ = pyliering.random_soluble(7, max_dim=4, p=5)
    assert r1.to_json() == r2.to_json()
    assert r1.validate() is None and r1.is_soluble()
    assert len(log1) >= 1

    # Single named check and the whole suite.
    outcome = json.loads(g.run_check("T1"))
    assert outcome["verdict"] == "PASS", outcome
    report = json.loads(pyliering.suite(primes=[3], max_dim=2))
    verdicts = {
        o["verdict"]
        for ring in report["rings"]
        for o in ring["outcomes"]
    }
    assert "FAIL" not in verdicts and "GUARD_EXCEEDED" not in verdicts, report

    print("pyliering smoke test: OK")


if __name__ == "__main__":
    main()
