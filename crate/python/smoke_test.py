#!/usr/bin/env python3
"""Smoke test for the pickfactor_py extension module.

Builds nothing itself: it expects `cargo build -p pickfactor-py --release`
to have produced target/release/libpickfactor_py.so, which it stages under a
temporary directory with the importable module name.
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libpickfactor_py.so",
        ROOT / "target" / "debug" / "libpickfactor_py.so",
        ROOT / "target" / "release" / "libpickfactor_py.dylib",
        ROOT / "target" / "debug" / "libpickfactor_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "extension not built; run: cargo build -p pickfactor-py --release"
        )
    stage = pathlib.Path(tempfile.mkdtemp(prefix="pickfactor_py_"))
    shutil.copy2(built, stage / "pickfactor_py.so")
    sys.path.insert(0, str(stage))
    import pickfactor_py

    return pickfactor_py


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    pf = load_module()

    # lift/evaluate round trip and the weighted norm of z1 z2
    h = pf.SymVector.from_terms(2, 2, [([1, 1], 1.0, 0.0)])
    assert close(h.da_norm(), math.sqrt(0.5), 1e-12)
    lifted = pf.lift_min_norm(h)
    assert close(lifted.norm(), h.da_norm(), 1e-12)
    back = pf.evaluate_fock(lifted)
    re, im = back.coeff([1, 1])
    assert close(re, 1.0, 1e-12) and close(im, 0.0, 1e-12)

    # sequence factorization hand oracle: (z, 1) -> phi = (z,1)/sqrt(2), F = sqrt(2)
    z = pf.SymVector.from_terms(1, 1, [([1], 1.0, 0.0)])
    one = pf.SymVector.from_terms(1, 0, [([0], 1.0, 0.0)])
    phi, big_f, diag = pf.factor_sequence([z, one], 2)
    s = 1.0 / math.sqrt(2.0)
    assert close(phi[0].coeff([1])[0], s)
    assert close(phi[1].coeff([0])[0], s)
    assert close(big_f.coeff([0])[0], math.sqrt(2.0))
    assert close(diag["F_norm_sq"], 2.0)
    assert close(diag["column_norm"], 1.0)
    assert diag["max_residual"] < 1e-10

    # weak-product hand oracle: {(z,z),(1,1)} -> fg = z^2 + 1, ||f|| ||g|| = sqrt(2)
    f, g, m, certs = pf.factor_weak_product([(z, z), (one, one)], 2)
    assert close(certs["product_norm"], math.sqrt(2.0))
    assert close(certs["rep_cost"], 2.0)
    assert certs["residual"] < 1e-10
    fg = f.mul(g, 4)
    assert close(fg.coeff([0])[0], 1.0) and close(fg.coeff([2])[0], 1.0)
    assert close(fg.coeff([1])[0], 0.0, 1e-10)

    # column-row: the coordinate pair in two variables gives (sqrt(2), 1)
    z1 = pf.SymVector.from_terms(2, 1, [([1, 0], 1.0, 0.0)])
    z2 = pf.SymVector.from_terms(2, 1, [([0, 1], 1.0, 0.0)])
    col, row, ratio = pf.column_row([z1, z2], 6)
    assert close(col, math.sqrt(2.0), 1e-10)
    assert close(row, 1.0, 1e-10)
    assert close(ratio, 1.0 / math.sqrt(2.0), 1e-10)

    # pick certificate: phi = 2z is not contractive on {0, 0.9}
    two_z = pf.SymVector.from_terms(1, 1, [([1], 2.0, 0.0)])
    psd, min_eig = pf.pick_test(two_z, [[(0.0, 0.0)], [(0.9, 0.0)]], 1.0)
    assert not psd and min_eig < -1e-3

    # kernel Gram for u = {0, 1/sqrt(2)}: [[1,1],[1,2]]
    space = '{"d": 1, "points": [{"label": "a", "u": [[0.0, 0.0]]}, {"label": "b", "u": [[%.17f, 0.0]]}]}' % math.sqrt(0.5)
    gram = pf.kernel_matrix(space)
    assert close(gram[0][0][0], 1.0) and close(gram[1][1][0], 2.0)
    assert close(gram[0][1][0], 1.0) and close(gram[1][0][0], 1.0)

    # sampled factorization keeps the pointwise identity
    space = '{"d": 1, "points": [{"label": "a", "u": [[0.0, 0.0]]}, {"label": "b", "u": [[0.4, 0.0]]}]}'
    report = pf.cnp_factor(space, [[(1.0, 0.0), (0.5, 0.0)]], 3, 16)
    assert report["max_pointwise_error"] < 1e-6

    print("smoke test passed")


if __name__ == "__main__":
    main()
