"""Regenerate the JSON corpus in this directory.

The corpus is hand-chosen: every coupling below was written down by hand and
the nontrivial ones were found by a small search over derivation
representatives.  Run from the repository root:

    python3 tests/data/generate_corpus.py
"""

from __future__ import annotations

import json
from pathlib import Path

HERE = Path(__file__).resolve().parent


def E(n, r, c, v=1):
    rows = [[0] * n for _ in range(n)]
    rows[r][c] = v
    return rows


def Z(n):
    return [[0] * n for _ in range(n)]


def I(n, v=1):
    return [[v if i == j else 0 for j in range(n)] for i in range(n)]


def alg(dim, pairs, basis=None):
    grouped = {}
    for i, j, k, v in pairs:
        grouped.setdefault((i, j), []).append({"k": k, "v": str(v)})
    out = {"dim": dim, "brackets": [{"i": i, "j": j, "terms": t} for (i, j), t in sorted(grouped.items())]}
    if basis:
        out["basis"] = basis
    return out


H3 = alg(3, [(0, 1, 2, 1)], ["x", "y", "z"])
SL2 = alg(3, [(0, 1, 2, 1), (0, 2, 0, -2), (1, 2, 1, 2)], ["e", "f", "h"])
SO3 = alg(3, [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)], ["a", "b", "c"])
H3Q = alg(4, [(0, 1, 2, 1)], ["x", "y", "z", "w"])
L58 = alg(5, [(0, 1, 3, 1), (0, 2, 4, 1)])
SL2Q = alg(4, [(0, 1, 2, 1), (0, 2, 0, -2), (1, 2, 1, 2)], ["e", "f", "h", "w"])


def ab(m):
    return {"abelian": m}


# ad matrices, columns are [u, e_j]
AD_X = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
AD_Y = [[0, 0, 0], [0, 0, 0], [-1, 0, 0]]
AD_E = [[0, 0, -2], [0, 0, 0], [0, 1, 0]]
AD_F = [[0, 0, 0], [0, 0, 2], [-1, 0, 0]]
AD_H = [[2, 0, 0], [0, -2, 0], [0, 0, 0]]
N = [[0, 1], [0, 0]]


def h3q_coupling(a, b, extra_base=0):
    xi = [E(4, 2, 3), E(4, 3, 0, a), E(4, 3, 1, b)] + [Z(4)] * extra_base
    return {"base": ab(3 + extra_base), "fiber": H3Q, "xi": xi}


def l58_coupling(s=1):
    return {"base": ab(3), "fiber": L58, "xi": [E(5, 1, 0), E(5, 3, 2, s), E(5, 4, 1)]}


COUPLINGS = {
    "t1_h3_diag": {"base": ab(1), "fiber": H3, "xi": [[[1, 0, 0], [0, 0, 0], [0, 0, 1]]]},
    "t2_h3_inner": {"base": ab(2), "fiber": H3, "xi": [AD_X, AD_Y]},
    "t3_h3_shear": {
        "base": ab(3),
        "fiber": H3,
        "xi": [
            [[-1, 0, 0], [0, 0, 0], [0, -2, -1]],
            [[2, 0, 0], [0, 0, 0], [1, 1, 2]],
            [[-2, 0, 0], [0, 0, 0], [1, 1, -2]],
        ],
    },
    "t3_sl2_inner": {"base": ab(3), "fiber": SL2, "xi": [AD_E, AD_F, AD_H]},
    "sl2_sl2_adjoint": {"base": SL2, "fiber": SL2, "xi": [AD_E, AD_F, AD_H]},
    "t1_sl2": {"base": ab(1), "fiber": SL2, "xi": [AD_H]},
    "t3_rep_nilpotent": {"base": ab(3), "fiber": ab(2), "xi": [N, Z(2), Z(2)]},
    "h3_base_rep": {"base": H3, "fiber": ab(2), "xi": [N, Z(2), Z(2)]},
    "t3_h3q_nontrivial": h3q_coupling(1, 1),
    "t3_l58_nontrivial": l58_coupling(),
    "t4_h3q_nontrivial": h3q_coupling(1, 2, extra_base=1),
    "t4_rep_diagonal": {"base": ab(4), "fiber": ab(3), "xi": [I(3), [[1, 0, 0], [0, 2, 0], [0, 0, 0]], Z(3), [[0, 0, 0], [0, 0, 0], [0, 0, 5]]]},
    "t2_so3": {"base": ab(2), "fiber": SO3, "xi": [[[0, 0, 0], [0, 0, -1], [0, 1, 0]], Z(3)]},
}

REF_A = {"base": ab(3), "module_dim": 2, "action": [N, Z(2), Z(2)]}
REF_B = {"base": ab(3), "module_dim": 2, "action": [Z(2), Z(2), Z(2)]}

ELEMENTS = {
    # family A: reference Q^2 with X1 acting nilpotently
    "a_h3q_11": {"coupling": h3q_coupling(1, 1), "reference": REF_A, "phi": I(2)},
    "a_h3q_13": {"coupling": h3q_coupling(1, 3), "reference": REF_A, "phi": I(2, 2)},
    "a_abelian": {"coupling": {"base": ab(3), "fiber": ab(2), "xi": [N, Z(2), Z(2)]}, "reference": REF_A, "phi": I(2)},
    # family B: trivial reference Q^2
    "b_l58": {"coupling": l58_coupling(), "reference": REF_B, "phi": I(2)},
    "b_l58_swapped": {"coupling": l58_coupling(2), "reference": REF_B, "phi": [[0, 1], [1, 0]]},
    "b_abelian": {"coupling": {"base": ab(3), "fiber": ab(2), "xi": [Z(2)] * 3}, "reference": REF_B, "phi": I(2)},
}

MODULES = {
    "t3_trivial": {"base": ab(3), "module_dim": 1, "action": [[[0]], [[0]], [[0]]]},
    "t3_nilpotent": REF_A,
    "t3_zero_dim": {"base": ab(3), "module_dim": 0, "action": [[], [], []]},
    "h3_trivial": {"base": H3, "module_dim": 1, "action": [[[0]], [[0]], [[0]]]},
    "t2_not_flat": {"base": ab(2), "module_dim": 2, "action": [N, [[0, 0], [1, 0]]]},
}

ALGEBRAS = {
    "h3": H3,
    "sl2": SL2,
    "so3": SO3,
    "abelian3": ab(3),
    "l58": L58,
    # [x, y] = x + z, [x, z] = y, [y, z] = x breaks Jacobi
    "jacobi_broken": alg(3, [(0, 1, 0, 1), (0, 1, 2, 1), (0, 2, 1, 1), (1, 2, 0, 1)]),
}


def write(sub, name, obj):
    path = HERE / sub / f"{name}.json"
    path.parent.mkdir(exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def main():
    for sub, table in (("couplings", COUPLINGS), ("elements", ELEMENTS), ("modules", MODULES), ("algebras", ALGEBRAS)):
        for name, obj in table.items():
            write(sub, name, obj)
    (HERE / "malformed.json").write_text('{"dim": 3, "brackets": [\n')
    write("algebras", "bad_pair_order", {"dim": 2, "brackets": [{"i": 1, "j": 0, "terms": [{"k": 0, "v": "1"}]}]})
    # xi1 = ad x and xi2 = diag(1, 0, 1) do not commute modulo inner derivations
    write("couplings", "not_homomorphism", {"base": ab(2), "fiber": H3, "xi": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[1, 0, 0], [0, 0, 0], [0, 0, 1]]]})


if __name__ == "__main__":
    main()
