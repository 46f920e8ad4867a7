"""Brute-force recomputation of the printed su(3) bracket tables.

Prints the sorted list of mismatched cells as JSON, or compares it against a
frozen file when one is given. Cells are read as op(row, column); the
anticommutator tables use -i{X, Y}.
"""
import json
import sys

import numpy as np

i = 1j
E = {
    "sigma_x": np.array([[0, i, 0], [i, 0, i], [0, i, 0]]),
    "sigma_y": np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], dtype=complex),
    "sigma_z": np.diag([-i, 0, i]),
    "R": np.array([[0, 0, i], [0, 0, 0], [i, 0, 0]]),
    "Q": np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=complex),
    "T": np.diag([i, -2 * i, i]),
    "V": np.array([[0, 1, 0], [-1, 0, -1], [0, 1, 0]], dtype=complex),
    "U": np.array([[0, i, 0], [i, 0, -i], [0, -i, 0]]),
    "i1": i * np.eye(3),
}

COM = "commutator"
ACOM = "anticommutator"
TABLES = [
    ("commutator-SS", COM, [
        ("sigma_x", "sigma_y", {"sigma_z": 2}), ("sigma_y", "sigma_z", {"sigma_x": 1}),
        ("sigma_z", "sigma_x", {"sigma_y": 1}), ("sigma_x", "sigma_x", {}),
        ("sigma_y", "sigma_y", {}), ("sigma_z", "sigma_z", {})]),
    ("commutator-Sperp-Sperp", COM, [
        ("Q", "R", {"sigma_z": -2}), ("T", "R", {}), ("T", "Q", {}),
        ("V", "R", {"sigma_x": 1}), ("V", "Q", {"sigma_y": 1}), ("V", "T", {"sigma_x": 3}),
        ("U", "R", {"sigma_y": 1}), ("U", "Q", {"sigma_x": -1}), ("U", "T", {"sigma_y": -3}),
        ("U", "V", {"sigma_z": 2})]),
    ("commutator-Sperp-S", COM, [
        ("sigma_x", "R", {"V": -1}), ("sigma_x", "Q", {"U": 1}), ("sigma_x", "T", {"V": -3}),
        ("sigma_x", "V", {"T": 2, "R": 2}), ("sigma_x", "U", {"Q": -2}),
        ("sigma_y", "R", {"U": -1}), ("sigma_y", "Q", {"V": -1}), ("sigma_y", "T", {"U": 3}),
        ("sigma_y", "V", {"Q": 2}), ("sigma_y", "U", {"T": -2, "R": 2}),
        ("sigma_z", "R", {"Q": 2}), ("sigma_z", "Q", {"R": -2}), ("sigma_z", "T", {}),
        ("sigma_z", "V", {"U": -1}), ("sigma_z", "U", {"V": 1})]),
    ("anticommutator-Sperp-Sperp", ACOM, [
        ("R", "R", {"i1": 4 / 3, "T": 2 / 3}), ("Q", "R", {}), ("Q", "Q", {"i1": 4 / 3, "T": 2 / 3}),
        ("T", "R", {"R": 2}), ("T", "Q", {"Q": 2}), ("T", "T", {"i1": 4, "T": -2}),
        ("V", "R", {"V": 1}), ("V", "Q", {"U": -1}), ("V", "T", {"V": -1}),
        ("V", "V", {"i1": 8 / 3, "T": -2 / 3, "R": 2}),
        ("U", "R", {"U": -1}), ("U", "Q", {"V": -1}), ("U", "T", {"U": -1}), ("U", "V", {"Q": -2}),
        ("U", "U", {"i1": 8 / 3, "T": -2 / 3, "R": -2})]),
    ("anticommutator-S-Sperp", ACOM, [
        ("sigma_x", "R", {"sigma_x": 1}), ("sigma_x", "Q", {"sigma_y": 1}),
        ("sigma_x", "T", {"sigma_x": -1}), ("sigma_x", "V", {}), ("sigma_x", "U", {"sigma_z": 2}),
        ("sigma_y", "R", {"sigma_y": -1}), ("sigma_y", "Q", {"sigma_x": 1}),
        ("sigma_y", "T", {"sigma_y": -1}), ("sigma_y", "V", {"sigma_z": 2}), ("sigma_y", "U", {}),
        ("sigma_z", "R", {}), ("sigma_z", "Q", {}), ("sigma_z", "T", {"sigma_z": 2}),
        ("sigma_z", "V", {"sigma_y": 1}), ("sigma_z", "U", {"sigma_x": 1})]),
    ("anticommutator-SS", ACOM, [
        ("sigma_x", "sigma_x", {"i1": 8 / 3, "T": -2 / 3, "R": 2}), ("sigma_y", "sigma_x", {"Q": 2}),
        ("sigma_y", "sigma_y", {"i1": 8 / 3, "T": -2 / 3, "R": -2}), ("sigma_z", "sigma_x", {"U": 1}),
        ("sigma_z", "sigma_y", {"V": 1}), ("sigma_z", "sigma_z", {"i1": 4 / 3, "T": 2 / 3})]),
]


def bracket(kind, x, y):
    return x @ y - y @ x if kind == COM else -i * (x @ y + y @ x)


def mismatches(basis):
    out = []
    for table, kind, cells in TABLES:
        for lhs, rhs, expected in cells:
            value = bracket(kind, basis[lhs], basis[rhs])
            target = sum((c * basis[k] for k, c in expected.items()), np.zeros((3, 3), complex))
            if np.linalg.norm(value - target) > 1e-12:
                out.append([table, lhs, rhs])
    return sorted(out)


def main():
    printed = mismatches(E)
    flipped = dict(E, V=-E["V"], U=-E["U"])
    report = {"mismatches": printed, "mismatches_with_uv_negated": mismatches(flipped)}
    if len(sys.argv) > 1:
        with open(sys.argv[1]) as f:
            frozen = json.load(f)
        if frozen != report:
            print("oracle disagrees with frozen file", file=sys.stderr)
            print(json.dumps(report, indent=1))
            return 1
        print(f"{len(printed)} mismatches, {len(report['mismatches_with_uv_negated'])} with V, U negated: matches frozen file")
        return 0
    print(json.dumps(report, indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
