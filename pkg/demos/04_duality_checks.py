"""Randomized verification of the duality structure, with reports.

Each suite draws seeded instances, computes both sides of a duality
statement through independent code paths, and reports disagreements.
Reports are byte-deterministic in (theorem, dims, trials, seed, tol).
"""

from mapcones import Dims, emit_report, verify

print("== Identity suites (hold to machine precision) ==")
for tid in ("L4", "L8", "L10"):
    r = verify(tid, Dims(3, 3), trials=25, seed=11)
    print(f"{tid}: {'PASS' if r.passed else 'FAIL'}  ({r.checks} checks, {r.undecided} undecided, {r.elapsed:.2f}s)")

print("\n== Cone equality suites ==")
for tid, dims, trials in (("L15", (3, 3), 30), ("L16", (3, 3), 12), ("L17", (3, 3), 12)):
    r = verify(tid, Dims(*dims), trials=trials, seed=12)
    print(f"{tid}: {'PASS' if r.passed else 'FAIL'}  ({r.checks} checks, {r.undecided} undecided, {r.elapsed:.2f}s)")

print("\n== Duality theorems ==")
for tid, dims, trials in (
    ("T1", (3, 3), 20),
    ("T6", (3, 3), 24),
    ("T12", (3, 3), 12),
    ("T13", (3, 3), 40),
    ("T18", (3, 3), 12),
    ("C2", (2, 2), 20),
    ("C19", (3, 3), 9),
):
    r = verify(tid, Dims(*dims), trials=trials, seed=13)
    print(f"{tid}: {'PASS' if r.passed else 'FAIL'}  ({r.checks} checks, {r.undecided} undecided, {r.elapsed:.2f}s)")

print("\n== A full report, serialized ==")
print(emit_report(verify("T13", Dims(3, 3), trials=10, seed=3), "markdown"))
