#!/usr/bin/env python3
"""Smoke test for the sgforge Python extension.

Builds the extension with cargo if needed, imports it, and exercises the
main types and operations. Exits nonzero on the first failure.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def ensure_module():
    lib = REPO / "target" / "release" / "libsgforge.so"
    if not lib.exists():
        subprocess.run(
            ["cargo", "build", "--release", "-p", "sgforge-py"],
            cwd=REPO,
            check=True,
        )
    stage = Path(tempfile.mkdtemp(prefix="sgforge-py-"))
    shutil.copy2(lib, stage / "sgforge.so")
    sys.path.insert(0, str(stage))


ensure_module()

import sgforge  # noqa: E402


def check(label, cond):
    status = "ok" if cond else "FAIL"
    print(f"  {label}: {status}")
    if not cond:
        sys.exit(1)


print("construction and structure")
b2 = sgforge.named("B2")
check("B2 has order 5", b2.order == 5)
check("aba = a in B2", b2.mul(b2.mul(1, 4), 1) == 1)
check("tables round-trip", sgforge.Semigroup(b2.table).is_isomorphic(b2))
check("B2 kernel is the zero", b2.minimal_ideal() == [0])
check("B2 has three L-classes", len(b2.green_classes("L")) == 3)
bad = None
try:
    sgforge.Semigroup([[1, 0], [0, 0]])
except ValueError as e:
    bad = str(e)
check("non-associative table rejected", bad is not None and "associative" in bad)

print("identities and pseudoidentities")
report = sgforge.check(b2, "((xy)^w (yx)^w (xy)^w)^w = (xy)^w")
check("B2 violates its exclusion pseudoidentity", not report["satisfied"])
check("witness is present", report["witness"]["lhs_value"] != report["witness"]["rhs_value"])
b0 = sgforge.named("B0")
check("B0 satisfies it", sgforge.check(b0, "((xy)^w (yx)^w (xy)^w)^w = (xy)^w")["satisfied"])
check("Z2 satisfies x^2 y = y", sgforge.check(sgforge.named("Z2"), "x^2 y = y")["satisfied"])
check(
    "term normalization",
    sgforge.normalize_term("((xy)^w)^2") == "((x y)^w)^2",
)
st = sgforge.stats("xyxzy")
check("word stats", st["ini"] == "x y z" and st["fin"] == "x z y" and st["occ"]["x"] == 2)

print("operators")
z2bar = sgforge.named("Z2").augment("bar")
check("bar(Z2) is the reference table", z2bar.is_isomorphic(sgforge.named("Z2bar")))
check("bar(l3) is elB", sgforge.named("l3").augment("bar").is_isomorphic(sgforge.named("elB")))
check("rlm keeps Z2bar intact", z2bar.rlm().is_isomorphic(z2bar))
chain = sgforge.hierarchy(sgforge.named("Sl2"), "bar,flat", 2)
check("hierarchy sizes", [s.order for s in chain] == [2, 3, 6])
check(
    "hierarchy level separated from seed",
    sgforge.separate(chain[0], chain[1]) is not None,
)

print("division and sdi")
check("N2 divides A0", sgforge.divides(sgforge.named("N2"), sgforge.named("A0"))["result"] == "yes")
check("Z3 does not divide Z2", sgforge.divides(sgforge.named("Z3"), sgforge.named("Z2"))["result"] == "no")
rees = sgforge.rees_matrix_zero(sgforge.named("Z2"), 2, 2, [[0, None], [None, 0]])
check("M0(Z2;2,2;I) is sdi", rees.is_sdi())
check("Z6 is not sdi", not sgforge.named("Z6").is_sdi())

print("enumeration and classification")
e3 = sgforge.enumerate_order(3)
check("18 classes at order 3", e3["up_to_equivalence"] == 18)
check("113 labeled tables at order 3", e3["labeled"] == 113)
rec = sgforge.classify_semigroup(b2)
check("B2 classifies as ji(B2)", rec["verdict"] == "ji" and rec["target"] == "B2")
rec = sgforge.classify_semigroup(sgforge.named("W"))
check("W classifies as non-ji", rec["verdict"] == "non_ji")
summary = sgforge.classify_orders(3)
check(
    "order-3 classification counts",
    [(c["ji"], c["non_ji"]) for c in summary["orders"]] == [(4, 0), (8, 10)],
)

print("catalog")
checks = sgforge.verify_catalog()
check("all catalog records verify", all(c["passed"] for c in checks))

print("smoke test passed")
