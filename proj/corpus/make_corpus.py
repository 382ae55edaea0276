# Copyright 2026 The polysched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the Mini-SCoP kernel corpus from compact loop-nest descriptions.

Each statement lists its full loop stack as (iterator, lower, upper) with
inclusive affine bounds, its accesses as "W a[i][j]" / "R b[j]", and its
k+1 textual positions used to build the 2k+1 initial schedule.

    python3 make_corpus.py [output_dir]
"""

import json
import os
import re
import sys

TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?([A-Za-z_]\w*)?\s*")


def affine(text, names):
    """Parses 'a*x + b - 2' into a row over names plus a constant."""
    row = [0] * (len(names) + 1)
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    while pos < len(text):
        m = TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse %r at %d" % (text, pos))
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            row[names.index(m.group(3))] += sign * coef
        elif m.group(2):
            row[-1] += sign * coef
        else:
            raise ValueError("dangling sign in %r" % text)
        pos = m.end()
    return row


def statement(name, loops, accesses, positions, params):
    iters = [l[0] for l in loops]
    names = iters + params
    domain = []
    for it, lo, hi in loops:
        var = affine(it, names)
        lo_row = [a - b for a, b in zip(var, affine(lo, names))]
        hi_row = [b - a for a, b in zip(var, affine(hi, names))]
        domain.append({"rel": ">=", "row": lo_row})
        domain.append({"rel": ">=", "row": hi_row})
    accs = []
    for text in accesses:
        kind, ref = text.split(None, 1)
        array = ref.split("[", 1)[0].strip()
        subs = re.findall(r"\[([^\]]*)\]", ref)
        accs.append({
            "array": array,
            "kind": "write" if kind == "W" else "read",
            "subscripts": [affine(s, names) for s in subs],
        })
    if len(positions) != len(iters) + 1:
        raise ValueError("%s: need %d positions" % (name, len(iters) + 1))
    sched = []
    width = len(names) + 1
    for k, p in enumerate(positions):
        row = [0] * width
        row[-1] = p
        sched.append(row)
        if k < len(iters):
            row = [0] * width
            row[k] = 1
            sched.append(row)
    return {
        "name": name,
        "iterators": iters,
        "domain": domain,
        "accesses": accs,
        "initial_schedule": sched,
    }


def scop(params, stmts, context=None):
    return {
        "parameters": params,
        "context": context or [],
        "statements": [statement(*s, params=params) for s in stmts],
    }


KERNELS = {
    "fig1": scop([], [
        ("S0", [("i", "0", "99"), ("j", "0", "9")], ["W c[j][i]", "R a[j][i]", "R b"], [0, 0, 0]),
        ("S1", [("i", "0", "99"), ("j", "0", "9")], ["W d[i][j]", "R e[i][j]", "R x"], [0, 0, 1]),
    ]),
    "chain1d": scop(["N"], [
        ("S0", [("i", "0", "N-1")], ["W a[i]", "R a[i-1]"], [0, 0]),
    ]),
    "trsml": scop(["N", "M"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "i-1"), ("k", "0", "M-1")],
         ["W x[i][k]", "R x[i][k]", "R L[i][j]", "R x[j][k]"], [0, 0, 0, 0]),
    ]),
    "jacobi1d": scop(["T", "N"], [
        ("S0", [("t", "0", "T-1"), ("i", "1", "N-2")], ["W B[i]", "R A[i-1]", "R A[i]", "R A[i+1]"], [0, 0, 0]),
        ("S1", [("t", "0", "T-1"), ("i", "1", "N-2")], ["W A[i]", "R B[i]"], [0, 1, 0]),
    ]),
    "heat1d": scop(["T", "N"], [
        ("S0", [("t", "0", "T-1"), ("i", "1", "N-2")],
         ["W A[t+1][i]", "R A[t][i-1]", "R A[t][i]", "R A[t][i+1]"], [0, 0, 0]),
    ]),
    "matmul": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1"), ("k", "0", "N-1")],
         ["W C[i][j]", "R C[i][j]", "R A[i][k]", "R B[k][j]"], [0, 0, 0, 0]),
    ]),
    "matmul_init": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W C[i][j]"], [0, 0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1"), ("k", "0", "N-1")],
         ["W C[i][j]", "R C[i][j]", "R A[i][k]", "R B[k][j]"], [0, 0, 1, 0]),
    ]),
    "mvt": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W x1[i]", "R x1[i]", "R A[i][j]", "R y1[j]"], [0, 0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W x2[i]", "R x2[i]", "R A[j][i]", "R y2[j]"], [1, 0, 0]),
    ]),
    "seidel2d_sweep": scop(["N"], [
        ("S0", [("i", "1", "N-2"), ("j", "1", "N-2")],
         ["W A[i][j]", "R A[i-1][j]", "R A[i][j-1]", "R A[i+1][j]", "R A[i][j+1]"], [0, 0, 0]),
    ]),
    "transpose": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W B[j][i]", "R A[i][j]"], [0, 0, 0]),
    ]),
    "two_mm": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1"), ("k", "0", "N-1")],
         ["W T[i][j]", "R T[i][j]", "R A[i][k]", "R B[k][j]"], [0, 0, 0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1"), ("k", "0", "N-1")],
         ["W D[i][j]", "R D[i][j]", "R T[i][k]", "R C[k][j]"], [1, 0, 0, 0]),
    ]),
    "atax": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W t[i]", "R t[i]", "R A[i][j]", "R x[j]"], [0, 0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W y[j]", "R y[j]", "R A[i][j]", "R t[i]"], [0, 0, 1]),
    ]),
    "bicg": scop(["N"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W s[j]", "R s[j]", "R r[i]", "R A[i][j]"], [0, 0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W q[i]", "R q[i]", "R A[i][j]", "R p[j]"], [0, 0, 1]),
    ]),
    "prefix_sum": scop(["N"], [
        ("S0", [("i", "1", "N-1")], ["W s[i]", "R s[i-1]", "R a[i]"], [0, 0]),
    ]),
    "fdtd1d": scop(["T", "N"], [
        ("S0", [("t", "0", "T-1"), ("i", "1", "N-1")], ["W ey[i]", "R ey[i]", "R hz[i]", "R hz[i-1]"], [0, 0, 0]),
        ("S1", [("t", "0", "T-1"), ("i", "0", "N-2")], ["W hz[i]", "R hz[i]", "R ey[i+1]", "R ey[i]"], [0, 1, 0]),
    ]),
    "lu": scop(["N"], [
        ("S0", [("k", "0", "N-1"), ("i", "k+1", "N-1")], ["W A[i][k]", "R A[i][k]", "R A[k][k]"], [0, 0, 0]),
        ("S1", [("k", "0", "N-1"), ("i", "k+1", "N-1"), ("j", "k+1", "N-1")],
         ["W A[i][j]", "R A[i][j]", "R A[i][k]", "R A[k][j]"], [0, 1, 0, 0]),
    ]),
    "axpy": scop(["N"], [
        ("S0", [("i", "0", "N-1")], ["W y[i]", "R y[i]", "R x[i]", "R a"], [0, 0]),
    ]),
    "syrk": scop(["N", "M"], [
        ("S0", [("i", "0", "N-1"), ("j", "0", "i"), ("k", "0", "M-1")],
         ["W C[i][j]", "R C[i][j]", "R A[i][k]", "R A[j][k]"], [0, 0, 0, 0]),
    ]),
    "shift_left": scop(["N"], [
        ("S0", [("i", "0", "N-2")], ["W a[i]", "R a[i+1]"], [0, 0]),
    ]),
    "diag_stencil": scop(["N"], [
        ("S0", [("i", "1", "N-1"), ("j", "0", "N-2")], ["W a[i][j]", "R a[i-1][j+1]"], [0, 0, 0]),
    ]),
    "conv1d": scop(["N", "K"], [
        ("S0", [("i", "0", "N-1"), ("k", "0", "K-1")], ["W out[i]", "R out[i]", "R in[i+k]", "R w[k]"], [0, 0, 0]),
    ]),
    "producer_consumer": scop(["N"], [
        ("S0", [("i", "0", "N-1")], ["W B[i]", "R A[i]"], [0, 0]),
        ("S1", [("i", "1", "N-1")], ["W C[i]", "R B[i]", "R B[i-1]"], [1, 0]),
        ("S2", [("i", "1", "N-1")], ["W D[i]", "R C[i]"], [2, 0]),
    ]),
    "mixed_depth": scop(["N"], [
        ("S0", [("i", "0", "N-1")], ["W s[i]"], [0, 0]),
        ("S1", [("i", "0", "N-1"), ("j", "0", "N-1")], ["W s[i]", "R s[i]", "R A[i][j]"], [1, 0, 0]),
    ]),
    "jacobi2d": scop(["T", "N"], [
        ("S0", [("t", "0", "T-1"), ("i", "1", "N-2"), ("j", "1", "N-2")],
         ["W B[i][j]", "R A[i][j]", "R A[i-1][j]", "R A[i+1][j]", "R A[i][j-1]", "R A[i][j+1]"], [0, 0, 0, 0]),
        ("S1", [("t", "0", "T-1"), ("i", "1", "N-2"), ("j", "1", "N-2")], ["W A[i][j]", "R B[i][j]"], [0, 1, 0, 0]),
    ]),
}


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    for name, doc in sorted(KERNELS.items()):
        with open(os.path.join(out, name + ".scop.json"), "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
    print("wrote %d kernels" % len(KERNELS))


if __name__ == "__main__":
    main()
