"""Smoke tests for the _lovx module: a few end-to-end paths per surface."""

import math
import os
import sys

import _lovx as lovx


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol * (1 + abs(a) + abs(b)), f"{a} != {b}"


def main():
    data = os.environ.get("LOVX_DATA", os.path.join(os.path.dirname(__file__), "../../data"))

    # Graphs and readers.
    k3 = lovx.complete_graph(3)
    assert k3.n == 3 and k3.m == 3
    p3 = lovx.read_graph(os.path.join(data, "p3.el"))
    assert p3.n == 3 and p3.m == 2

    # Extensions of the triangle cut function.
    cut = lovx.cut_function(k3)
    v = lovx.eval_original(cut, [3.0, 1.0, 2.0])
    approx(v.value, 4.0)
    approx(sum(s * x for s, x in zip(v.subgradient, [3.0, 1.0, 2.0])), 4.0)
    approx(lovx.eval_original_integral(cut, [3.0, 1.0, 2.0]), 4.0)
    approx(lovx.eval_original_mobius(cut, [3.0, 1.0, 2.0]), 4.0)
    approx(lovx.eval_original(cut, [1.0, 0.0, 0.0]).value, 2.0)

    # Submodularity checks and decomposition.
    ok, _, _ = lovx.is_submodular(cut)
    assert ok
    f1, f2 = lovx.decompose_difference_submodular(cut)
    for a in range(8):
        approx(f1.eval_subset(a) - f2.eval_subset(a), cut.eval_subset(a))

    # Oracles and instances.
    mc = lovx.instance("maxcut", k3)
    optimum, witnesses = lovx.oracle_optimum(mc)
    approx(optimum, 2.0)
    assert witnesses
    approx(lovx.exact_mincut(p3), 1.0)
    approx(lovx.exact_independence_number(lovx.cycle_graph(5)), 2.0)
    approx(lovx.exact_chromatic_number(k3), 3.0)

    # IP-SD solve with certification.
    trace = lovx.ipsd_solve(mc, [1.0, -1.0, -1.0], verify_eigen=True)
    approx(trace.final_ratio, 2.0)
    assert trace.extracted is not None
    approx(trace.extracted[1], 2.0)
    assert trace.certificate["accepted"]
    assert trace.certificate["residual"] <= 1e-6

    # Dinkelbach with the exact inner oracle.
    ch = lovx.instance("cheeger", p3)
    tr = lovx.dinkelbach_solve(ch, [1.0, 0.0, 0.0])
    opt, _ = lovx.oracle_optimum(ch)
    approx(tr.final_ratio, opt)

    # Eigenvalue enumeration of the cut pair.
    mincut, maxcut, eigenvalues = lovx.minmaxcut_via_eigen(p3)
    approx(mincut, 1.0)
    approx(maxcut, 2.0)
    assert [round(e) for e in eigenvalues] == [0, 1, 2]

    # Frustration of the all-negative triangle.
    neg_k3 = lovx.read_graph(os.path.join(data, "neg_k3.el"))
    approx(lovx.exact_frustration_index(neg_k3), 1.0)
    _, frustrated, _ = lovx.frustration_recursive(neg_k3, seed=7)
    approx(frustrated, 1.0)

    # Errors surface as typed exceptions.
    try:
        lovx.eval_original(cut, [1.0, 2.0])
        raise AssertionError("expected DomainError")
    except lovx.DomainError:
        pass

    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
