"""Smoke test for the smti extension module. Run after `maturin develop`."""

import smti


def main():
    # one man tying two women who each accept only him
    inst = smti.Instance([[[0, 1]]], [[[0]], [[0]]])
    assert inst.n_men == 1 and inst.n_women == 2
    assert inst.edges == [(0, 0), (0, 1)]

    weak = smti.solve(inst, "weak")
    assert weak == [(0, 0)], weak
    assert smti.verify(inst, weak, "weak") == []
    assert smti.verify(inst, weak, "strong") != []
    assert smti.blocking_edges(inst, weak, "super") == [(0, 1)]
    assert smti.solve(inst, "strong") is None
    assert smti.oracle_exists(inst, "super") is None

    # freeing the tied edge rescues strong stability
    found, calls = smti.solve_free_fpt(inst, "strong", free=[(0, 1)])
    assert found == [(0, 0)] and calls == 1, (found, calls)

    text = inst.to_text(free=[(0, 1)])
    again, restricted = smti.Instance.from_text(text)
    assert again.edges == inst.edges
    assert restricted["free"] == [(0, 1)]

    clauses = [[0, 1, 2]] * 3
    assignment = smti.solve_1in3(3, clauses)
    assert assignment == [True, False, False], assignment
    gadget, free, roles = smti.reduce_sat_to_ssmti_free(3, clauses)
    assert gadget.n_men + gadget.n_women == 36 and len(gadget.edges) == 51
    assert len(free) == 9 and gadget.max_degree() == 4
    assert dict(roles)["w1"] == "y1.1"
    witness = smti.solve(gadget, "super", free=free)
    assert witness is not None
    assert smti.verify(gadget, witness, "strong", free=free) == []

    src = smti.gen_random_smti(3, 3, 0.7, 0.3, 5)
    assert smti.gen_random_smti(3, 3, 0.7, 0.3, 5).edges == src.edges
    reduced, forbidden = smti.reduce_perfect_to_forbidden1(src)
    assert reduced.is_complete() and forbidden == (4, 4)
    dense = smti.reduce_forbidden1_to_dense(reduced, forbidden)
    assert len(dense.edges) == 24
    assert (smti.oracle_perfect_weak(src) is None) == (
        smti.oracle_exists(reduced, "weak", forbidden=[forbidden]) is None
    )

    complete, all_free = smti.complete_with_free(smti.Instance([[[0]], []], [[[0]], []]))
    assert complete.is_complete() and len(all_free) == 3
    assert len(smti.stable_cardinalities(src, "strong")) <= 1
    assert len(smti.gen_random_1in3(6, 2)) == 6

    print("smoke test passed")


if __name__ == "__main__":
    main()
