"""The generic BFS word-norm engine and its audits."""

import json

import pytest

from conecheck.perms import Permutation, tr_norm
from conecheck.wordnorm import (
    NormTable,
    NotGeneratingError,
    alternating_oracle,
    audit_domination,
    bfs_norm,
    conjugacy_closure,
    cyclic_oracle,
    load_carrier,
    symmetric_oracle,
    three_cycle_generators,
    transposition_generators,
)


def test_s3_with_transpositions():
    oracle = symmetric_oracle(3)
    table = bfs_norm(oracle, transposition_generators(3))
    assert sorted(table.norms()) == [0, 1, 1, 1, 2, 2]


def test_cyclic_five():
    table = bfs_norm(cyclic_oracle(5), {1})
    assert [table[k] for k in range(5)] == [0, 1, 2, 2, 1]


def test_whole_group_as_generators():
    oracle = symmetric_oracle(3)
    gens = [g for g in oracle.elements if g != oracle.identity]
    table = bfs_norm(oracle, gens)
    assert max(table.norms()) == 1


def test_not_generating():
    with pytest.raises(NotGeneratingError) as err:
        bfs_norm(symmetric_oracle(4), three_cycle_generators(4))
    assert err.value.unreached == 12  # the odd half of S_4


def test_inverse_closure_is_automatic():
    # a bare +1 generates Z/5 once the engine adds -1
    table = bfs_norm(cyclic_oracle(5), {1})
    assert table[4] == 1


def test_conjugacy_closure_transpositions():
    oracle = symmetric_oracle(4)
    closure = conjugacy_closure(oracle, {Permutation.parse("(1 2)").to_images(4)})
    assert len(closure) == 6
    assert all(Permutation.from_images(t).cycle_type() == (2,) for t in closure)


def test_conjugacy_closure_identity():
    oracle = symmetric_oracle(3)
    assert conjugacy_closure(oracle, {oracle.identity}) == frozenset({oracle.identity})


def test_conjugacy_closure_three_cycles_in_a5():
    oracle = alternating_oracle(5)
    closure = conjugacy_closure(oracle, {Permutation.parse("(1 2 3)").to_images(5)})
    assert len(closure) == 20


def test_norm_table_axioms_and_invariance():
    oracle = symmetric_oracle(4)
    table = bfs_norm(oracle, transposition_generators(4))
    table.check_axioms()
    table.check_conjugation_invariance()


def test_oracle_equivalence_with_tr_norm():
    for degree in (3, 4, 5):
        oracle = symmetric_oracle(degree)
        table = bfs_norm(oracle, transposition_generators(degree))
        for t in oracle.elements:
            assert table[t] == tr_norm(Permutation.from_images(t))


def test_audit_domination_self():
    oracle = cyclic_oracle(7)
    table = bfs_norm(oracle, {1})
    constant, witness = audit_domination(table, table)
    assert constant == 1


def test_audit_domination_supp_vs_tr():
    oracle = symmetric_oracle(5)
    tr_table = bfs_norm(oracle, transposition_generators(5))
    supp_table = NormTable(
        oracle,
        {t: len([i for i, q in enumerate(t) if q != i]) for t in oracle.elements},
        frozenset(),
    )
    constant, witness = audit_domination(tr_table, supp_table)
    assert constant == 2  # attained by any transposition
    assert Permutation.from_images(witness).cycle_type() == (2,)


def test_audit_domination_three_cycle_constants():
    oracle = alternating_oracle(5)
    tr_table = NormTable(
        oracle, {t: tr_norm(Permutation.from_images(t)) for t in oracle.elements}, frozenset())
    n3_table = bfs_norm(oracle, three_cycle_generators(5))
    tr_versus, _ = audit_domination(n3_table, tr_table)
    n3_versus, _ = audit_domination(tr_table, n3_table)
    assert tr_versus <= 2
    assert float(n3_versus) <= 1.5


def test_exports(tmp_path):
    table = bfs_norm(cyclic_oracle(4), {1})
    csv_path = tmp_path / "norms.csv"
    table.to_csv(csv_path)
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "element,norm"
    assert len(lines) == 5
    payload = json.loads(table.to_json())
    assert payload["order"] == 4
    assert payload["norms"]["2"] == 2


def test_load_carrier_file(tmp_path):
    import json as _json

    from conecheck.wordnorm import load_carrier_file

    path = tmp_path / "carrier.json"
    path.write_text(_json.dumps({"family": "alternating", "degree": 4}))
    assert load_carrier_file(path).order() == 12


def test_load_carrier():
    s4 = load_carrier({"family": "symmetric", "degree": 4})
    assert s4.order() == 24
    prod = load_carrier({
        "family": "product",
        "factors": [{"family": "cyclic", "degree": 2}, {"family": "cyclic", "degree": 3}],
    })
    assert prod.order() == 6
    prod.check_axioms()
    with pytest.raises(ValueError):
        load_carrier({"family": "nonsense", "degree": 3})


def test_group_axiom_spot_check():
    alternating_oracle(4).check_axioms(triples=200)
