import json
from collections import Counter

import numpy as np
import pytest

from ringreps.chartab import dixon_table
from ringreps.clifford import (analyze_group, compare_rings, extension_character,
                               extension_exists, report_to_json,
                               rings_for_comparison, verify_counting,
                               verify_dim_formula)
from ringreps.liedual import character_stabilizer_ids, psi_exponent_table
from ringreps.rings import parse_ring
from ringreps.schemes import parse_scheme


@pytest.fixture(scope="module")
def gl2_dual_numbers():
    return analyze_group(parse_scheme("gl(2)"), parse_ring("truncpoly(gf(2),r=2)"))


def test_clifford_equals_oracle(gl2_dual_numbers):
    an = gl2_dual_numbers
    assert an.clifford_multiset == an.oracle_multiset
    assert sum(c * d * d for d, c in an.oracle_multiset.items()) == an.group.order


def test_zero_orbit_contributes_residue_degrees(gl2_dual_numbers):
    an = gl2_dual_numbers
    zero = next(r for r in an.per_orbit if not any(r.beta))
    res_table = dixon_table(an.group.residue_group)
    assert zero.index == 1
    assert zero.small_degrees == res_table.degree_multiset()
    assert Counter(zero.fiber_degrees) == res_table.degree_multiset()


def test_total_count_equals_num_classes(gl2_dual_numbers):
    an = gl2_dual_numbers
    assert sum(r.n2 for r in an.per_orbit) == an.table.classes.num_classes
    assert sum(r.n1 for r in an.per_orbit) == an.table.num_chars


def test_counting_records(gl2_dual_numbers):
    recs = verify_counting(gl2_dual_numbers)
    assert all(r["n1_eq_n2"] for r in recs)
    # n1 = n3 exactly when the small centralizer is abelian
    for rec, orbit in zip(recs, gl2_dual_numbers.per_orbit):
        abelian = orbit.n2 == orbit.n3
        assert rec["n1_eq_n3"] == abelian


def test_dim_formula(gl2_dual_numbers):
    assert verify_dim_formula(gl2_dual_numbers)
    for rec in gl2_dual_numbers.per_orbit:
        assert rec.extension_exists
        assert all(d % rec.index == 0 for d in rec.fiber_degrees)


def test_extension_witness(gl2_dual_numbers):
    an = gl2_dual_numbers
    G, dual = an.group, an.dual
    for rec in an.per_orbit:
        vals = np.array(rec.beta, dtype=np.int64)
        S = character_stabilizer_ids(G, dual, vals)
        psi = psi_exponent_table(dual, G.kernel, vals)
        assert extension_exists(G, S, psi)
        exps, E = extension_character(G, S, psi)
        pos = {int(s): i for i, s in enumerate(S)}
        rng = np.random.default_rng(0)
        for _ in range(100):
            a = int(S[rng.integers(len(S))])
            b = int(S[rng.integers(len(S))])
            c = int(G.mul(a, b)[0])
            assert (exps[pos[a]] + exps[pos[b]] - exps[pos[c]]) % max(E, 1) == 0
        if E > 1:
            keys = G.kernel.key_of[S]
            ker = keys >= 0
            scale = E // dual.field.p
            assert np.array_equal(exps[ker] % E, psi[keys[ker]] * scale % E)


def test_compare_report_schema_and_verdicts():
    report = compare_rings(parse_scheme("gl(2)"), 2, seed=7)
    assert report["scheme"] == "gl(2)" and report["q"] == 2
    assert len(report["rings"]) == 2
    for sec in report["rings"]:
        assert set(sec) >= {"ring_descriptor", "order", "num_classes",
                            "degree_multiset", "orbit_table"}
        for row in sec["orbit_table"]:
            assert set(row) >= {"beta", "orbit_size", "stab_order", "index",
                                "extension_exists", "fiber_degrees"}
    assert set(report["verdicts"]) == {"global_equal", "per_orbit_equal",
                                       "clifford_matches_oracle", "exploratory"}
    assert report["verdicts"]["global_equal"]
    assert report["verdicts"]["per_orbit_equal"]
    assert report["verdicts"]["clifford_matches_oracle"]
    assert not report["verdicts"]["exploratory"]
    assert report["seed"] == 7
    json.loads(report_to_json(report))  # serializable


def test_exploratory_flag_sl2_even_q():
    report = compare_rings(parse_scheme("sl(2)"), 2)
    assert report["verdicts"]["exploratory"]
    rep3 = compare_rings(parse_scheme("sl(2)"), 3)
    assert not rep3["verdicts"]["exploratory"]


def test_rings_for_comparison():
    eq, mx = rings_for_comparison(3)
    assert eq.descriptor() == "truncpoly(gf(3),r=2)"
    assert mx.descriptor() == "zmod(3^2)"
    eq4, mx4 = rings_for_comparison(4)
    assert eq4.descriptor().startswith("truncpoly(gf(4")
    assert mx4.descriptor().startswith("witt2(gf(4")


def test_mixed_char_analysis_matches_equal_char(gl2_dual_numbers):
    mx = analyze_group(parse_scheme("gl(2)"), parse_ring("zmod(2^2)"))
    assert mx.oracle_multiset == gl2_dual_numbers.oracle_multiset
    assert mx.clifford_multiset == mx.oracle_multiset
