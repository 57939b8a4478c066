"""Orbit-method counting for length-two groups and the two-ring comparison.

For each coadjoint orbit representative beta the engine computes the
stabilizer S of psi_beta in G(R) (brute force, checked against the
closed-form preimage), the small group C = rho(S) inside G(F_q), the
extension test for psi_beta on S, and the predicted fiber degrees
{ [G(F_q):C] * d : d in degrees(C) }.  The oracle side is the Dixon table
of the full group together with restriction multiplicities to the kernel.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .chartab import (ModularCharacterTable, dixon_table,
                      restriction_multiplicities)
from .groups import (MatrixGroup, SubgroupView, derived_subgroup_ids,
                     enumerate_points, find_generators)
from .liedual import (DualSpace, character_stabilizer_ids,
                      predicted_stabilizer_ids, psi_exponent_table)
from .rings import TruncatedPolyRing, Witt2Ring, ZmodRing, parse_field, parse_ring
from .schemes import GroupScheme, parse_scheme


class InvariantViolation(RuntimeError):
    pass


@dataclass
class OrbitAnalysis:
    beta: list                 # value vector of the canonical representative
    orbit_size: int
    stab_order: int            # |C_{G(F_q)}(f)|
    index: int                 # e = [G(F_q) : C]
    extension_exists: bool
    small_degrees: Counter     # degrees of the small group C
    predicted: Counter         # { e*d } with counts
    fiber_degrees: list        # sorted oracle degrees above psi_beta (each chi once)
    n1: int                    # #{chi : <chi|_N, psi_beta> > 0}
    n2: int                    # #Irr(C)
    n3: int                    # |C|
    dim_formula_holds: bool = field(default=False)
    clifford_bound_holds: bool = field(default=False)


@dataclass
class GroupAnalysis:
    group: MatrixGroup
    table: ModularCharacterTable
    dual: DualSpace
    orbits: object
    per_orbit: list
    clifford_multiset: Counter
    timings_ms: dict

    @property
    def oracle_multiset(self) -> Counter:
        return self.table.degree_multiset()


def is_mixed_char(ring) -> bool:
    return isinstance(ring, (ZmodRing, Witt2Ring))


def extension_exists(group: MatrixGroup, stab_ids, psi_exps) -> bool:
    """True iff psi_beta is trivial on [S, S] intersected with the kernel."""
    kernel = group.kernel
    keys = kernel.key_of[stab_ids]
    if not psi_exps[keys[keys >= 0]].any():
        return True  # psi trivial on S cap N, e.g. beta = 0
    D = derived_subgroup_ids(group, stab_ids)
    dk = kernel.key_of[D]
    return not psi_exps[dk[dk >= 0]].any()


def extension_character(group: MatrixGroup, stab_ids, psi_exps):
    """An explicit linear extension of psi_beta to the stabilizer S.

    Returns (exponents, E): for each element of `stab_ids` the exponent of
    a fixed primitive E-th root of unity, where E is the exponent of the
    abelianization S/[S,S]; the restriction to the kernel equals
    (E/p) * psi_beta.  Raises if no extension exists.
    """
    kernel = group.kernel
    p = group.ring.field.p
    stab_ids = np.asarray(stab_ids, dtype=np.int64)
    keys = kernel.key_of[stab_ids]
    if not psi_exps[keys[keys >= 0]].any():
        return np.zeros(len(stab_ids), dtype=np.int64), 1
    D = derived_subgroup_ids(group, stab_ids)
    dk = kernel.key_of[D]
    if psi_exps[dk[dk >= 0]].any():
        raise InvariantViolation("psi_beta does not extend to its stabilizer")
    in_D = np.zeros(group.order, dtype=bool)
    in_D[D] = True

    # coset representatives of D in S (the quotient Q is abelian)
    gens = find_generators(group, stab_ids)
    reps = [group.identity]
    def coset_of(e):
        for idx, r in enumerate(reps):
            if in_D[int(group.mul(group.inv_ids[r], e)[0])]:
                return idx
        return -1
    frontier = [0]
    while frontier:
        nxt = []
        for ci in frontier:
            for g in gens:
                e = int(group.mul(reps[ci], g)[0])
                if coset_of(e) < 0:
                    reps.append(e)
                    nxt.append(len(reps) - 1)
        frontier = nxt
    nQ = len(reps)

    def q_mul(a, b):
        return coset_of(int(group.mul(reps[a], reps[b])[0]))

    def q_pow(a, k):
        out = 0
        for _ in range(k):
            out = q_mul(out, a)
        return out

    def q_order(a):
        k, x = 1, a
        while x != 0:
            x = q_mul(x, a)
            k += 1
        return k

    import math
    E = math.lcm(*(q_order(i) for i in range(nQ)))

    # character on the image of the kernel, scaled into Z/E
    val = {0: 0}
    for pid, key in zip(stab_ids, keys):
        if key >= 0:
            val[coset_of(int(pid))] = int(psi_exps[key]) * (E // p) % E
    covered = set(val)
    # close under multiplication
    def close():
        changed = True
        while changed:
            changed = False
            for a in list(covered):
                for b in list(covered):
                    c = q_mul(a, b)
                    v = (val[a] + val[b]) % E
                    if c not in covered:
                        val[c] = v
                        covered.add(c)
                        changed = True
                    elif val[c] != v:
                        raise InvariantViolation("kernel character ill-defined on cosets")
    close()
    while len(covered) < nQ:
        g = next(i for i in range(nQ) if i not in covered)
        k, x = 1, g
        while x not in covered:
            x = q_mul(x, g)
            k += 1
        v = val[x]
        # k | E and (E/k)*v = 0 (mod E) force k | v; x = v/k solves k*x = v
        if v % k:
            raise InvariantViolation("root extraction failed in abelianization")
        val[g] = (v // k) % E
        covered.add(g)
        close()
    out = np.array([val[coset_of(int(s))] for s in stab_ids], dtype=np.int64)
    return out, E


def analyze_group(scheme: GroupScheme, ring, seed: int = 0,
                  max_order: int = 100_000) -> GroupAnalysis:
    """Full per-orbit Clifford analysis plus the Dixon oracle for G(ring)."""
    if ring.length != 2:
        raise ValueError("analysis requires a length-two ring")
    timings = {}
    t = time.perf_counter()
    G = enumerate_points(scheme, ring, max_order=max_order)
    timings["enumerate"] = time.perf_counter() - t
    t = time.perf_counter()
    table = dixon_table(G, G.classes, seed=seed)
    timings["dixon"] = time.perf_counter() - t
    t = time.perf_counter()
    res = G.residue_group
    dual = DualSpace(res)
    orbits = dual.orbits()
    kernel = G.kernel
    p = ring.field.p
    mixed = is_mixed_char(ring)
    res_table_cache: dict = {}
    per_orbit = []
    above_count = np.zeros(table.num_chars, dtype=np.int64)
    clifford_total: Counter = Counter()
    for i in range(orbits.num_orbits):
        vals = dual.values[orbits.rep_keys[i]]
        S = character_stabilizer_ids(G, dual, vals)
        if not np.array_equal(S, predicted_stabilizer_ids(G, dual, vals)):
            raise InvariantViolation("stabilizer formula violated")
        f_vals = dual.sigma_star_inv(vals) if mixed else vals
        C_ids = dual.functional_centralizer_ids(f_vals)
        # rho maps S onto C with kernel exactly the congruence kernel
        if len(S) != len(C_ids) * kernel.order or \
                not np.array_equal(np.unique(G.rho_ids[S]), C_ids):
            raise InvariantViolation("stabilizer does not cover the centralizer")
        e = res.order // len(C_ids)
        ckey = tuple(C_ids.tolist())
        if ckey not in res_table_cache:
            small = SubgroupView(res, C_ids)
            res_table_cache[ckey] = dixon_table(small, seed=seed)
        small_table = res_table_cache[ckey]
        psi = psi_exponent_table(dual, kernel, vals)
        ext = extension_exists(G, S, psi)
        m = restriction_multiplicities(table, kernel.exp_ids, psi, p)
        above = m > 0
        above_count += above
        fiber = sorted(int(d) for d in table.degrees[above])
        small_deg = small_table.degree_multiset()
        predicted = Counter({e * d: c for d, c in small_deg.items()})
        rec = OrbitAnalysis(
            beta=[int(v) for v in vals],
            orbit_size=int(orbits.sizes[i]),
            stab_order=len(C_ids),
            index=e,
            extension_exists=ext,
            small_degrees=small_deg,
            predicted=predicted,
            fiber_degrees=fiber,
            n1=int(above.sum()),
            n2=small_table.num_chars,
            n3=len(C_ids),
        )
        rec.dim_formula_holds = Counter(fiber) == predicted
        rec.clifford_bound_holds = all(d % e == 0 for d in fiber)
        if ext and not rec.dim_formula_holds:
            raise InvariantViolation("dimension formula fails despite extension")
        if not rec.clifford_bound_holds:
            raise InvariantViolation("fiber degree not a multiple of the orbit index")
        clifford_total.update(predicted)
        per_orbit.append(rec)
    if np.any(above_count != 1):
        raise InvariantViolation("an irreducible lies above != 1 orbit")
    timings["orbits"] = time.perf_counter() - t
    return GroupAnalysis(G, table, dual, orbits, per_orbit, clifford_total,
                         {k: round(v * 1000, 1) for k, v in timings.items()})


def verify_counting(analysis: GroupAnalysis) -> list:
    """The three counts of the per-orbit bijection for every orbit."""
    return [
        {"beta": rec.beta, "n1": rec.n1, "n2": rec.n2, "n3": rec.n3,
         "n1_eq_n2": rec.n1 == rec.n2, "n1_eq_n3": rec.n1 == rec.n3}
        for rec in analysis.per_orbit
    ]


def verify_dim_formula(analysis: GroupAnalysis) -> bool:
    return all(rec.dim_formula_holds for rec in analysis.per_orbit
               if rec.extension_exists)


def rings_for_comparison(q: int, field_text: str | None = None):
    """(equal-characteristic ring, mixed-characteristic ring) for residue F_q."""
    F = parse_field(field_text) if field_text else _field_for_q(q)
    equal = TruncatedPolyRing(F, 2)
    mixed = ZmodRing(F.p, 2) if F.f == 1 else Witt2Ring(F)
    return equal, mixed


def _field_for_q(q: int):
    import sympy
    for p_ in sympy.primerange(2, q + 1):
        f = 1
        while p_**f < q:
            f += 1
        if p_**f == q:
            return parse_field(f"gf({q})") if f > 1 else parse_field(f"gf({p_})")
    raise ValueError(f"{q} is not a prime power")


def _multiset_json(counter: Counter) -> dict:
    return {str(d): int(counter[d]) for d in sorted(counter)}


def _ring_section(analysis: GroupAnalysis) -> dict:
    return {
        "ring_descriptor": analysis.group.ring.descriptor(),
        "order": int(analysis.group.order),
        "num_classes": int(analysis.table.classes.num_classes),
        "degree_multiset": _multiset_json(analysis.oracle_multiset),
        "orbit_table": [
            {
                "beta": rec.beta,
                "orbit_size": rec.orbit_size,
                "stab_order": rec.stab_order,
                "index": rec.index,
                "extension_exists": rec.extension_exists,
                "fiber_degrees": rec.fiber_degrees,
                "counting": {"n1": rec.n1, "n2": rec.n2, "n3": rec.n3},
            }
            for rec in analysis.per_orbit
        ],
    }


def compare_rings(scheme: GroupScheme, q: int, seed: int = 0,
                  max_order: int = 100_000, field_text: str | None = None) -> dict:
    """The two-ring degree-multiset comparison report (JSON-ready dict)."""
    t0 = time.perf_counter()
    equal_ring, mixed_ring = rings_for_comparison(q, field_text)
    eq = analyze_group(scheme, equal_ring, seed=seed, max_order=max_order)
    mx = analyze_group(scheme, mixed_ring, seed=seed, max_order=max_order)

    # pair the psi_beta fiber (mixed) with the psi_{sigma*(beta)} fiber (equal)
    def paired_fibers(twist):
        pairs = []
        for rec in mx.per_orbit:
            tw = twist(np.array(rec.beta, dtype=np.int64))
            rep = int(eq.orbits.rep_of[eq.dual.key_of(tw)])
            idx = int(eq.orbits.orbit_index[rep])
            pairs.append((rec.fiber_degrees, eq.per_orbit[idx].fiber_degrees))
        return pairs

    forward = paired_fibers(eq.dual.sigma_star)
    backward = paired_fibers(eq.dual.sigma_star_inv)
    per_orbit_equal = all(a == b for a, b in forward)
    per_orbit_equal_inv = all(a == b for a, b in backward)

    p = equal_ring.field.p
    exploratory = scheme.family == "sl" and scheme.n % p == 0
    verdicts = {
        "global_equal": eq.oracle_multiset == mx.oracle_multiset,
        "per_orbit_equal": per_orbit_equal,
        "clifford_matches_oracle": (
            eq.clifford_multiset == eq.oracle_multiset
            and mx.clifford_multiset == mx.oracle_multiset
        ),
        "exploratory": exploratory,
    }
    report = {
        "scheme": scheme.descriptor(),
        "q": int(q),
        "rings": [_ring_section(eq), _ring_section(mx)],
        "verdicts": verdicts,
        "sigma_pairing": {
            "forward_per_orbit_equal": per_orbit_equal,
            "inverse_per_orbit_equal": per_orbit_equal_inv,
        },
        "seed": int(seed),
        "timings_ms": {
            "equal_char": eq.timings_ms,
            "mixed_char": mx.timings_ms,
            "total": round((time.perf_counter() - t0) * 1000, 1),
        },
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
