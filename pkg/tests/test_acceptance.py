"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are
repeated under "acceptance criteria" in the terminal summary.
"""

import itertools
import json
import math
import random

import numpy as np
import pytest

from permfam import families
from permfam.cli import ACCEPTANCE_FIELDS, EXIT_FAIL, EXIT_OK, counterexample_facts, main
from permfam.families import (FamilyParams, InvalidParams, b_poly, corrected_puw_criterion, decompose, eval_fast,
                              f_poly, g_map, nondegenerate, special_case)
from permfam.field import build_field
from permfam.oracle import (permutes_fq2, permutes_fq2_batch, validate_lemma_deg, validate_lemma_deg1mu,
                           validate_lemma_lemx, validate_lemma_mu, validate_lemma_old, validate_lemma_scr)
from permfam.poly import Mobius, Poly, RationalMap, is_degree_one

pytestmark = pytest.mark.slow

SEED = 20240601


def expected_tuples(q):
    """Tuple count of the a-normalized sweep, counted from first principles."""
    shifts, ns, bs = 2, q + 1, q * q - 1
    thm1_slots = (q + 1) * q
    thm2_slots = (q * q - 1) - (q + 1)
    return shifts * ns * bs * (thm1_slots + thm2_slots)


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out, _ = capsys.readouterr()
    return code, out


# -- 1 ----------------------------------------------------------------------------------

def test_criterion_1_theorem_oracle_equivalence(capsys, criterion):
    with criterion(1, "criterion vs oracle sweep, q in {2,3,4,5,7,8,9,11,13}, 0 disagreements") as c:
        code, out = run_json(capsys, "sweep", "--preset", "acceptance")
        rep = json.loads(out)
        counts = rep["counts"]
        c.note(f"{counts['tuples']} tuples, {counts['disagreements']} disagreements")
        assert rep["config"]["fields"] == list(ACCEPTANCE_FIELDS)
        assert counts["disagreements"] == 0 and rep["disagreements"] == []
        assert code == EXIT_OK
        per_q = {}
        for entry in rep["per_field"]:
            p, k = map(int, entry["field"].split("^"))
            per_q[p**k] = per_q.get(p**k, 0) + entry["tuples"]
        assert per_q == {q: expected_tuples(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13)}
        assert counts["oracle_true"] == counts["criterion_true"] > 0


# -- 2 ----------------------------------------------------------------------------------

def test_criterion_2_counterexamples(criterion):
    with criterion(2, "q=32 and q=128 counterexamples") as c:
        facts = counterexample_facts()
        for f in facts:
            assert f["holds"], f
        c.note(f"{len(facts)} facts hold")

        F = build_field(2, 5)
        u, v = F.f4_pair()
        P = FamilyParams(F, "thm1", 44, 11, u=u, v=v, a=1, b=1)
        assert permutes_fq2(F, f_poly(P)).is_permutation
        assert math.gcd(11, 1023) == 11 == math.gcd(P.n, F.order - 1)

        F = build_field(2, 7)
        u, v = F.f4_pair()
        P = FamilyParams(F, "thm1", 172, 43, u=u, v=v, a=v, b=u)
        assert permutes_fq2(F, f_poly(P)).is_permutation
        assert 43 % 3 == 1
        assert math.gcd(43, 16383) == 43 == math.gcd(P.n, F.order - 1)


# -- 3 ----------------------------------------------------------------------------------

def _lemma_chain(F, r, B, stats):
    assert validate_lemma_old(F, r, B), (r, B)
    assert validate_lemma_lemx(F, r, B), (r, B)
    stats["old"] += 1
    stats["lemx"] += 1
    if r >= B.degree:
        assert validate_lemma_scr(F, B, r), (r, B)
        stats["scr"] += 1


def test_criterion_3_lemma_suites(criterion):
    with criterion(3, "lemma suites old/lemx/scr, deg1mu, mu, deg: 0 failures") as c:
        stats = {"old": 0, "lemx": 0, "scr": 0, "deg1mu": 0, "mu": 0, "deg": 0}

        # every nonzero B of degree <= 3, every r in [1, 2(q+1)]
        for pk in [(2, 1), (3, 1), (2, 2)]:
            F = build_field(*pk)
            for coeffs in itertools.product(range(F.order), repeat=4):
                if not any(coeffs):
                    continue
                B = Poly(F, coeffs)
                for r in range(1, 2 * (F.q + 1) + 1):
                    _lemma_chain(F, r, B, stats)

        rnd = random.Random(SEED)
        for pk in [(5, 1), (7, 1), (2, 3), (3, 2)]:
            F = build_field(*pk)
            done = 0
            while done < 10_000:
                B = Poly(F, [rnd.randrange(F.order) for _ in range(rnd.randint(1, 5))])
                if B.is_zero():
                    continue
                _lemma_chain(F, rnd.randint(1, 2 * (F.q + 1)), B, stats)
                done += 1

        for pk in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]:
            F = build_field(*pk)
            for alpha, beta in itertools.product(F.elements(), repeat=2):
                assert validate_lemma_deg1mu(F, alpha, beta), (pk, alpha, beta)
                stats["deg1mu"] += 1
                if not F.in_subfield(alpha) and F.in_mu(beta):
                    assert validate_lemma_mu(F, alpha, beta), (pk, alpha, beta)
                    stats["mu"] += 1

        deg_fields = [build_field(*pk) for pk in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]]
        while stats["deg"] < 1000:
            F = rnd.choice(deg_fields)
            g = RationalMap.build(Poly(F, [rnd.randrange(F.order) for _ in range(rnd.randint(1, 6))]),
                                  Poly(F, [rnd.randrange(F.order) for _ in range(rnd.randint(1, 6))]) or
                                  Poly.const(F, 1))
            if g.is_constant():
                continue
            mobius = []
            while len(mobius) < 2:
                a, b, cc, d = (rnd.randrange(F.order) for _ in range(4))
                if (cc or d) and is_degree_one(F, a, b, cc, d):
                    mobius.append(Mobius(F, a, b, cc, d))
            assert validate_lemma_deg(g, *mobius)
            stats["deg"] += 1
        c.note(", ".join(f"{k} {v}" for k, v in stats.items()))


# -- 4 ----------------------------------------------------------------------------------

def _random_nondegenerate(F, family, rnd):
    while True:
        n = rnd.randint(1, 3 * (F.q + 1))
        r = n + rnd.randint(0, 2) * (F.q + 1)
        a, b = rnd.randrange(1, F.order), rnd.randrange(1, F.order)
        if family == "thm1":
            u, v = rnd.sample(F.mu, 2)
            P = FamilyParams(F, family, r, n, u=u, v=v, a=a, b=b)
        else:
            v = rnd.choice([x for x in F.nonzero() if not F.in_mu(x)])
            P = FamilyParams(F, family, r, n, v=v, a=a, b=b)
        if nondegenerate(P):
            return P


def test_criterion_4_decomposition_identity(criterion):
    with criterion(4, "eval_fast == g_map on mu, 1000 params per family per q in {3,4,5,7,8}") as c:
        rnd = random.Random(SEED)
        points = 0
        for pk in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3)]:
            F = build_field(*pk)
            for family in families.FAMILIES:
                for _ in range(1000):
                    P = _random_nondegenerate(F, family, rnd)
                    d = decompose(P)
                    g = g_map(P.n, b_poly(P))
                    for x in F.mu:
                        assert eval_fast(d, x) == g(x), (P.to_text(), x)
                        points += 1
        c.note(f"{points} point evaluations, 0 mismatches")


# -- 5 ----------------------------------------------------------------------------------

def _oracle_batch(params_list):
    """Oracle verdicts for many parameter sets over one field, batched per exponent shape."""
    out = {}
    groups = {}
    for i, P in enumerate(params_list):
        groups.setdefault((P.r, P.n), []).append(i)
    F = params_list[0].field
    for (r, n), idx in groups.items():
        exps = [r + j * (F.q - 1) for j in range(n + 1)]
        rows = np.zeros((len(idx), n + 1), dtype=np.int64)
        for row, i in enumerate(idx):
            coeffs = b_poly(params_list[i]).coeffs
            rows[row, :len(coeffs)] = coeffs
        for i, verdict in zip(idx, permutes_fq2_batch(F, exps, rows)):
            out[i] = verdict.is_permutation
    return [out[i] for i in range(len(params_list))]


def _special_instances(name, F):
    q = F.q
    for n in range(1, q + 2):
        for m in (0, 1):
            if name in ("PUW8", "PUW9"):
                yield special_case(name, F, n, m=m)
            elif name == "FFLW1":
                for a, u, sign in itertools.product(F.nonzero(), F.mu, (1, -1)):
                    yield special_case(name, F, n, m=m, a=a, u=u, sign=sign)
            elif name == "FFLW2":
                minus_one = F.neg(1)
                for v in F.nonzero():
                    if F.pow(v, q + 1) == minus_one:
                        for a, sign in itertools.product(F.nonzero(), (1, -1)):
                            yield special_case(name, F, n, m=m, a=a, v=v, sign=sign)
            elif name == "WYDM35_ZR12":
                for b in F.nonzero():
                    if not F.in_subfield(b):
                        for v in F.mu:
                            yield special_case(name, F, n, m=m, b=b, v=v)
            else:
                for v in F.nonzero():
                    if not F.in_mu(v):
                        yield special_case(name, F, n, m=m, v=v)


def test_criterion_5_special_cases(criterion):
    with criterion(5, "special cases: criterion == oracle, PUW8/PUW9 corrected equivalences") as c:
        counts = {}
        plan = [("PUW8", pk) for pk in [(2, 1), (2, 3), (2, 5)]] + \
               [("PUW9", pk) for pk in [(2, 1), (2, 3), (2, 5)]] + \
               [(name, pk) for name in ("FFLW1", "FFLW2", "WYDM35_ZR12", "WYDM33_ZR11")
                for pk in [(3, 1), (5, 1), (7, 1)]]
        for name, pk in plan:
            F = build_field(*pk)
            instances = list(_special_instances(name, F))
            assert instances, (name, pk)
            verdicts = _oracle_batch(instances)
            for P, orc in zip(instances, verdicts):
                crit = families.criterion(P)
                assert crit == orc, (name, P.to_text())
                if name in ("PUW8", "PUW9"):
                    assert crit == corrected_puw_criterion(name, P.r, P.n, F.q), (name, P.to_text())
            counts[name] = counts.get(name, 0) + len(instances)
        c.note(", ".join(f"{k} {v}" for k, v in counts.items()))


def test_criterion_5_special_case_constraints_hold():
    F = build_field(3, 1)
    for P in _special_instances("WYDM35_ZR12", F):
        assert P.a == F.pow(F.neg(P.b), P.n) and P.u == F.mul(P.v, F.pow(P.b, F.q - 1))
    for P in _special_instances("WYDM33_ZR11", F):
        assert P.a == F.neg(F.inv(P.v)) and P.b == F.inv(F.pow(P.v, P.n))
    with pytest.raises(InvalidParams):
        special_case("PUW8", F, 1)


# -- 6 ----------------------------------------------------------------------------------

def test_criterion_6_determinism_and_fault_injection(capsys, monkeypatch, criterion):
    with criterion(6, "byte-identical reports; injected fault exits 1 with a witness") as c:
        argv = ("sweep", "--field", "2,3,2^2,5", "--seed", "3")
        outs = [run_json(capsys, *argv, "--threads", t) for t in ("1", "1", "2")]
        assert len({o for _, o in outs}) == 1 and all(code == EXIT_OK for code, _ in outs)
        sampled = ("sweep", "--field", "3^2", "--strategy", "sampled", "--samples", "8", "--seed", "5")
        assert run_json(capsys, *sampled) == run_json(capsys, *sampled)

        real = families.thm2_check

        def faulty(params):
            # the gcd(n, q+1) clause is dropped; at q = 5 it matters for n = 3
            F = params.field
            return real(params) or (families.nondegenerate(params) and math.gcd(params.r, F.q - 1) == 1)

        monkeypatch.setattr(families, "thm2_check", faulty)
        code, out = run_json(capsys, "sweep", "--field", "5", "--family", "thm2", "--threads", "1")
        rep = json.loads(out)
        assert code == EXIT_FAIL and rep["status"] == "DISAGREEMENT"
        rec = rep["disagreements"][0]
        x1, x2 = rec["witness"]
        assert x1 != x2
        P = FamilyParams.from_text(rec["text"])
        values = [P.field.sum(P.field.mul(cf, P.field.pow(x, e)) for e, cf in f_poly(P)) for x in (x1, x2)]
        assert values[0] == values[1]
        c.note(f"{len(rep['disagreements'])} injected disagreements, witness {x1},{x2} verified")
