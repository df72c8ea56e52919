"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line.

Runtime limits count toward the verdict.  Run alone with
``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary.
"""

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from tracecodes import charsums as cs
from tracecodes.codes import codeword_for, dual_minimum_distance, make_code, weight_distribution
from tracecodes.field import FieldCtx, irreducible_polynomials
from tracecodes.planar import catalog, compare_with_CD, nonlinearity_measure
from tracecodes.sss import (
    access_structure,
    deal,
    participant_count_report,
    proportional_to_secret_column,
    recover,
    setup,
)
from tracecodes.theory import griesmer_min_length, is_griesmer_optimal, verify

RESULTS: list[str] = []

LEMMA_GRID = [(p, m) for p in (3, 5) for m in range(2, 6)]


@contextmanager
def criterion(capsys, num, title, limit=None):
    start = time.perf_counter()
    notes = []
    passed = False
    try:
        yield notes
        passed = True
    finally:
        elapsed = time.perf_counter() - start
        if passed and limit is not None and elapsed > limit:
            passed = False
            notes.append(f"over the {limit}s limit")
        budget = f", limit {limit}s" if limit is not None else ""
        extra = ("  [" + "; ".join(notes) + "]") if notes else ""
        line = f"criterion {num:>2}: {'PASS' if passed else 'FAIL'}  {title} ({elapsed:.2f}s{budget}){extra}"
        RESULTS.append(line)
        with capsys.disabled():
            print("\n" + line)
    if not passed:
        pytest.fail(line)


def measured(p, m, punctured=False):
    code = make_code(p, m, punctured)
    wd = weight_distribution(code)
    return code, wd


def test_c01_golden_full_3_5(capsys):
    with criterion(capsys, 1, "(3,5) full code is [80,5,48], {48:90,54:80,60:72}", 1.0):
        code, wd = measured(3, 5)
        assert (code.n, code.k, wd.min_weight) == (80, 5, 48)
        assert wd.nonzero == {48: 90, 54: 80, 60: 72}


def test_c02_golden_full_5_4(capsys):
    with criterion(capsys, 2, "(5,4) full code is [104,4,80], {80:520,100:104}", 1.0):
        code, wd = measured(5, 4)
        assert (code.n, code.k, wd.min_weight) == (104, 4, 80)
        assert wd.nonzero == {80: 520, 100: 104}


def test_c03_golden_punctured_3_5(capsys):
    with criterion(capsys, 3, "(3,5) punctured code is [40,5,24], {24:90,27:80,30:72}", 1.0):
        code, wd = measured(3, 5, True)
        assert (code.n, code.k, wd.min_weight) == (40, 5, 24)
        assert wd.nonzero == {24: 90, 27: 80, 30: 72}


def test_c04_golden_punctured_5_4(capsys):
    with criterion(capsys, 4, "(5,4) punctured code is [26,4,20], Griesmer 26, optimal", 1.0):
        code, wd = measured(5, 4, True)
        assert (code.n, code.k, wd.min_weight) == (26, 4, 20)
        assert wd.nonzero == {20: 520, 25: 104}
        assert griesmer_min_length(5, 4, 20) == 26
        assert is_griesmer_optimal(code, wd.min_weight)


def test_c05_theorem_grid(capsys):
    cells = [(p, m) for p in (3, 5, 7) for m in range(2, 7) if p**m <= 10**6]
    with criterion(capsys, 5, f"predicted tables match enumeration on {len(cells)} cells x 2", 300) as notes:
        bad = []
        degenerate = []
        for p, m in cells:
            for punct in (False, True):
                r = verify(p, m, punct)
                if not r["pass"]:
                    bad.append((p, m, punct))
                if r["degenerate"]:
                    degenerate.append((p, m, punct))
        if degenerate:
            notes.append(f"empty defining set, predicted length 0: {sorted(set(c[:2] for c in degenerate))}")
        assert not bad, bad


def test_c06_exact_counts(capsys):
    with criterion(capsys, 6, "n_a and N(b) closed forms equal exhaustive counts, p in {3,5}, m 2..5",
                   120) as notes:
        total = 0
        for p, m in LEMMA_GRID:
            F = FieldCtx(p, m)
            checks = [cs.count_square_trace(F, a) for a in range(p)]
            checks += [cs.count_joint_zeros(F, F.element(b)) for b in range(1, F.q)]
            total += len(checks)
            assert all(c.passed for c in checks), [c.to_json() for c in checks if not c.passed][:3]
        notes.append(f"{total} exact comparisons")


def test_c07_complex_sums(capsys):
    with criterion(capsys, 7, "Gauss, Weil (100 triples/field) and both exponential sums within 1e-6*sqrt(q)",
                   120) as notes:
        total = 0
        worst = 0.0
        for p, m in LEMMA_GRID:
            F = FieldCtx(p, m)
            rng = np.random.Generator(np.random.PCG64(1000 * p + m))
            checks = [cs.check_gauss_sum(F), cs.quadratic_trace_sum(F),
                      cs.LemmaCheck("gauss_sum_base", {"p": p}, cs.gauss_sum_base_numeric(p),
                                    cs.gauss_sum_base_closed(p), exact=False, q=p)]
            for _ in range(100):
                a2 = F.element(int(rng.integers(1, F.q)))
                a1, a0 = (F.element(int(v)) for v in rng.integers(0, F.q, size=2))
                checks.append(cs.weil_quadratic_sum(a2, a1, a0))
            checks += [cs.mixed_trace_sum(F, F.element(b)) for b in range(1, F.q)]
            total += len(checks)
            worst = max(worst, max(abs(c.enumerated - c.closed_form) / cs.tolerance(c.q) for c in checks))
            assert all(c.passed for c in checks), [c.to_json() for c in checks if not c.passed][:3]
        notes.append(f"{total} comparisons, worst error {worst:.1e} of tolerance")


def test_c08_planar_catalog(capsys):
    with criterion(capsys, 8, "catalog specs are planar and give C_D's parameters, (3,3) (3,5) (5,3)",
                   180) as notes:
        for p, m in [(3, 3), (3, 5), (5, 3)]:
            F = FieldCtx(p, m)
            specs = list(catalog(F))
            families = sorted({s.family for s in specs})
            for spec in specs:
                assert nonlinearity_measure(spec, F) == Fraction(1, F.q), spec
                r = compare_with_CD(spec, F, measure=False)
                assert r["equal_to_CD"], spec
            notes.append(f"({p},{m}): {len(specs)} specs, {len(families)} families")


def test_c09_secret_sharing(capsys):
    with criterion(capsys, 9, "(3,5) punctured base: 81 sets, 54 each, round trip 81x3x3", 60) as notes:
        code = make_code(3, 5, True)
        p, k = 3, code.k
        st = access_structure(code)
        assert len(st.minimal_access_sets) == 81 == p ** (k - 1)
        assert set(st.per_participant_count.values()) == {54} == {(p - 1) * p ** (k - 2)}
        d_dual = dual_minimum_distance(code)
        if d_dual >= 4:
            pairs = st.group_counts(2)
            n_pairs = sum(1 for _ in itertools.combinations(range(1, code.n), 2))
            assert len(pairs) == n_pairs and set(pairs.values()) == {36}
        else:
            notes.append(f"pair check skipped: d_dual = {d_dual} < 4")
        scheme = setup(code)
        for secret in range(3):
            for seed in (1, 2, 3):
                d = deal(scheme, secret, seed)
                for A in st.minimal_access_sets:
                    assert recover(scheme, A, [d.shares[i - 1] for i in A]) == secret


def test_c10_dictators(capsys):
    with criterion(capsys, 10, "(3,5) full base: d_dual = 2 and dictators match multiples of g_0") as notes:
        code = make_code(3, 5)
        assert dual_minimum_distance(code) == 2
        st = access_structure(code)
        prop = proportional_to_secret_column(code)
        assert st.dictators
        for i in range(1, code.n):
            assert (i in st.dictators) == (i in prop), i
        notes.append(f"dictators {sorted(st.dictators)}")


def test_c11_properties(capsys):
    with criterion(capsys, 11, "modulus independence, puncturing division, wt = n_0 - N(b)"):
        second = list(itertools.islice(irreducible_polynomials(3, 5), 2))[1]
        other = weight_distribution(make_code(3, 5, modulus=second))
        assert other.counts == {0: 1, 48: 90, 54: 80, 60: 72}
        for p, m in [(3, 5), (5, 4)]:
            full = weight_distribution(make_code(p, m)).nonzero
            punct = weight_distribution(make_code(p, m, True)).nonzero
            assert {w // (p - 1): a for w, a in full.items()} == punct
            assert all(w % (p - 1) == 0 for w in full)
        for p, m in [(3, 4), (5, 3)]:
            code = make_code(p, m)
            F = code.ctx
            n0 = cs.square_trace_count_enumerated(F, 0)
            for b in range(1, F.q):
                be = F.element(b)
                w = int(np.count_nonzero(codeword_for(code, be)))
                assert w == n0 - cs.joint_zero_count_enumerated(F, be)


def test_c12_gated_claims_reported(capsys):
    # literature claims and the participant count are printed, never asserted
    with criterion(capsys, 12, "non-reproducible claims reported outside pass/fail") as notes:
        d = weight_distribution(make_code(5, 4)).min_weight
        notes.append(f"best known [104,4] has d=81 (literature); this code measures d={d}")
        notes.append(f"no ternary [40,5,25] (literature); Griesmer only needs n >= "
                     f"{griesmer_min_length(3, 5, 25)}, so not decidable here")
        for p, m in [(3, 5), (5, 5)]:
            r = participant_count_report(make_code(p, m, True))
            notes.append(f"participants at ({p},{m}): n-1 = {r['participants']}, "
                         f"p^(m-2) = {r['closed_form_p^(m-2)']}")
        off = 0
        for p, m in LEMMA_GRID:
            F = FieldCtx(p, m)
            off += sum(cs.square_trace_count_printed(p, m, a) != cs.square_trace_count_enumerated(F, a)
                       for a in range(p))
        notes.append(f"printed square-trace count form disagrees with enumeration in {off} cases")
