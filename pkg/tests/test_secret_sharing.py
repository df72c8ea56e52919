import itertools
from collections import Counter

import numpy as np
import pytest

from tracecodes.codes import LinearCode, build_code, iter_codewords, make_code
from tracecodes.codes import DefiningSet
from tracecodes.errors import DegenerateSchemeError, IntegrityError, ParameterError
from tracecodes.field import FieldCtx
from tracecodes.sss import (
    access_set_of,
    access_structure,
    deal,
    is_access_set,
    minimal_codewords,
    participant_count_report,
    proportional_to_secret_column,
    recover,
    setup,
    share_bundle,
    structure_report,
    theoretical_stats,
)


def brute_minimal(code):
    """Oracle: pairwise support containment over every nonzero codeword."""
    words = [tuple(c) for C in iter_codewords(code) for c in C.tolist() if any(c)]
    supports = [frozenset(i for i, v in enumerate(c) if v) for c in words]
    return {c for c, s in zip(words, supports) if not any(t < s for t in supports)}


@pytest.fixture(scope="module")
def punctured35():
    return make_code(3, 5, punctured=True)


def shares_at(d, idx):
    return [d.shares[i - 1] for i in idx]


def test_setup_examples(punctured35):
    s = setup(punctured35)
    assert s.participants == 39
    assert s.H.shape == (punctured35.n - punctured35.k, punctured35.n)
    assert not (s.H @ punctured35.gen_matrix.T % 3).any()
    with pytest.raises(DegenerateSchemeError):
        setup(LinearCode(3, np.eye(4, dtype=int)))
    # e_0 in C forces h_0 = 0
    with pytest.raises(DegenerateSchemeError):
        setup(LinearCode(3, [[1, 0, 0], [0, 1, 1]]))


def test_deal_reproducible_and_secret_coordinate(punctured35):
    s = setup(punctured35)
    assert deal(s, 1, 42) == deal(s, 1, 42)
    assert deal(s, 1, 42).shares != deal(s, 1, 43).shares
    for seed in range(20):
        d = deal(s, seed % 3, seed)
        t = np.array((d.secret,) + d.shares)
        assert not (punctured35.gen_matrix @ t % 3).any()
    with pytest.raises(ParameterError):
        deal(s, 3, 0)


def test_share_distribution_matches_exact():
    code = make_code(3, 3)
    s = setup(code)
    p, H, h0 = 3, s.H, s.H[:, 0]
    # oracle: every u with u.h0 = secret, equally likely
    exact = [Counter() for _ in range(code.n - 1)]
    for u in itertools.product(range(p), repeat=H.shape[0]):
        u = np.array(u)
        if u @ h0 % p == 1:
            t = u @ H % p
            for i in range(1, code.n):
                exact[i - 1][int(t[i])] += 1
    trials = 3000
    seen = [Counter() for _ in range(code.n - 1)]
    for seed in range(trials):
        for i, v in enumerate(deal(s, 1, seed).shares):
            seen[i][v] += 1
    for e, o in zip(exact, seen):
        tot = sum(e.values())
        chi2 = sum((o[v] - trials * e[v] / tot) ** 2 / (trials * e[v] / tot) for v in e)
        assert set(o) <= set(e)
        assert chi2 < 20  # df <= 2; far beyond any plausible deviation


def test_recover_round_trip_and_subsets(punctured35):
    s = setup(punctured35)
    st = access_structure(punctured35)
    d = deal(s, 2, 5)
    for A in st.minimal_access_sets[:20]:
        assert recover(s, A, shares_at(d, A)) == 2
        B = A[:-1]
        assert recover(s, B, shares_at(d, B)) is None
    assert recover(s, [], []) is None


def test_monotone_supersets(punctured35):
    s = setup(punctured35)
    st = access_structure(punctured35)
    rng = np.random.default_rng(3)
    for A in st.minimal_access_sets[:10]:
        extra = rng.choice([i for i in range(1, 40) if i not in A], size=5, replace=False)
        assert is_access_set(s, list(A) + extra.tolist())


def test_full_share_integrity(punctured35):
    s = setup(punctured35)
    d = deal(s, 1, 9)
    everyone = range(1, 40)
    assert recover(s, everyone, d.shares) == 1
    bad = list(d.shares)
    bad[0] = (bad[0] + 1) % 3
    with pytest.raises(IntegrityError):
        recover(s, everyone, bad)
    with pytest.raises(ParameterError):
        recover(s, [0, 1], [0, 0])
    with pytest.raises(ParameterError):
        recover(s, [1, 2], [0])


def test_leftmost_one_codeword_gives_access_set():
    assert access_set_of((1, 2, 0, 0, 2)) == (1, 4)
    code = LinearCode(3, [[1, 2, 0, 0, 2], [0, 1, 1, 0, 0], [0, 0, 0, 1, 1]])
    st = access_structure(code)
    assert st.minimal_access_sets == [(1, 3), (1, 4), (2, 3), (2, 4)]
    s = setup(code)
    d = deal(s, 2, 0)
    assert recover(s, (1, 4), shares_at(d, (1, 4))) == 2
    assert recover(s, (1, 2), shares_at(d, (1, 2))) is None


def test_one_weight_code_all_minimal():
    F = FieldCtx(3, 3)
    code = build_code(F, DefiningSet(F, np.arange(1, 27)))
    assert len(minimal_codewords(code)) == 26


@pytest.mark.parametrize("p,m,punct", [(3, 3, False), (3, 3, True), (5, 3, True), (3, 4, False)])
def test_minimal_codewords_against_oracle(p, m, punct):
    code = make_code(p, m, punct)
    got = {tuple(c) for c in minimal_codewords(code).tolist()}
    assert got == brute_minimal(code)


def test_minimal_threads_agree(punctured35):
    a = minimal_codewords(punctured35, threads=1)
    b = minimal_codewords(punctured35, threads=4)
    assert np.array_equal(a, b) and len(a) == 242


def test_access_structure_counts(punctured35):
    st = access_structure(punctured35)
    assert len(st.minimal_access_sets) == 81
    assert set(st.per_participant_count.values()) == {54}
    assert not st.dictators
    sets = [set(a) for a in st.minimal_access_sets]
    assert not any(a < b for a in sets for b in sets)


def test_structure_independent_of_basis(punctured35):
    rng = np.random.default_rng(0)
    while True:
        M = rng.integers(0, 3, size=(5, 5))
        if round(np.linalg.det(M)) % 3:
            break
    other = LinearCode(3, M @ punctured35.gen_matrix % 3)
    assert access_structure(other).minimal_access_sets == access_structure(punctured35).minimal_access_sets


def test_dictators_full_code():
    code = make_code(3, 5)
    st = access_structure(code)
    prop = proportional_to_secret_column(code)
    assert prop and st.dictators == prop
    rep = structure_report(code)
    assert rep["d_dual"] == 2 and all(c["pass"] for c in rep["checks"])


def test_theoretical_stats():
    assert theoretical_stats(3, 5, 3, 1)["per_group"] == 54
    r = theoretical_stats(5, 5, 3, 1)
    assert (r["per_group"], r["minimal_access_sets"]) == (500, 625)
    assert theoretical_stats(5, 4, 10, 3)["per_group"] == 4**3
    assert theoretical_stats(3, 5, 2)["non_dictator"] == 54
    with pytest.raises(ParameterError):
        theoretical_stats(3, 5, 3, 2)
    with pytest.raises(ParameterError):
        theoretical_stats(3, 5, 3, 0)


def test_group_counts_against_direct_count(punctured35):
    st = access_structure(punctured35)
    pairs = st.group_counts(2)
    for a, b in [(1, 2), (3, 17), (38, 39)]:
        assert pairs[(a, b)] == sum(1 for s in st.minimal_access_sets if a in s and b in s)
    assert st.group_counts(1) == Counter({(i,): c for i, c in st.per_participant_count.items()})


def test_pair_check_gated_by_dual_distance(punctured35):
    rep = structure_report(punctured35)
    assert rep["d_dual"] == 3
    assert [c["check"] for c in rep["checks"]] == ["count", "t=1"]
    assert rep["skipped"] == ["t=2 needs d_dual >= 4, measured 3"]
    assert all(c["pass"] for c in rep["checks"])


def test_structure_report_five_five():
    # 625 sets, every participant in 500
    rep = structure_report(make_code(5, 5, True))
    assert [c["observed"] for c in rep["checks"]] == [625, [500]]


def test_bundle_and_participant_report(punctured35):
    s = setup(punctured35)
    b = share_bundle(punctured35, deal(s, 2, 11))
    assert set(b) == {"p", "m", "kind", "modulus", "seed", "shares"}
    assert b["shares"][0]["participant"] == 1 and len(b["shares"]) == 39
    r = participant_count_report(punctured35)
    assert r == {"participants": 39, "closed_form_p^(m-2)": 27, "agree": False}
