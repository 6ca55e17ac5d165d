from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

import reference as ref
from connquery.certificates import (CutCertificate, CutRankWitness, alpha_lp, beta_lp,
                                    cert_to_witness, chi, con_cert_report, cycle_rank_check,
                                    exact_rank, iota_lp, learn_simple_graph_one_query, shores,
                                    universal_cut_incidence, verify_at_least_tau, verify_con_cert,
                                    verify_mincut_cert, witness_to_cert)
from connquery.certificates.cuts import cut_values
from connquery.certificates.witness import is_feasible, random_cycle_witness
from connquery.graph import generate, make_graph, min_cut_brute, num_slots
from connquery.oracles import QueryOracle

P3 = make_graph(3, [(1, 2, 1), (2, 3, 1)])
C4 = generate("cycle", 4)
K3 = generate("complete", 3)


def scipy_iota(A, g, S):
    """min <chi_S, w'> over w' >= 0 with A w' = A w, in floating point."""
    w = np.array([float(x) for x in g.weight_vector()])
    c = np.array(ref.chi(g.n, S), dtype=float)
    if not A.rows:
        return 0.0
    M = np.array([[float(x) for x in r] for r in A.rows])
    res = linprog(c, A_eq=M, b_eq=M @ w, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def random_instance(rng, n, max_weight=3):
    while True:
        g = generate("erdos_renyi", n, int(rng.integers(1 << 30)), p=0.6, max_weight=max_weight)
        if len(ref.components(g)) == 1:
            break
    k = int(rng.integers(0, num_slots(n) + 1))
    A = CutCertificate(n, tuple(tuple(int(x) for x in r) for r in rng.integers(-2, 3, (k, num_slots(n)))))
    return A, g


# --- universal incidence ------------------------------------------------------

def test_universal_incidence_small():
    assert universal_cut_incidence(2).tolist() == [[1]]
    M3 = universal_cut_incidence(3)
    assert M3.tolist()[0] == [1, 0, 1]
    assert [sorted(S) for S in shores(3)] == [[2], [3], [2, 3]]


@pytest.mark.parametrize("n", range(2, 9))
def test_universal_incidence_rows(n):
    M = universal_cut_incidence(n)
    assert M.shape == (2 ** (n - 1) - 1, num_slots(n))
    for S, row in zip(shores(n), M):
        assert row.tolist() == ref.chi(n, S) == chi(n, S)
        assert row.sum() == len(S) * (n - len(S))


def test_enumeration_guard():
    with pytest.raises(ValueError):
        universal_cut_incidence(15)
    with pytest.raises(ValueError):
        chi(4, [1, 2])


def test_cut_values_match_reference():
    g = generate("erdos_renyi", 7, 2, max_weight=5)
    assert cut_values(g) == [ref.cut_weight(g, S) for S in shores(7)]


# --- the three programs -------------------------------------------------------

def test_alpha_examples():
    I = CutCertificate.identity(4)
    assert all(alpha_lp(I, C4, S).value == 0 for S in shores(4))
    empty = CutCertificate.empty(4)
    assert all(alpha_lp(empty, C4, S).value == C4.cut_weight(S) for S in shores(4))
    S = {2}
    assert alpha_lp(CutCertificate(4, (tuple(chi(4, S)),)), C4, S).value == 0


def test_beta_examples():
    I = CutCertificate.identity(4)
    for S in shores(4):
        res = beta_lp(I, C4, S)
        assert res.value == 0
        assert sum(r * w for r, w in zip(res.row, C4.weight_vector())) == C4.cut_weight(S)
    empty = CutCertificate.empty(4)
    for S in shores(4):
        res = beta_lp(empty, C4, S)
        assert res.value == C4.cut_weight(S)
        assert res.slack == chi(4, S) and all(x == 0 for x in res.row)


def test_iota_examples():
    I = CutCertificate.identity(4)
    assert all(iota_lp(I, C4, S).value == C4.cut_weight(S) for S in shores(4))
    assert all(iota_lp(CutCertificate.empty(4), C4, S).value == 0 for S in shores(4))


def test_iota_is_cut_minus_alpha():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A, g = random_instance(rng, 5)
        for S in shores(5)[::3]:
            assert iota_lp(A, g, S).value == g.cut_weight(S) - alpha_lp(A, g, S).value


def test_alpha_equals_beta_with_slackness():
    rng = np.random.default_rng(4)
    for _ in range(25):
        A, g = random_instance(rng, int(rng.integers(3, 7)))
        S = shores(g.n)[int(rng.integers(len(shores(g.n))))]
        a, b = alpha_lp(A, g, S), beta_lp(A, g, S)
        assert a.value == b.value
        # z = alpha's optimum, slack = chi - A^T v: where z < w the slack must vanish
        w = g.weight_vector()
        assert all(s >= 0 for s in b.slack)
        assert all(s == 0 for s, z, we in zip(b.slack, a.x, w) if z < we)


def test_program_dimension_mismatch():
    with pytest.raises(ValueError):
        alpha_lp(CutCertificate.identity(3), C4, {2})


def test_iota_matches_scipy():
    rng = np.random.default_rng(5)
    for _ in range(15):
        A, g = random_instance(rng, 5)
        for S in shores(5)[::4]:
            assert float(iota_lp(A, g, S).value) == pytest.approx(scipy_iota(A, g, S), abs=1e-7)


# --- verifiers ----------------------------------------------------------------

def test_at_least_tau_examples():
    for g in (C4, P3, generate("complete", 5), generate("erdos_renyi", 6, 1, p=0.7, max_weight=4)):
        lam, _ = min_cut_brute(g)
        assert verify_at_least_tau(CutCertificate.identity(g.n), g, lam)
        if lam > 0:
            assert not verify_at_least_tau(CutCertificate.empty(g.n), g, lam)
    with pytest.raises(ValueError):
        verify_at_least_tau(CutCertificate.identity(4), C4, 3)


def test_at_least_tau_singleton_rows_on_cycle():
    A = CutCertificate(4, tuple(tuple(chi(4, {v})) for v in range(2, 5)))
    decided = verify_at_least_tau(A, C4, 2)
    expected = all(scipy_iota(A, C4, S) >= 2 - 1e-9 for S in shores(4))
    assert decided == expected


def test_con_cert_examples():
    assert verify_con_cert(CutCertificate.identity(4), C4) == (True, 2)
    assert verify_con_cert(CutCertificate.empty(3), P3) == (False, 0)
    with pytest.raises(ValueError):
        verify_con_cert(CutCertificate.identity(4), generate("disjoint_union", 4, parts=[2, 2]))


def test_con_cert_single_all_ones_row():
    A = CutCertificate(3, ((1, 1, 1),))
    rep = con_cert_report(A, K3)
    # a disconnected w' with total weight 3 exists (put it all on one edge)
    assert not rep.ok
    w2 = rep.counterexample
    assert A.answers(w2) == A.answers(K3.weight_vector())
    assert all(x >= 0 for x in w2)
    g2 = make_graph(3, [(u, v, x) for (u, v), x in zip(ref.slot_pairs(3), w2) if x])
    assert len(ref.components(g2)) > 1


def test_counterexamples_are_genuine():
    rng = np.random.default_rng(6)
    seen = 0
    for _ in range(30):
        A, g = random_instance(rng, 5)
        rep = con_cert_report(A, g)
        if rep.ok:
            continue
        seen += 1
        w2 = rep.counterexample
        assert all(x >= 0 for x in w2) and A.answers(w2) == A.answers(g.weight_vector())
        assert ref.cut_weight(make_graph(5, [(u, v, x) for (u, v), x in zip(ref.slot_pairs(5), w2) if x]),
                              rep.shore) == 0
    assert seen > 0


def test_verified_certificates_are_sound():
    # every graph the certificate cannot tell apart from g must be connected
    rng = np.random.default_rng(8)
    checked = 0
    for _ in range(40):
        A, g = random_instance(rng, 5)
        ok, tau = verify_con_cert(A, g)
        if not ok or not A.rows:
            continue
        checked += 1
        M = np.array([[float(x) for x in r] for r in A.rows])
        w = np.array([float(x) for x in g.weight_vector()])
        for _ in range(10):
            res = linprog(rng.normal(size=len(w)), A_eq=M, b_eq=M @ w, bounds=(0, None), method="highs")
            if res.status != 0:
                continue
            w2 = [x if x > 1e-9 else 0 for x in res.x]
            g2 = make_graph(5, [(u, v, Fraction(x).limit_denominator(10**6))
                                for (u, v), x in zip(ref.slot_pairs(5), w2) if x])
            assert len(ref.components(g2)) == 1
            assert float(min(ref.cut_weight(g2, S) for S in ref.shores(5))) >= float(tau) - 1e-6
    assert checked > 0


def test_con_cert_monotone_in_rows():
    rng = np.random.default_rng(9)
    for _ in range(15):
        A, g = random_instance(rng, 5)
        ok, tau = verify_con_cert(A, g)
        extra = A.with_row(tuple(int(x) for x in rng.integers(-2, 3, num_slots(5))))
        ok2, tau2 = verify_con_cert(extra, g)
        assert ok2 >= ok and tau2 >= tau


def test_mincut_cert_examples():
    g = generate("erdos_renyi", 5, 3, p=0.8, max_weight=3)
    lam, S = min_cut_brute(g)
    assert verify_mincut_cert(CutCertificate.identity(5), g)
    k2 = make_graph(2, [(1, 2, 1)])
    assert not verify_mincut_cert(CutCertificate.empty(2), k2)
    X = cert_to_witness(CutCertificate.identity(5), g, lam)
    A = witness_to_cert(X, g)
    assert verify_mincut_cert(A.with_row(tuple(chi(5, S))), g)


# --- witnesses ----------------------------------------------------------------

def test_cert_to_witness_identity_cycle():
    X = cert_to_witness(CutCertificate.identity(4), C4, 2)
    assert is_feasible(X, C4) and X.rank() <= 6


def test_cert_to_witness_full_incidence_gives_incidence():
    g = generate("complete", 4)
    lam, _ = min_cut_brute(g)
    X = cert_to_witness(CutCertificate.cut_incidence(4), g, lam)
    w = g.weight_vector()
    assert all(sum(x * we for x, we in zip(r, w)) >= lam for r in X.rows)
    M = CutRankWitness(4, tuple(map(tuple, universal_cut_incidence(4).tolist())), lam)
    assert is_feasible(M, g)


def test_cert_to_witness_rejects_non_certificate():
    with pytest.raises(ValueError):
        cert_to_witness(CutCertificate.empty(4), C4, 1)


def test_witness_to_cert_from_incidence():
    for g in (C4, generate("complete", 5), generate("path", 5)):
        lam, _ = min_cut_brute(g)
        M = CutRankWitness(g.n, tuple(map(tuple, universal_cut_incidence(g.n).tolist())), lam)
        A = witness_to_cert(M, g)
        assert A.k == exact_rank(universal_cut_incidence(g.n)) and verify_at_least_tau(A, g, lam)


def test_witness_to_cert_single_row():
    S = frozenset({2})
    row = [tuple(chi(4, S))]
    X = CutRankWitness(4, tuple(row), 2, shores=(S,))
    with pytest.raises(ValueError):
        witness_to_cert(X, C4)  # a certificate needs every shore's row
    A = CutCertificate(4, tuple(row))
    # the single constraint leaves every other shore free
    assert verify_at_least_tau(A, C4, 2) == all(scipy_iota(A, C4, T) >= 2 - 1e-9 for T in shores(4))


def test_infeasible_witness_rejected():
    rows = [tuple(r) for r in universal_cut_incidence(4).tolist()]
    rows[0] = tuple(2 * x for x in rows[0])
    with pytest.raises(ValueError):
        witness_to_cert(CutRankWitness(4, tuple(rows), 1), C4)


def test_round_trip_keeps_rank():
    rng = np.random.default_rng(10)
    done = 0
    while done < 5:
        A, g = random_instance(rng, 4)
        ok, tau = verify_con_cert(A, g)
        if not ok:
            continue
        X = cert_to_witness(A, g, tau)
        B = witness_to_cert(X, g)
        assert X.rank() <= exact_rank(A.rows) and B.k == X.rank()
        assert verify_at_least_tau(B, g, tau)
        done += 1


# --- cycle bound ----------------------------------------------------------------

def test_cycle_bound_four():
    M = CutRankWitness(4, tuple(map(tuple, universal_cut_incidence(4).tolist())), 1)
    res = cycle_rank_check(M, 4)
    assert res.certified and res.rank_y_prime == 2 and res.normalized_trace == 2
    assert res.bound == 1


def test_cycle_bound_eight():
    M = CutRankWitness(8, tuple(map(tuple, universal_cut_incidence(8).tolist())), 1)
    res = cycle_rank_check(M, 8)
    assert res.certified and res.rank_y_prime >= 2


def test_cycle_bound_rejects_infeasible():
    rows = [tuple(r) for r in universal_cut_incidence(6).tolist()]
    rows[3] = tuple(0 for _ in rows[3])
    res = cycle_rank_check(CutRankWitness(6, tuple(rows), 1), 6)
    assert not res.certified and "tau" in res.reason


def test_cycle_bound_needs_even_n():
    with pytest.raises(ValueError):
        cycle_rank_check(CutRankWitness(5, tuple(map(tuple, universal_cut_incidence(5).tolist())), 1), 5)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_random_cycle_witnesses(n):
    rng = np.random.default_rng(n)
    g = generate("cycle", n)
    for _ in range(20):
        X = random_cycle_witness(n, rng, tau=int(rng.integers(1, 3)))
        assert is_feasible(X, g)
        res = cycle_rank_check(X, n)
        assert res.certified and ref.rank(X.rows) >= n / 4


# --- one-query learning -------------------------------------------------------

@pytest.mark.parametrize("g, answer", [(P3, 5), (generate("edgeless", 4), 0), (generate("complete", 4), 63)])
def test_learn_examples(g, answer):
    o = QueryOracle(g)
    learned = learn_simple_graph_one_query(o)
    assert learned == g and o.ledger.linear == 1
    assert o.reveal().weight_vector() == learned.weight_vector()
    assert QueryOracle(g).linear_query([1 << j for j in range(num_slots(g.n))]) == answer


def test_learn_rejects_weighted_answer():
    with pytest.raises(ValueError):
        learn_simple_graph_one_query(QueryOracle(make_graph(3, [(1, 2, Fraction(1, 2))])))
