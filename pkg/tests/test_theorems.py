import pytest

from partialpi.errors import BadParameter, UnknownLemma
from partialpi.structure import p_rank, p_supersoluble
from partialpi.theorems import (
    LEMMA_IDS,
    check_lemma,
    check_theorem_A,
    check_theorem_B,
    check_theorem_C,
    default_checks,
    run_check,
    run_corpus,
)


def test_theorem_A_instances(groups):
    r = check_theorem_A(groups["A4"], 2)
    assert r.status == "pass" and r.conclusion_cases == ("2",)
    r = check_theorem_A(groups["C2^4:C3"], 2)
    assert r.status == "pass" and r.conclusion_cases == ("3",)
    assert r.details["hall_cyclic"] and r.details["constituent_dim"] == 2
    r = check_theorem_A(groups["S4"], 2)
    assert r.status == "vacuous" and not r.hypotheses["order_p2_subgroups_pi"]
    # a second case-3 witness at p = 3
    r = check_theorem_A(groups["C3^4:C4"], 3)
    assert r.status == "pass" and r.conclusion_cases == ("3",)


def test_theorem_B_instances(groups):
    r = check_theorem_B(groups["SL(2,3)"], 2)
    assert r.status == "pass" and "4" in r.conclusion_cases
    r = check_theorem_B(groups["A5"], 2)
    assert r.status == "pass" and r.conclusion_cases == ("3",)
    r = check_theorem_B(groups["A4"], 2)
    assert r.status == "pass" and "2" in r.conclusion_cases
    r = check_theorem_B(groups["C2^4:C3"], 2)
    assert r.status == "pass" and "5" in r.conclusion_cases
    assert r.details["frattini_is_two_maximal_meet"]


def test_theorem_C_instances(groups):
    r = check_theorem_C(groups["C2^4:C3"], 2, 4)
    assert r.status == "pass" and r.conclusion_cases == ("1+2+3",)
    assert (r.details["k"], r.details["m"], r.details["n"]) == (2, 4, 2)
    assert r.details["homogeneous_not_absirr"] and r.details["hall_cyclic"]
    r = check_theorem_C(groups["A4"], 2, 2)
    assert r.status == "vacuous"
    r = check_theorem_C(groups["C3^4:C4"], 3, 9)
    assert r.status == "pass" and r.conclusion_cases == ("1+2+3",)
    with pytest.raises(BadParameter):
        check_theorem_C(groups["S3"], 3, 2)
    with pytest.raises(BadParameter):
        check_theorem_C(groups["S4"], 2, 16)


def test_case1_soundness(corpus):
    """Theorem A reporting case (1) must agree with the structure facts."""
    from partialpi.chiefs import _prime_factors
    for name, G in corpus:
        if G.order > 100:
            continue
        for p in _prime_factors(G.order):
            r = check_theorem_A(G, p, group_name=name)
            if r.hypotheses_hold and "1" in r.conclusion_cases:
                assert p_supersoluble(G, p)
                assert p_rank(G, p) in (None, 1)


def test_lemma_dispatch_and_unknown(groups):
    with pytest.raises(UnknownLemma):
        check_lemma(groups["S3"], "no-such-lemma", {"p": 2})
    with pytest.raises(BadParameter):
        check_lemma(groups["S3"], "prime-order-supersoluble", {})
    assert len(LEMMA_IDS) == 18


def test_lemma_instances(groups):
    r = check_lemma(groups["A4"], "pi-iff-complemented", {"p": 2})
    assert r.status == "pass" and r.details["subgroups_checked"] == 5
    r = check_lemma(groups["A4"], "minimal-normal-order", {"p": 2, "d": 2})
    assert r.status == "vacuous"
    r = check_lemma(groups["S3"], "series-through", {"p": 3})
    assert r.status == "pass"
    r = check_lemma(groups["SL(2,3)"], "cap-from-pi", {"p": 2})
    assert r.status == "pass"
    r = check_lemma(groups["C2^4:C3"], "socle-homogeneous", {"p": 2, "d": 4})
    assert r.status == "pass"
    r = check_lemma(groups["C2^4:C3"], "module-dimension", {"p": 2, "d": 4})
    assert r.status == "pass" and r.conclusion_cases == ("1+2",)
    r = check_lemma(groups["S4"], "p-length-one", {"p": 2, "d": 4})
    assert r.status == "vacuous"
    r = check_lemma(groups["SD16"], "prime-order-supersoluble", {"p": 2})
    assert r.status == "pass"   # 2-groups are 2-supersoluble
    r = check_lemma(groups["S4"], "frattini-factor-hypercenter", {"p": 2})
    assert r.status == "pass"
    r = check_lemma(groups["S4"], "quotient-inheritance", {"p": 2})
    assert r.status == "pass"


def test_zeng_instances(groups):
    # homogeneous x2 case: both sides true at d = 4, both false at d = 2, 8
    for d, lhs in ((2, False), (4, True), (8, False)):
        r = check_lemma(groups["C2^4:C3"], "complement-classification",
                        {"p": 2, "d": d})
        assert r.status == "pass"
        assert r.details["all_complemented"] is lhs, (d, r.details)
    # supersoluble case
    r = check_lemma(groups["C3^2:C2"], "complement-classification",
                    {"p": 3, "d": 3})
    assert r.status == "pass" and r.details["supersoluble"]
    assert r.details["all_complemented"]
    # absolutely irreducible case: noncyclic complement, nothing complemented
    r = check_lemma(groups["F7^2:S3"], "complement-classification",
                    {"p": 7, "d": 7})
    assert r.status == "pass" and not r.details["all_complemented"]
    assert not r.details["cyclic_homogeneous_branch"]


def test_vacuity_honesty_and_report_invariant(corpus):
    reports = run_corpus(corpus, theorem_filter={"A", "B"})
    for r in reports:
        # pass == (not hypotheses_hold) or conclusion_cases nonempty
        assert r.passed == ((not r.hypotheses_hold) or bool(r.conclusion_cases))
        if not r.hypotheses_hold:
            assert r.passed and r.status == "vacuous"


def test_run_corpus_deterministic(corpus):
    f = {"A", "C", "lemma:complement-classification"}
    r1 = run_corpus(corpus, theorem_filter=f, p_filter={2})
    r2 = run_corpus(corpus, theorem_filter=f, p_filter={2})
    lines1 = ["|".join(f"{k}:{v}" for k, v in r.record_fields()) for r in r1]
    lines2 = ["|".join(f"{k}:{v}" for k, v in r.record_fields()) for r in r2]
    assert lines1 == lines2


def test_indeterminate_state():
    from partialpi.config import Caps
    from partialpi.groups import symmetric
    tight = Caps(lattice=4)
    fresh = symmetric(4)  # no cached sweeps: the cap must bite
    r = run_check(fresh, "A", {"p": 2}, caps=tight, group_name="S4")
    assert r.status == "indeterminate"
    assert r.error and "LatticeCapExceeded" in r.error
    assert not r.passed


def test_parallel_groups_match_serial():
    """Distinct groups on distinct threads produce exactly the serial
    reports (the documented concurrency model)."""
    from concurrent.futures import ThreadPoolExecutor
    from partialpi.corpus import builtin_corpus
    corpus = builtin_corpus()
    names = ["S4", "SL(2,3)", "A4", "A5", "C2^4:C3", "S3xS3"]
    serial = {n: check_theorem_B(corpus.group(n), 2, group_name=n)
              for n in names}
    fresh = builtin_corpus()
    with ThreadPoolExecutor(max_workers=4) as pool:
        futures = {n: pool.submit(check_theorem_B, fresh.group(n), 2,
                                  group_name=n) for n in names}
        parallel = {n: f.result() for n, f in futures.items()}
    for n in names:
        assert serial[n].record_fields() == parallel[n].record_fields()


def test_empty_corpus_and_unique_names():
    from partialpi.corpus import Corpus
    assert run_corpus(Corpus(())) == []
    with pytest.raises(ValueError):
        Corpus((("X", "trivial"), ("X", "cyclic:2")))


def test_default_checks_grid(groups):
    ids = {cid for cid, _ in default_checks(groups["C2^4:C3"])}
    assert {"A", "B", "C"} <= ids
    assert any(i.startswith("lemma:") for i in ids)
    ds = [params["d"] for cid, params in default_checks(groups["C2^4:C3"])
          if cid == "C"]
    assert ds == [2, 4, 8]
    assert default_checks(groups["C1"]) == []
