import random
from itertools import combinations

import pytest

from agpir.errors import BadIndex, ShapeMismatch, TooLarge
from agpir.pir_scheme import Database, SchemeParams, build_scheme
from agpir.sim_harness import (
    collusion_view,
    exhaustive_privacy_oracle,
    exhaustive_security_oracle,
    run_retrieval,
)


@pytest.fixture(scope="module")
def g0_q5():
    return build_scheme(SchemeParams(p=5, genus=0, x=1, t=1, l=1))


@pytest.fixture(scope="module")
def g0_q7():
    return build_scheme(SchemeParams(p=7, genus=0, x=1, t=1, l=1))


@pytest.fixture(scope="module")
def g1_q13():
    return build_scheme(SchemeParams(p=13, genus=1, x=1, t=1, l=1))


def test_run_retrieval_tiny(g0_q7):
    assert g0_q7.n == 3
    db = Database(7, ((3,), (5,)))
    for theta in (1, 2):
        transcript = run_retrieval(g0_q7, db, theta, seed=11)
        assert transcript.decoded == db.files[theta - 1]
        assert set(transcript.timings) == {"store", "query", "respond", "decode"}


def test_run_retrieval_q43_instance():
    inst = build_scheme(SchemeParams(p=43, genus=1, x=16, t=16, l=7, curve=(0, 9)))
    db = Database.random(43, 2, 7, random.Random(1))
    transcript = run_retrieval(inst, db, 2, seed=5)
    assert transcript.decoded == db.files[1]
    assert len(transcript.decoded) == 7


def test_transcript_replay_is_byte_identical(g0_q7):
    db = Database(7, ((1,), (2,)))
    a = run_retrieval(g0_q7, db, 1, seed=3)
    b = run_retrieval(g0_q7, db, 1, seed=3)
    assert a.to_json() == b.to_json()
    c = run_retrieval(g0_q7, db, 1, seed=4)
    assert a.to_json() != c.to_json()


def test_fuzz_thousand_rounds_never_mismatch(g0_q7):
    for seed in range(1000):
        rng = random.Random(seed)
        db = Database.random(7, 2, 1, rng)
        run_retrieval(g0_q7, db, 1 + seed % 2, seed)


def test_collusion_view(g0_q7):
    db = Database(7, ((1,), (2,)))
    transcript = run_retrieval(g0_q7, db, 1, seed=0)
    empty = collusion_view(transcript, [])
    assert empty.servers == () and empty.queries == (((), ()),)
    full = collusion_view(transcript, range(g0_q7.n))
    assert full.queries == transcript.queries
    single = collusion_view(transcript, [1])
    assert single.queries[0][0] == (transcript.queries[0][0][1],)
    with pytest.raises(BadIndex):
        collusion_view(transcript, [g0_q7.n])


def test_privacy_oracle_single_servers_true(g0_q5):
    for n in range(g0_q5.n):
        assert exhaustive_privacy_oracle(g0_q5, [n], 1, 2, num_files=2)


def test_privacy_oracle_negative_control(g0_q5):
    # T + 1 = 2 colluding servers break a T = 1 dimensional privacy code
    for pair in combinations(range(g0_q5.n), 2):
        assert not exhaustive_privacy_oracle(g0_q5, pair, 1, 2, num_files=2)


def test_privacy_oracle_relabeling_invariance(g0_q5):
    assert exhaustive_privacy_oracle(g0_q5, [2, 0, 2], 1, 2, 2) == exhaustive_privacy_oracle(
        g0_q5, [0, 2], 1, 2, 2
    )


def test_privacy_oracle_genus1(g1_q13):
    assert exhaustive_privacy_oracle(g1_q13, [0], 1, 2, num_files=2)
    assert exhaustive_privacy_oracle(g1_q13, [g1_q13.n - 1], 1, 2, num_files=2)


def test_security_oracle(g0_q5):
    db_a = Database(5, ((1,), (2,)))
    db_b = Database(5, ((3,), (0,)))
    for n in range(g0_q5.n):
        assert exhaustive_security_oracle(g0_q5, [n], db_a, db_b)
    assert exhaustive_security_oracle(g0_q5, [0], db_a, db_a)
    # all servers together can decode, so the distributions must differ
    assert not exhaustive_security_oracle(g0_q5, range(g0_q5.n), db_a, db_b)


def test_security_oracle_genus1(g1_q13):
    db_a = Database(13, ((7,),))
    db_b = Database(13, ((11,),))
    assert exhaustive_security_oracle(g1_q13, [3], db_a, db_b)


def test_security_oracle_shape_check(g0_q5):
    with pytest.raises(ShapeMismatch):
        exhaustive_security_oracle(g0_q5, [0], Database(5, ((1,),)), Database(5, ((1,), (2,))))


def test_oracle_cap(g0_q5, monkeypatch):
    monkeypatch.setenv("PIR_AG_MAX_BRUTEFORCE", "10")
    with pytest.raises(TooLarge):
        exhaustive_privacy_oracle(g0_q5, [0], 1, 2, num_files=2)


def test_full_scale_oracle_refused():
    inst = build_scheme(SchemeParams(p=43, genus=0, x=16, t=16, l=5))
    with pytest.raises(TooLarge):
        exhaustive_privacy_oracle(inst, [0], 1, 2, num_files=2)
