import numpy as np
import pytest

from nottaut.dfao import (
    AutomatonFormatError,
    Dfao,
    emit_dot,
    emit_tsv,
    parse_json,
    parse_tsv,
)
from nottaut.gf2m import GF4


def by_element(fixture_tables):
    return {f"{fx.family}:{fx.param}:{fx.element}": fx.automaton for fx in fixture_tables}


@pytest.fixture(scope="module")
def fx(fixture_tables):
    return by_element(fixture_tables)


def test_eval_examples(fx):
    a = fx["q8:0:s1"]
    assert GF4.to_token(a.eval(1)) == "1"  # state 1 -> state 3, labeled 1
    assert GF4.to_token(a.eval(2)) == "s2"  # state 1 -> state 4
    assert a.eval(0) == a.out[a.start]


def test_series_of_matches_eval(fx):
    a = fx["d4:1:t1"]
    srs = a.series_of(300)
    for n in (0, 1, 2, 3, 17, 63, 64, 255, 299):
        assert srs.coefficient(n) == a.eval(n)


def test_series_starts_like_nottingham(fixture_tables):
    for item in fixture_tables:
        srs = item.automaton.series_of(4)
        assert srs.coefficient(0) == 0 and srs.coefficient(1) == 1, item.element


def test_zero_edge_rule_enforced():
    nxt = np.array([[1, 1, 1, 1], [1, 1, 1, 1]], dtype=np.int32)
    out = np.array([0, 1], dtype=np.uint8)
    with pytest.raises(AutomatonFormatError, match="zero-edge"):
        Dfao(GF4, nxt, out, 0)


def test_validation_errors():
    with pytest.raises(AutomatonFormatError, match="target"):
        Dfao(GF4, np.array([[0, 0, 0, 5]]), np.array([0]), 0)
    with pytest.raises(AutomatonFormatError, match="outdegree"):
        Dfao(GF4, np.array([[0, 0, 0]]), np.array([0]), 0)
    with pytest.raises(AutomatonFormatError, match="label"):
        Dfao(GF4, np.array([[0, 0, 0, 0]]), np.array([7]), 0)


def test_minimize_idempotent_and_monotone(fx):
    for key in ("q8:0:s1", "q8:0:s1^2", "d4:s:t2"):
        a = fx[key]
        m = a.minimize()
        assert m.n_states <= a.n_states
        again = m.minimize()
        assert again.n_states == m.n_states
        assert m.equivalent(a)[0]
        assert again.key() == m.key()


def test_minimize_removes_duplicate_state():
    # states 0 and 2 are copies
    nxt = np.array([[0, 1, 2, 0], [1, 1, 1, 1], [0, 1, 2, 0]], dtype=np.int32)
    out = np.array([0, 1, 0], dtype=np.uint8)
    a = Dfao(GF4, nxt, out, 0)
    assert a.minimize().n_states == 2


def test_canonicalize_idempotent(fx):
    a = fx["q8:0:s0"]
    c1 = a.canonicalize()
    c2 = c1.canonicalize()
    assert np.array_equal(c1.next, c2.next) and np.array_equal(c1.out, c2.out)


def test_equivalent_self_and_witness(fx):
    a, b = fx["q8:0:s1"], fx["q8:0:s2"]
    assert a.equivalent(a) == (True, None)
    eq, witness = a.equivalent(b)
    assert not eq and witness == 2  # labels s2 vs s at state 4


def test_witness_is_minimal_on_random_machines():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        a = _random_automaton(rng, n)
        b = _random_automaton(rng, n)
        eq, wit = a.equivalent(b)
        sa, sb = a.series_of(4096), b.series_of(4096)
        diff = np.flatnonzero(sa.coeff_window(0, 4096) ^ sb.coeff_window(0, 4096))
        if eq:
            assert len(diff) == 0
        else:
            assert len(diff) > 0 and wit == int(diff[0])


def _random_automaton(rng, n):
    """Random DFAO with labels repaired to satisfy the zero-edge rule.

    Labels must be constant on each component of the 0-edge functional graph,
    so every state takes the label of its component's cycle representative.
    """
    nxt = rng.integers(0, n, size=(n, 4), dtype=np.int32)
    raw = rng.integers(0, 4, size=n, dtype=np.uint8)
    out = np.zeros(n, dtype=np.uint8)
    for v in range(n):
        w = v
        for _ in range(n):
            w = int(nxt[w, 0])  # now on the cycle
        cyc = [w]
        x = int(nxt[w, 0])
        while x != w:
            cyc.append(x)
            x = int(nxt[x, 0])
        out[v] = raw[min(cyc)]
    return Dfao(GF4, nxt, out, 0)


def test_frobenius_labels(fx, fixture_tables):
    a = fx["q8:0:s1"]
    assert a.frobenius_labels().equivalent(fx["q8:0:s2"])[0]
    assert a.frobenius_labels().frobenius_labels().equivalent(a)[0]
    assert fx["d4:s:t1"].frobenius_labels().equivalent(fx["d4:s2:t2"])[0]


def test_tsv_round_trip(fx):
    a = fx["q8:0:s1^2"]
    text = emit_tsv(a)
    (label, back), = parse_tsv(text)
    assert back.equivalent(a)[0] and back.n_states == a.n_states


def test_tsv_errors():
    with pytest.raises(AutomatonFormatError, match="header"):
        parse_tsv("Foo\t0\t1\t2\t3\tlabel\n1\t1\t1\t1\t1\t0")
    with pytest.raises(AutomatonFormatError, match="label column"):
        parse_tsv("State\t0\t1\t2\t3\n1\t1\t1\t1\t1")
    with pytest.raises(AutomatonFormatError, match="out of range"):
        parse_tsv("State\t0\t1\t2\t3\tlabel\n1\t1\t1\t1\t9\t0")
    with pytest.raises(AutomatonFormatError, match="duplicate"):
        parse_tsv(
            "State\t0\t1\t2\t3\tlabel\n1\t1\t1\t1\t1\t0\n1\t1\t1\t1\t1\t0"
        )


def test_json_round_trip(fx):
    a = fx["q8:0:s1"]
    b = parse_json(a.to_json())
    assert b.equivalent(a)[0]
    with pytest.raises(AutomatonFormatError, match="alphabet"):
        parse_json({"q": 2, "start": 0, "states": [{"out": "0", "next": [0, 0]}]})


def test_emit_dot(fx):
    a = fx["q8:0:s1^2"]
    dot = emit_dot(a)
    assert dot.startswith("digraph") and "Start" in dot
    assert dot.count("->") > a.n_states  # edges present
    trimmed = emit_dot(a, omit_self_loops=True)
    assert len(trimmed) < len(dot)


def test_fixture_state_counts(fixture_tables):
    counts = sorted(fx.states for fx in fixture_tables)
    assert counts == sorted([8, 8, 16, 16, 16, 16, 5, 36, 95, 104, 104, 104, 104, 104, 104])
