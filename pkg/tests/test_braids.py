import pytest
from hypothesis import given
from hypothesis import strategies as st

from krbraid.braids import (
    BraidParseError,
    BraidWord,
    InvariantViolation,
    QuasiPositiveWitness,
    ResolvedWord,
    all_braid_words,
    all_resolved_words,
    canonical_key,
    canonical_resolved_key,
    enumerate_resolutions,
    find_reduction,
    free_reduce,
    parse_braid,
    parse_resolved,
    replay_isotopies,
    resolution,
    verify_witness,
)


@st.composite
def braids(draw, max_strands=4, max_len=8):
    b = draw(st.integers(2, max_strands))
    gens = st.integers(1, b - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return BraidWord(b, tuple(draw(st.lists(gens, max_size=max_len))))


@st.composite
def resolved(draw, max_strands=5, max_len=7):
    b = draw(st.integers(2, max_strands))
    return ResolvedWord(b, tuple(draw(st.lists(st.integers(1, b - 1), max_size=max_len))))


def test_parse_and_format_roundtrip():
    B = parse_braid("b=3; w= s1 -s2 s1")
    assert B.letters == (1, -2, 1) and B.strands == 3
    assert parse_braid(B.format()) == B
    mu = parse_resolved("b=3; w= t2 t1 t2")
    assert mu.letters == (2, 1, 2) and parse_resolved(mu.format()) == mu


@pytest.mark.parametrize(
    "text", ["b=2; w= s0", "b=2; w= s2", "w= s1", "b=2; w= x1", "b=0; w=", "b=2 w= s1"]
)
def test_parse_errors(text):
    with pytest.raises(BraidParseError):
        parse_braid(text)


def test_statistics():
    B = parse_braid("b=3; w= s1 s1 -s2")
    assert (B.c_plus, B.c_minus, B.writhe, B.sl) == (2, 1, 1, -2)
    assert B.stats() == (1, 3, 2, 1, -2)
    assert parse_braid("b=2; w=").sl == -2


def test_markov_moves():
    B = parse_braid("b=2; w= s1 s1")
    assert B.stabilize_pos() == BraidWord(3, (1, 1, 2))
    assert B.stabilize_neg().destabilize() == B
    assert B.mirror() == BraidWord(2, (-1, -1))
    assert B.conjugate((1,)).letters == (-1, 1, 1, 1)
    with pytest.raises(BraidParseError):
        parse_braid("b=3; w= s2 s2").destabilize()


@given(braids())
def test_canonical_key_is_conjugation_invariant(B):
    k = canonical_key(B)
    assert canonical_key(B.rotate(1)) == k
    for i in range(1, B.strands):
        assert canonical_key(B.conjugate((i,))) == k
        assert canonical_key(B.conjugate((-i,))) == k
    assert canonical_key(B.free_reduce()) == k


def test_canonical_key_distinguishes_strand_count():
    assert canonical_key(BraidWord(2, ())) != canonical_key(BraidWord(3, ()))


@given(braids())
def test_free_reduce_idempotent(B):
    w = free_reduce(B.letters)
    assert free_reduce(w) == w
    assert all(w[p] != -w[p + 1] for p in range(len(w) - 1))


def test_quasi_positive_witness():
    wit = QuasiPositiveWitness((((2,), 1), ((), 2)))
    B = BraidWord(3, free_reduce(wit.expand()))
    assert verify_witness(B, wit)
    assert not verify_witness(BraidWord(3, (1, 2)), wit)
    assert not verify_witness(B, QuasiPositiveWitness((((2,), -1), ((), 2))))


def test_resolutions():
    B = parse_braid("b=2; w= s1 -s1")
    rs = enumerate_resolutions(B)
    assert len(rs) == 4
    r = resolution(B, (1, 1))
    assert r.word.letters == (1, 1)
    assert (r.c_plus, r.c_minus, r.hdeg) == (1, 1, 0)
    assert resolution(B, (1, 0)).hdeg == -1
    assert resolution(B, (0, 1)).hdeg == 1
    assert resolution(B, (1, 0)).shift(3) == 1


@pytest.mark.parametrize(
    "text,kind,index,position",
    [
        ("b=2; w= t1 t1", "square", 1, 0),
        ("b=4; w= t3 t2 t1", "unique_max", 3, 2),
        ("b=3; w= t2 t1 t2", "triangle", 2, 0),
    ],
)
def test_find_reduction_examples(text, kind, index, position):
    step = find_reduction(parse_resolved(text))
    assert (step.kind, step.index, step.position) == (kind, index, position)


@given(resolved())
def test_find_reduction_replays(mu):
    if not mu.letters:
        return
    step = find_reduction(mu)
    assert replay_isotopies(mu.letters, step.isotopies) == step.word.letters
    assert canonical_resolved_key(step.word) == canonical_resolved_key(mu)


def test_find_reduction_exhaustive_small():
    # every nonempty word on up to 4 strands, length up to 5
    count = 0
    for b in range(2, 5):
        for mu in all_resolved_words(b, 5, min_len=1):
            find_reduction(mu)
            count += 1
    assert count == 5 + 62 + 363


def test_illegal_swap_rejected():
    with pytest.raises(InvariantViolation):
        replay_isotopies((1, 2), [("swap", 0)])


def test_enumeration_counts():
    assert sum(1 for _ in all_braid_words(3, 2)) == 1 + 4 + 16
    assert sum(1 for _ in all_resolved_words(4, 2)) == 1 + 3 + 9
    assert list(all_braid_words(1, 3)) == [BraidWord(1, ())]
