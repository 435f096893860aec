import random

import pytest

from braidkit.words import (
    BraidSyntaxError,
    BraidWord,
    Permutation,
    closure_components,
    conjugate,
    crossing_records,
    exponent_sum,
    format_word,
    invert,
    multiply,
    parse_braid_word,
    underlying_permutation,
    word_from_json,
    word_to_json,
)

TX_PLUS = "s1^5 s2^4 s1^6 s2^-1"
LINK_WORD = "s1^3 s2^4 s1^-5 s2^-1"


def random_word(rng, n, max_len):
    if n < 2:
        return BraidWord(n)
    length = rng.randint(0, max_len)
    alphabet = [i for i in range(1 - n, n) if i != 0]
    return BraidWord(n, tuple(rng.choice(alphabet) for _ in range(length)))


class TestParse:
    def test_flype_word(self):
        w = parse_braid_word(TX_PLUS, 3)
        assert len(w) == 16
        assert w.letters == (1,) * 5 + (2,) * 4 + (1,) * 6 + (-2,)

    def test_serialization_pair(self):
        w = parse_braid_word(TX_PLUS, 3)
        assert w.as_pair() == (3, [1, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, -2])

    def test_empty_word_is_identity(self):
        w = parse_braid_word("", 4)
        assert w.n == 4 and w.letters == ()

    def test_index_out_of_range(self):
        with pytest.raises(BraidSyntaxError):
            parse_braid_word("s3 s1", 3)

    def test_zero_exponent_rejected(self):
        with pytest.raises(BraidSyntaxError):
            parse_braid_word("s1^0", 3)

    def test_bad_token(self):
        with pytest.raises(BraidSyntaxError):
            parse_braid_word("x2", 3)

    def test_format_round_trip(self):
        rng = random.Random(0)
        for _ in range(50):
            w = random_word(rng, rng.randint(2, 5), 12)
            assert parse_braid_word(format_word(w), w.n) == w


class TestExponentSum:
    def test_flype_pair_words(self):
        assert exponent_sum(parse_braid_word(TX_PLUS, 3)) == 14
        assert exponent_sum(parse_braid_word("s1^5 s2^-1 s1^6 s2^4", 3)) == 14

    def test_identity(self):
        assert exponent_sum(BraidWord(3)) == 0

    def test_conjugation_invariant(self):
        rng = random.Random(1)
        for _ in range(100):
            n = rng.randint(2, 4)
            w, g = random_word(rng, n, 10), random_word(rng, n, 6)
            assert exponent_sum(conjugate(w, g)) == exponent_sum(w)


class TestGroupOps:
    def test_free_reduction(self):
        assert multiply(BraidWord(3, (1,)), BraidWord(3, (-1,))).letters == ()

    def test_invert(self):
        assert invert(BraidWord(3, (1, 2))).letters == (-2, -1)

    def test_conjugate(self):
        assert conjugate(BraidWord(3, (1,)), BraidWord(3, (2,))).letters == (-2, 1, 2)

    def test_strand_mismatch(self):
        with pytest.raises(ValueError):
            multiply(BraidWord(3, (1,)), BraidWord(4, (1,)))

    def test_full_cancellation(self):
        rng = random.Random(2)
        for _ in range(100):
            w = random_word(rng, rng.randint(2, 5), 12)
            assert multiply(w, invert(w)).letters == ()


class TestPermutation:
    def test_single_generator(self):
        assert underlying_permutation(BraidWord(3, (1,))).images == (2, 1, 3)

    def test_identity(self):
        assert underlying_permutation(BraidWord(3)).images == (1, 2, 3)

    def test_link_word(self):
        # composing the 16 transpositions by hand gives the transposition (2 3)
        assert underlying_permutation(parse_braid_word(LINK_WORD, 3)).images == (1, 3, 2)

    def test_homomorphism(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(2, 5)
            u, v = random_word(rng, n, 8), random_word(rng, n, 8)
            lhs = underlying_permutation(multiply(u, v))
            rhs = underlying_permutation(u).then(underlying_permutation(v))
            assert lhs == rhs

    def test_inverse(self):
        p = Permutation((3, 1, 2))
        assert p.then(p.inverse()).is_identity()


class TestClosureComponents:
    def test_identity_unlink(self):
        assert closure_components(BraidWord(3)).n_components == 3

    def test_link_word_two_components(self):
        comps = closure_components(parse_braid_word(LINK_WORD, 3))
        assert comps.cycles == ((1,), (2, 3))
        assert comps.component(1) == 1 and comps.component(2) == 2

    def test_full_cycle(self):
        assert closure_components(BraidWord(3, (1, 2))).n_components == 1


class TestCrossingRecords:
    def test_single(self):
        recs = crossing_records(BraidWord(2, (1,)))
        assert len(recs) == 1 and recs[0].strands == (1, 2) and recs[0].sign == 1

    def test_repeated_swaps_keep_pair(self):
        recs = crossing_records(BraidWord(2, (1, 1, 1)))
        assert all(r.strands == (1, 2) and r.sign == 1 for r in recs)

    def test_link_word_attribution(self):
        recs = crossing_records(parse_braid_word(LINK_WORD, 3))
        counts = {}
        for r in recs:
            counts[(r.strands, r.sign)] = counts.get((r.strands, r.sign), 0) + 1
        assert counts == {
            ((1, 2), 1): 3,
            ((1, 3), 1): 4,
            ((1, 2), -1): 5,
            ((2, 3), -1): 1,
        }

    def test_sign_sum_is_exponent_sum(self):
        rng = random.Random(4)
        for _ in range(100):
            w = random_word(rng, rng.randint(2, 5), 12)
            assert sum(r.sign for r in crossing_records(w)) == exponent_sum(w)

    def test_record_count_partitions_letters(self):
        rng = random.Random(5)
        for _ in range(50):
            w = random_word(rng, rng.randint(2, 5), 12)
            comps = closure_components(w)
            per = 0
            cross = 0
            for r in crossing_records(w):
                a, b = r.strands
                if comps.component(a) == comps.component(b):
                    per += 1
                else:
                    cross += 1
            assert per + cross == len(w)


def test_json_round_trip():
    rng = random.Random(6)
    for _ in range(30):
        w = random_word(rng, rng.randint(1, 5), 10)
        assert word_from_json(word_to_json(w)) == w
