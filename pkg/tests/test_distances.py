import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ganed.distances import (
    EditCosts,
    FrequencyFactors,
    GanedPairwise,
    edit_distance,
    edit_distance_matrix,
    edit_distance_table,
    frequency_term,
    ganed,
    gram_terms,
    mindist,
    mindist_matrix,
    mindist_table,
    ned,
    ned_matrix,
)
from ganed.exceptions import AlphabetMismatchError, LengthMismatchError, ValidationError
from ganed.sax import gaussian_breakpoints, sax_transform
from ganed.sequence import Alphabet, SymbolicSequence, make_sequence, sequences_from_text

from oracles import (
    DP_COLUMNS,
    DP_ROWS,
    DP_TABLE,
    all_binary_strings,
    ed_recursive,
    euclidean_znorm,
    ned_enumerate,
)


@st.composite
def seq_pairs(draw, max_len=12, max_alpha=6):
    alpha = draw(st.integers(2, max_alpha))
    a = Alphabet(alpha)
    sym = st.lists(st.integers(0, alpha - 1), max_size=max_len)
    return SymbolicSequence(tuple(draw(sym)), a), SymbolicSequence(tuple(draw(sym)), a)


lambda_vectors = st.lists(st.floats(0, 1), min_size=1, max_size=3)


# ---- edit distance

def test_marwan_fuad_table_cell_for_cell():
    S, T = sequences_from_text(DP_ROWS, DP_COLUMNS)
    np.testing.assert_array_equal(edit_distance_table(S, T), np.array(DP_TABLE, dtype=float))
    assert edit_distance(*sequences_from_text("MARWAN", "FUAD")) == 5


def test_kitten_sitting():
    assert edit_distance(*sequences_from_text("kitten", "sitting")) == 3 == ed_recursive("kitten", "sitting")


def test_empty_to_abc():
    assert edit_distance(*sequences_from_text("", "abc")) == 3


def test_ed_matches_recursive_oracle_exhaustively():
    strings = all_binary_strings(4)
    seqs = sequences_from_text(*strings)
    D = edit_distance_matrix(seqs)
    for i, s in enumerate(strings):
        for j, t in enumerate(strings):
            assert D[i, j] == ed_recursive(s, t)


def test_table_last_cell_is_distance_with_costs():
    costs = EditCosts(delete=2.0, insert=0.5, substitute=1.5)
    S, T = sequences_from_text("abcab", "bca")
    assert edit_distance_table(S, T, costs)[-1, -1] == edit_distance(S, T, costs)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        edit_distance(make_sequence("ab", Alphabet.sax(2)), make_sequence("ab", Alphabet.sax(3)))


def test_negative_cost_rejected():
    with pytest.raises(ValidationError):
        EditCosts(delete=-1.0)


@given(seq_pairs())
def test_ed_symmetry_and_identity(pair):
    S, T = pair
    assert edit_distance(S, T) == edit_distance(T, S)
    assert edit_distance(S, S) == 0


@given(seq_pairs())
def test_ed_matrix_matches_scalar(pair):
    S, T = pair
    D = edit_distance_matrix([S, T], [T, S])
    assert D[0, 0] == edit_distance(S, T) and D[1, 1] == edit_distance(T, S)


# ---- NED

def test_ned_examples():
    assert ned(*sequences_from_text("a", "b")) == 1.0
    assert ned(*sequences_from_text("ab", "b")) == 0.5
    assert ned(*sequences_from_text("", "")) == 0.0


def test_ned_matches_path_enumeration_exhaustively():
    strings = all_binary_strings(4)
    seqs = sequences_from_text(*strings)
    D = ned_matrix(seqs)
    for i, s in enumerate(strings):
        for j, t in enumerate(strings):
            assert abs(D[i, j] - float(ned_enumerate(s, t))) <= 1e-12


def test_ned_is_not_ed_over_length():
    # one deletion then three matches: weight 1 over a path of length 4
    S, T = sequences_from_text("abab", "bab")
    assert ned(S, T) == 0.25


@given(seq_pairs(max_len=8))
def test_ned_bounds(pair):
    S, T = pair
    v = ned(S, T)
    assert 0.0 <= v <= 1.0
    assert v == ned(T, S)


# ---- GANED

def test_ganed_hand_value():
    assert ganed(*sequences_from_text("MARWAN", "FUAD"), [1.0]) == 4.0


def test_ganed_identical_is_zero():
    S, T = sequences_from_text("AA", "AA")
    assert ganed(S, T, [1, 1]) == 0.0


def test_frequency_term_readings():
    S, T = sequences_from_text("AA", "AA")
    # terms are 2*(2+0)/4 = 1 and 2*(1+1)/4 = 1
    np.testing.assert_array_equal(gram_terms(S, T, 2), [1.0, 1.0])
    assert frequency_term(S, T, [1, 1]) == 1.0
    assert frequency_term(S, T, [1, 1], per_gram=True) == 1.5


def test_clamp_engages_beyond_shorter_length():
    S, T = sequences_from_text("A", "B")
    np.testing.assert_array_equal(gram_terms(S, T, 4), [0.0, 1.0, 2.0, 3.0])
    assert frequency_term(S, T, [1, 1, 1, 1]) == 1.5
    assert ganed(S, T, [1, 1, 1, 1]) == 0.0


def test_per_gram_clamp_gives_zero():
    S, T = sequences_from_text("ABAB", "BABA")
    assert frequency_term(S, T, [1, 1], per_gram=True) > 1
    assert ganed(S, T, [1, 1], per_gram=True) == 0.0


def test_zero_lambdas_give_ed():
    S, T = sequences_from_text("kitten", "sitting")
    assert ganed(S, T, [0, 0, 0]) == edit_distance(S, T)


def test_lambda_out_of_range():
    with pytest.raises(ValidationError):
        FrequencyFactors((1.2,))
    with pytest.raises(ValidationError):
        FrequencyFactors(())


@given(seq_pairs(), lambda_vectors, st.booleans())
def test_ganed_bounds_and_symmetry(pair, lambdas, per_gram):
    S, T = pair
    g = ganed(S, T, lambdas, per_gram=per_gram)
    assert 0.0 <= g <= edit_distance(S, T)
    assert g == ganed(T, S, lambdas, per_gram=per_gram)
    assert ganed(S, S, lambdas, per_gram=per_gram) == 0.0
    assert ganed(S, T, [0.0] * len(lambdas)) == edit_distance(S, T)


@given(seq_pairs(), lambda_vectors, st.integers(0, 2), st.floats(0, 1))
def test_ganed_monotone_in_lambda(pair, lambdas, k, bump):
    S, T = pair
    k = min(k, len(lambdas) - 1)
    raised = list(lambdas)
    raised[k] = max(raised[k], bump)
    assert ganed(S, T, raised) <= ganed(S, T, lambdas)


@settings(max_examples=50)
@given(st.lists(st.text("abc", max_size=8), min_size=1, max_size=6), lambda_vectors, st.booleans())
def test_pairwise_bit_identical_to_scalar(texts, lambdas, per_gram):
    seqs = sequences_from_text(*texts)
    pw = GanedPairwise(seqs, None, 3, per_gram=per_gram)
    D = pw.distances(lambdas)
    for i, s in enumerate(seqs):
        for j, t in enumerate(seqs):
            assert D[i, j] == ganed(s, t, lambdas, per_gram=per_gram)


def test_pairwise_too_many_factors():
    pw = GanedPairwise(sequences_from_text("ab", "ba"), None, 1)
    with pytest.raises(ValidationError):
        pw.distances([0.5, 0.5])


# ---- MINDIST

def test_mindist_hand_value():
    bps = gaussian_breakpoints(3)
    a = Alphabet.sax(3)
    v = mindist(SymbolicSequence((0, 2), a), SymbolicSequence((2, 0), a), 8, bps)
    assert v == pytest.approx(math.sqrt(8 / 2) * math.sqrt(2 * 0.8614**2), abs=1e-3)
    assert v == pytest.approx(2.4364, abs=1e-3)


def test_mindist_adjacent_symbols_are_free():
    bps = gaussian_breakpoints(5)
    a = Alphabet.sax(5)
    assert mindist(make_sequence("abcde", a), make_sequence("bcdee", a), 20, bps) == 0.0


def test_mindist_table_shape():
    t = mindist_table(gaussian_breakpoints(4))
    assert t.shape == (4, 4)
    assert np.all(np.diag(t) == 0) and np.array_equal(t, t.T)


def test_mindist_length_mismatch():
    a = Alphabet.sax(3)
    with pytest.raises(LengthMismatchError):
        mindist(make_sequence("ab", a), make_sequence("abc", a), 8, gaussian_breakpoints(3))


def test_mindist_alphabet_mismatch():
    a = Alphabet.sax(3)
    with pytest.raises(AlphabetMismatchError):
        mindist(make_sequence("ab", a), make_sequence("ac", a), 8, gaussian_breakpoints(4))


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.sampled_from([4, 8, 16]), st.sampled_from([3, 5, 10, 20]))
def test_mindist_lower_bounds_euclidean(seed, N, alpha):
    rng = np.random.default_rng(seed)
    x, y = np.cumsum(rng.standard_normal((2, 64)), axis=1)
    bps = gaussian_breakpoints(alpha)
    d = mindist(sax_transform(x, N, alpha), sax_transform(y, N, alpha), 64, bps)
    assert d <= euclidean_znorm(x, y) + 1e-9


def test_mindist_matrix_matches_scalar():
    rng = np.random.default_rng(3)
    words = [sax_transform(rng.standard_normal(40), 8, 6) for _ in range(5)]
    bps = gaussian_breakpoints(6)
    M = mindist_matrix(words, words, 40, bps)
    for i in range(5):
        for j in range(5):
            assert M[i, j] == pytest.approx(mindist(words[i], words[j], 40, bps), abs=1e-12)
