import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from heegaard_atlas.groupcalc import (
    AbelianGroup,
    Exhausted,
    Index,
    MatrixAssignment,
    check_homomorphism,
    closure,
    determinant,
    enumerate_cosets,
    homology_h1,
    integer_inverse,
    klein_four,
    matmul,
    perm_from_cycles,
    psl_2_7,
    quotient_search,
    smith_normal_form,
    todd_coxeter,
    verify_quotient_witness,
)
from heegaard_atlas.groupcalc.quotients import QuotientWitness
from heegaard_atlas.presentation import Presentation
from heegaard_atlas.words import invert, letter_generator, letter_sign, rotate

import oracles

POINCARE = Presentation.from_strings("ab", ["a^4ba^-1b", "b^-2a^-1ba^-1"])
RP3RP3 = Presentation.from_strings("ab", ["a^2", "b^2"])
BRIESKORN = Presentation.from_strings("ab", ["a^2b^3", "a(b^-1a^-1)^6b^-1"])

SMALL = [
    (["a^3", "b^2", "abab"], 6),
    (["a^3", "b^3", "(ab)^2"], 12),
    (["a^2", "b^3", "(ab)^4"], 24),
    (["a^2", "b^3", "(ab)^5"], 60),
    (["a^4", "b^2", "(ab)^2"], 8),
    (["a^5", "b^2", "baba"], 10),
    (["a^4", "a^2b^-2", "b^-1aba"], 8),
]


def sympy_order(p):
    F = free_group(",".join(p.generators))
    F_group, gens = F[0], F[1:]
    rels = []
    for r in p.relators:
        x = F_group.identity
        for t in r.letters:
            x = x * gens[letter_generator(t)] ** letter_sign(t)
        rels.append(x)
    return FpGroup(F_group, rels).order()


class TestToddCoxeter:
    @pytest.mark.parametrize("strategy", ["hlt", "felsch"])
    def test_poincare_order_120(self, strategy):
        assert todd_coxeter(POINCARE, strategy=strategy) == Index(120)

    def test_poincare_against_sympy(self):
        assert sympy_order(POINCARE) == 120

    def test_poincare_has_sl25_image(self):
        # a surjection onto SL(2,5) bounds the order from below independently of coset enumeration
        p = 5
        elems = oracles.sl2(p)
        words = [[(letter_generator(t), letter_sign(t)) for t in r.letters] for r in POINCARE.relators]
        ident = ((1, 0), (0, 1))
        for x in elems:
            for y in elems:
                if all(oracles.mat_eval(w, (x, y), p) == ident for w in words):
                    if len(oracles.generated([x, y], p)) == 120:
                        return
        pytest.fail("no surjection onto SL(2,5)")

    @pytest.mark.parametrize("rels,order", SMALL)
    @pytest.mark.parametrize("strategy", ["hlt", "felsch"])
    def test_small_groups(self, rels, order, strategy):
        p = Presentation.from_strings("ab", rels)
        assert todd_coxeter(p, strategy=strategy) == Index(order)

    @pytest.mark.parametrize("rels,order", SMALL)
    def test_small_groups_sympy(self, rels, order):
        assert sympy_order(Presentation.from_strings("ab", rels)) == order

    def test_subgroup_index(self):
        assert todd_coxeter(RP3RP3, [RP3RP3.word("ab")]) == Index(2)
        assert todd_coxeter(RP3RP3, [RP3RP3.word("ab")], strategy="felsch") == Index(2)
        assert todd_coxeter(POINCARE, [POINCARE.word("a")]) == Index(12)

    @pytest.mark.parametrize("p,sub", [(POINCARE, ""), (RP3RP3, "ab")], ids=["poincare", "rp3rp3"])
    def test_invariant_under_rotation_and_inversion(self, p, sub):
        # every rotation of each relator, with and without inversion
        h = [p.word(sub)] if sub else []
        expected = todd_coxeter(p, h)
        assert isinstance(expected, Index)
        r1, r2 = p.relators
        for k1 in range(len(r1)):
            for k2 in range(len(r2)):
                for flips in range(4):
                    a, b = rotate(r1, k1), rotate(r2, k2)
                    a = invert(a) if flips & 1 else a
                    b = invert(b) if flips & 2 else b
                    q = Presentation(p.alphabet, (a, b))
                    assert todd_coxeter(q, h) == expected
                    assert todd_coxeter(q, h, strategy="felsch") == expected

    def test_infinite_group_exhausts(self):
        z2 = Presentation.from_strings("ab", ["aba^-1b^-1"])
        assert todd_coxeter(z2, max_cosets=500) == Exhausted(500)
        assert todd_coxeter(z2, max_cosets=500, strategy="felsch") == Exhausted(500)

    def test_table_permutations_satisfy_relators(self):
        table = enumerate_cosets(POINCARE)
        perms = table.permutations()
        assert len(perms[0]) == 120
        for r in POINCARE.relators:
            pt = list(range(120))
            for t in r.letters:
                g = perms[letter_generator(t)]
                if letter_sign(t) < 0:
                    inv = [0] * 120
                    for i, j in enumerate(g):
                        inv[j] = i
                    g = inv
                pt = [g[i] for i in pt]
            assert pt == list(range(120))


class TestSmith:
    matrices = st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))

    @settings(max_examples=200, deadline=None)
    @given(matrices)
    def test_properties_and_oracle(self, m):
        d, U, V = smith_normal_form(m)
        prod = matmul(matmul(U, m), V)
        rows, cols = len(m), len(m[0])
        for i in range(rows):
            for j in range(cols):
                assert prod[i][j] == (d[i] if i == j else 0)
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        nz = [x for x in d if x]
        assert all(x > 0 for x in nz)
        assert d[:len(nz)] == nz  # zeros trail
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert nz == oracles.invariant_factors(m)

    def test_empty_and_zero(self):
        assert smith_normal_form([], ncols=2)[0] == []
        assert smith_normal_form([[0, 0]])[0] == [0]

    def test_determinant(self):
        assert determinant([[2, 1], [7, 4]]) == 1
        assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


class TestHomology:
    @pytest.mark.parametrize("rels,rank,torsion", [
        (["a^4ba^-1b", "b^-2a^-1ba^-1"], 0, ()),
        (["a^2", "b^2"], 0, (2, 2)),
        (["a^2b^2a^-1ba^-1b^2", "ab^2a^2b^-1ab^-1a"], 0, (5, 5)),
        (["ab^2a^-1b^2", "a^-1ba^-2b^-1a^-1"], 0, (4, 4)),
        (["aba^-1b^-1a^-1bab^-1", "ba^-1bab^-1a^-1b^-1a"], 2, ()),
        (["ab^-1a^-1b^-1aba^-1b", "aba^-2bab^-3"], 1, ()),
        (["a^2b^3", "a(b^-1a^-1)^6b^-1"], 0, ()),
        (["b^-1a^4b^-1a^-1b^-1a^4b^-1a^-1b^-1a^-1", "b^5a^-5"], 1, (5,)),
    ])
    def test_caption_table(self, rels, rank, torsion):
        p = Presentation.from_strings("ab", rels)
        assert homology_h1(p) == AbelianGroup(rank, torsion)

    def test_weeks_exponent_matrix_oracle(self):
        assert oracles.invariant_factors([[0, 5], [5, 0]]) == [5, 5]

    def test_printing(self):
        assert str(AbelianGroup(0, (2, 2))) == "Z/2 + Z/2"
        assert str(AbelianGroup(1, (5,))) == "Z + Z/5"
        assert str(AbelianGroup()) == "0"
        with pytest.raises(ValueError):
            AbelianGroup(0, (2, 3))


HEIS = Presentation.from_strings("ab", ["aba^-1b^-1a^-1bab^-1", "ba^-1bab^-1a^-1b^-1a"])
SOL = Presentation.from_strings("ab", ["ab^-1a^-1b^-1aba^-1b", "aba^-2bab^-3"])
HEIS_M = MatrixAssignment({"a": [[1, 1, 0], [0, 1, 0], [0, 0, 1]], "b": [[1, 0, 0], [0, 1, 1], [0, 0, 1]]})
SOL_M = MatrixAssignment({"a": [[3, -1, 0], [1, 0, 0], [0, 0, 1]], "b": [[1, 0, 0], [0, 1, 1], [0, 0, 1]]})


class TestMatrices:
    def test_heisenberg_and_sol(self):
        assert check_homomorphism(HEIS, HEIS_M)
        assert check_homomorphism(SOL, SOL_M)

    @pytest.mark.parametrize("p,m", [(HEIS, HEIS_M), (SOL, SOL_M)])
    def test_sign_flip_detected(self, p, m):
        r = p.relators[0]
        letters = list(r.letters)
        letters[0] = -letters[0]
        from heegaard_atlas.words import Word
        bad = Presentation(p.alphabet, (Word.from_letters(letters, p.alphabet),))
        assert not check_homomorphism(bad, m)

    def test_inverse_and_validation(self):
        m = [[3, -1, 0], [1, 0, 0], [0, 0, 1]]
        assert matmul(m, integer_inverse(m)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        with pytest.raises(ValueError):
            MatrixAssignment({"a": [[2, 0], [0, 1]], "b": [[1, 0], [0, 1]]})


def apply_perm_word(word, images):
    # independent evaluation: act on points directly, right action
    n = len(next(iter(images.values())))
    names = word.alphabet.names
    pts = list(range(n))
    for t in word.letters:
        g = images[names[letter_generator(t)]]
        if letter_sign(t) < 0:
            g = [g.index(i) for i in range(n)]
        pts = [g[i] for i in pts]
    return pts


class TestQuotients:
    def test_rp3rp3_onto_klein_four(self):
        w = quotient_search(RP3RP3, klein_four())
        assert w is not None and w.surjective and verify_quotient_witness(RP3RP3, w)
        for r in RP3RP3.relators:
            assert apply_perm_word(r, w.images) == list(range(4))

    def test_brieskorn_onto_order_168(self):
        target = psl_2_7()
        assert len(closure(target, 7)) == 168
        w = quotient_search(BRIESKORN, target)
        assert w is not None and verify_quotient_witness(BRIESKORN, w)
        for r in BRIESKORN.relators:
            assert apply_perm_word(r, w.images) == list(range(7))
        assert len(closure(list(w.images.values()), 7)) == 168

    def test_no_quotient(self):
        # the Poincare group is perfect, so it has no map onto Z/2
        z2 = (perm_from_cycles("(1,2)", 2),)
        assert quotient_search(POINCARE, z2) is None

    def test_forged_witness_rejected(self):
        ident = tuple(range(4))
        forged = QuotientWitness(klein_four(), {"a": ident, "b": ident}, True)
        assert not verify_quotient_witness(RP3RP3, forged)
        bad = QuotientWitness(klein_four(), {"a": (1, 2, 3, 0), "b": ident}, False)
        assert not verify_quotient_witness(RP3RP3, bad)
