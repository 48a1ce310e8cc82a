import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_forge.errors import SingularMatrix
from scheme_forge.tatra import apply_semilinear, line_system, relation

CASES = [(4, 3), (5, 2), (7, 3), (8, 7), (9, 4), (13, 3), (2, 1), (5, 1)]


def brute_colors(om):
    """Relation label of each pair straight from the definitions on vectors."""
    F, n = om.F, om.n
    reps = [om.rep(i) for i in range(om.size)]
    out = np.empty((om.size, om.size), dtype=np.int64)
    for a, (u1, u2) in enumerate(reps):
        for b, (w1, w2) in enumerate(reps):
            det = F.sub(F.mul(u1, w2), F.mul(u2, w1))
            if det:
                out[a, b] = n + F.dlog(det) % n
            else:
                lam = F.div(w1, u1) if u1 else F.div(w2, u2)
                out[a, b] = F.dlog(lam) % n
    return out


@pytest.mark.parametrize("q,n", CASES)
def test_colors_match_definition(omega, q, n):
    om = omega(q, n)
    assert np.array_equal(om.colors, brute_colors(om))


@pytest.mark.parametrize("q,n", CASES)
def test_representatives_are_canonical(omega, q, n):
    om = omega(q, n)
    for i in range(om.size):
        v = om.rep(i)
        assert om.canonical_rep(*v) == v
        for x in om.K.elements():
            assert om.index(om.F.mul(x, v[0]), om.F.mul(x, v[1])) == i


def test_sizes(omega):
    assert omega(8, 7).size == 63
    assert omega(23, 11).size == 264
    assert omega(7, 1).size == 8
    assert len(line_system(omega(8, 7))) == 9
    assert len(line_system(omega(23, 11))) == 24
    assert all(len(L) == 1 for L in line_system(omega(7, 1)).lines)


def test_form_examples(omega):
    om = omega(8, 7)
    a, b = om.index(1, 0), om.index(0, 1)
    assert om.form(a, b) == 0
    assert om.form(a, a) is None
    for alpha in range(om.size):
        for beta in range(0, om.size, 5):
            f = om.form(alpha, beta)
            for g in range(om.n):
                fg = om.form(alpha, om.scale(g, beta))
                assert (f is None and fg is None) or fg == (f + g) % om.n
            assert f == om.form(beta, alpha)


@pytest.mark.parametrize("q,n", [(9, 4), (13, 3), (7, 3)])
def test_form_well_defined(omega, q, n):
    om = omega(q, n)
    F = om.F
    K = om.K.elements()
    for alpha in range(0, om.size, 3):
        for beta in range(0, om.size, 7):
            u, w = om.rep(alpha), om.rep(beta)
            want = om.form(alpha, beta)
            for x in K:
                for y in K:
                    uu = (F.mul(x, u[0]), F.mul(x, u[1]))
                    ww = (F.mul(y, w[0]), F.mul(y, w[1]))
                    assert om.form_of_vectors(uu, ww) == want


@pytest.mark.parametrize("q,n", CASES)
def test_relations_partition_and_valencies(omega, q, n):
    om = omega(q, n)
    total = np.zeros((om.size, om.size), dtype=np.int64)
    for g in range(n):
        r, s = relation(om, "r", g), relation(om, "s", g)
        assert np.all(r.adjacency.sum(axis=0) == 1) and np.all(r.adjacency.sum(axis=1) == 1)
        assert np.all(s.adjacency.sum(axis=1) == q)
        total += r.adjacency + s.adjacency
    assert np.all(total == 1)
    assert np.array_equal(relation(om, "r", 0).adjacency, np.eye(om.size, dtype=bool))


def test_s0_arc_count(omega):
    assert relation(omega(8, 7), "s", 0).arc_count == 504


@pytest.mark.parametrize("q,n", [(8, 7), (9, 4), (13, 3)])
def test_thin_permutations_compose(omega, q, n):
    om = omega(q, n)
    perms = [relation(om, "r", g).perm for g in range(n)]
    for g in range(n):
        for h in range(n):
            assert np.array_equal(perms[h][perms[g]], perms[(g + h) % n])


@pytest.mark.parametrize("q,n", [(8, 7), (9, 4), (23, 11)])
def test_lines_are_kronecker_blocks(omega, q, n):
    om = omega(q, n)
    AC = om.colors < n
    assert np.array_equal(AC, np.kron(np.eye(q + 1, dtype=bool), np.ones((n, n), dtype=bool)))


@pytest.mark.parametrize("q,n", [(8, 7), (9, 4), (13, 3)])
def test_matching_between_lines(omega, q, n):
    om = omega(q, n)
    C = om.colors
    for L1 in range(q + 1):
        for L2 in range(q + 1):
            if L1 == L2:
                continue
            block = C[L1 * n:(L1 + 1) * n, L2 * n:(L2 + 1) * n]
            for g in range(n):
                hit = block == n + g
                assert np.all(hit.sum(axis=0) == 1) and np.all(hit.sum(axis=1) == 1)


def test_semilinear_examples(omega):
    om = omega(8, 7)
    F = om.F
    ident = apply_semilinear(om, ((1, 0), (0, 1)), 0)
    assert np.array_equal(ident, np.arange(om.size))
    f = apply_semilinear(om, ((F.generator, 0), (0, 1)), 0)
    s0, s1 = om.colors == 7, om.colors == 8
    assert np.array_equal(s1[np.ix_(f, f)], s0)
    with pytest.raises(SingularMatrix):
        apply_semilinear(om, ((1, 1), (1, 1)))


@pytest.mark.parametrize("q,n", [(8, 7), (9, 4), (27, 13), (16, 5)])
@given(data=st.data())
def test_semilinear_label_rule(omega, q, n, data):
    om = omega(q, n)
    F = om.F
    a, b, c, d = (data.draw(st.integers(0, q - 1)) for _ in range(4))
    if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
        return
    j = data.draw(st.integers(0, F.d - 1))
    T = ((a, b), (c, d))
    f = apply_semilinear(om, T, j)
    assert sorted(f.tolist()) == list(range(om.size))
    labels = om.semilinear_label_map(T, j)
    # (alpha, beta) in relation t  ==>  (f alpha, f beta) in relation labels[t]
    assert np.array_equal(om.colors[np.ix_(f, f)], labels[om.colors])
    if om.K.contains(F.sub(F.mul(a, d), F.mul(b, c))) and j == 0:
        assert np.array_equal(labels, np.arange(2 * n))
