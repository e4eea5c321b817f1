#include "latjac/vvmf.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace latjac;

namespace {

GramMatrix A2() { return GramMatrix(IMat{{2, -1}, {-1, 2}}); }

QVec ints(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(qll(x));
    return v;
}

bool in_span(const std::vector<VVMF>& basis, const VVMF& f) {
    std::vector<QVec> rows;
    for (const auto& b : basis) rows.push_back(b.flatten());
    return QSubspace::span(rows, f.flatten().size()).contains(f.flatten());
}

// component mu of a basis form, as a plain list from its smallest exponent
QVec component(const VVMF& f, size_t mu) { return f.coef[mu]; }

}  // namespace

TEST(ThetaSeries, ScalarTwo) {
    GramMatrix G(IMat{{2}});
    auto t = theta_series(G, {0}, 5);
    std::map<Q, int> count;
    for (const auto& [m, r] : t) {
        EXPECT_EQ(r[0] % 2, 0);
        EXPECT_EQ(m, qfrac(r[0] * r[0], 4));
        ++count[m];
    }
    EXPECT_EQ(count[0], 1);
    EXPECT_EQ(count[1], 2);
    EXPECT_EQ(count[4], 2);
    EXPECT_EQ(count.size(), 3u);
}

TEST(ThetaSeries, CountsMatchShortVectors) {
    GramMatrix G = A2();
    auto t = theta_series(G, {0, 0}, 4);
    // class of 0: r = G x, G^-1[r] / 2 = q(x)
    std::map<Q, int> count;
    for (const auto& [m, r] : t) ++count[m];
    std::map<Q, int> direct;
    direct[0] = 1;
    for (const auto& [v, q] : short_vectors(G, qll(3)))
        direct[q] += 2;
    EXPECT_EQ(count, direct);
}

TEST(ThetaDecomposition, ZeroAndRecomposition) {
    long B = 6;
    auto J = jacobi_forms(10, A2(), B);
    ASSERT_EQ(J.space.dim(), 2u);
    VVMF z = theta_decomposition(J, QVec(J.I->size()));
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.weight, qll(9));
    for (const auto& v : J.space.basis()) {
        VVMF h = theta_decomposition(J, v);
        // sum_l theta_l h_l, coefficient of q^n zeta^r for n < B - 1
        std::map<std::pair<long, IVec>, Q> prod;
        DiscriminantForm D(A2());
        for (size_t l = 0; l < D.size(); ++l)
            for (const auto& [e, r] : theta_series(A2(), D.vector_of(l), B))
                for (size_t j = 0; j < h.coef[l].size(); ++j) {
                    Q ex = e + h.offset[l] + qll((long long)j);
                    ASSERT_EQ(ex.get_den(), 1);
                    long n = ex.get_num().get_si();
                    if (n < B - 1) prod[{n, r}] += h.coef[l][j];
                }
        size_t checked = 0;
        for (long n = 0; n < B - 1; ++n)
            for (long a = -6; a <= 6; ++a)
                for (long b = -6; b <= 6; ++b) {
                    IVec r{a, b};
                    Q c = jacobi_coefficient(*J.R, *J.I, v, n, r);
                    auto it = prod.find({n, r});
                    Q p = it == prod.end() ? Q(0) : it->second;
                    EXPECT_EQ(c, p) << n << " " << a << " " << b;
                    checked += c != 0;
                }
        EXPECT_GT(checked, 20u);
    }
}

TEST(ThetaDecomposition, A2WeightNine) {
    auto J = jacobi_forms(9, A2(), 10);
    ASSERT_EQ(J.space.dim(), 1u);
    VVMF h = theta_decomposition(J, J.space.basis()[0]);
    EXPECT_EQ(h.weight, qll(8));
    DiscriminantForm D(A2());
    IVec zero{0, 0};
    size_t z = D.index_of(zero);
    EXPECT_TRUE(std::all_of(h.coef[z].begin(), h.coef[z].end(), [](const Q& x) { return x == 0; }));
    QVec reference = ints({-1, 16, -104, 320, -260, -1248, 3712, -1664, -6890});
    for (size_t mu = 0; mu < D.size(); ++mu) {
        if (mu == z) continue;
        EXPECT_EQ(h.offset[mu], qfrac(2, 3));
        QVec c = component(h, mu);
        ASSERT_EQ(c.size(), reference.size());
        Q s = c[0] / reference[0];
        for (size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], s * reference[j]);
        // antisymmetric: h_-mu = -h_mu
        EXPECT_EQ(h.coef[D.neg(mu)][0], -c[0]);
    }
}

TEST(VVMFBasis, TableOneRows) {
    GramMatrix G(IMat{{-2}});
    DiscriminantForm D(G);
    size_t m0 = D.index_of({0}), m1 = D.index_of({1});
    auto a = vvmf_basis(qfrac(5, 2), G, 6);
    ASSERT_EQ(a.forms.size(), 1u);
    EXPECT_EQ(a.jacobi_gram.rank(), 7u);
    EXPECT_EQ(a.forms[0].offset[m1], qfrac(1, 4));
    EXPECT_EQ(component(a.forms[0], m0), ints({1, -70, -120, -240, -550, -528}));
    EXPECT_EQ(component(a.forms[0], m1), ints({-10, -48, -250, -240, -480, -480}));
    auto b = vvmf_basis(qfrac(9, 2), G, 6);
    ASSERT_EQ(b.forms.size(), 1u);
    EXPECT_EQ(component(b.forms[0], m0), ints({1, 242, 2640, 11040, 30962, 65760}));
    EXPECT_EQ(component(b.forms[0], m1), ints({2, 480, 4322, 13920, 39360, 73920}));
    auto c = vvmf_basis(qfrac(13, 2), G, 6);
    ASSERT_EQ(c.forms.size(), 2u);
    VVMF t1 = c.forms[0], t2 = c.forms[0];
    t1.coef[m0] = ints({28, 0, -433680, -4736160, -21626280, -74216064});
    t1.coef[m1] = ints({-195, -58344, -933595, -6583560, -30703920, -96379920});
    t2.coef[m0] = ints({0, 56, 240, -1440, 704, -960});
    t2.coef[m1] = ints({-1, -120, -9, 1320, 240, -5040});
    EXPECT_TRUE(in_span(c.forms, t1));
    EXPECT_TRUE(in_span(c.forms, t2));
}

TEST(VVMFBasis, StabilizationTransport) {
    // A2 and A2 + E8 share their discriminant form
    GramMatrix big = block_diag(A2(), e8_gram());
    auto a = vvmf_basis(qll(5), A2(), 3);
    auto b = vvmf_basis(qll(5), big, 3);
    ASSERT_EQ(a.forms.size(), b.forms.size());
    auto map = discriminant_isomorphism(DiscriminantForm(big), DiscriminantForm(A2()));
    std::vector<VVMF> moved;
    for (const auto& f : b.forms) moved.push_back(relabel(f, A2(), map));
    for (const auto& f : a.forms) EXPECT_TRUE(in_span(moved, f));
}

TEST(VVMFBasis, OddWithOnlyTwoTorsion) {
    // D4 has discriminant (Z/2)^2, so the antisymmetric part is zero
    GramMatrix D4(IMat{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
    EXPECT_TRUE(vvmf_basis(qll(5), D4, 4).forms.empty());
}

TEST(DiscriminantIsomorphism, PreservesQ) {
    GramMatrix G(IMat{{-10}});
    GramMatrix S = stabilize_positive_definite(G);
    DiscriminantForm a(S), b(G);
    auto map = discriminant_isomorphism(a, b);
    std::vector<char> hit(b.size(), 0);
    for (size_t e = 0; e < a.size(); ++e) {
        EXPECT_EQ(a.q(e), b.q(map[e]));
        hit[map[e]] = 1;
        for (size_t f = 0; f < a.size(); ++f) EXPECT_EQ(map[a.add(e, f)], b.add(map[e], map[f]));
    }
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](char c) { return c; }));
    EXPECT_THROW(discriminant_isomorphism(DiscriminantForm(A2()), DiscriminantForm(GramMatrix(IMat{{6}}))),
                 std::invalid_argument);
}

TEST(WeaklyHolomorphic, OrderZeroAndRoundTrip) {
    auto h = vvmf_basis(qll(5), A2(), 4);
    auto w0 = vvmf_weakly_holomorphic(qll(5), A2(), 0, 4);
    ASSERT_EQ(w0.size(), h.forms.size());
    for (const auto& f : w0) EXPECT_TRUE(in_span(h.forms, f));
    auto w = vvmf_weakly_holomorphic(qll(-1), A2(), 1, 4);
    EXPECT_FALSE(w.empty());
    auto hol = vvmf_basis(qll(11), A2(), 5);
    for (const auto& f : w) {
        for (size_t mu = 0; mu < f.offset.size(); ++mu) EXPECT_GE(f.offset[mu], qll(-1));
        VVMF back = multiply_delta_power(f, 1);
        EXPECT_EQ(back.weight, qll(11));
        EXPECT_TRUE(in_span(hol.forms, back));
    }
}

TEST(PrincipalPart, A2WeightMinusOne) {
    DiscriminantForm D(A2());
    size_t z = D.index_of({0, 0});
    PrincipalPart pp{{{z, qll(-1)}, qll(1)}};
    auto sol = vvmf_with_principal_part(qll(-1), A2(), pp, 4);
    EXPECT_EQ(sol.homogeneous_dim, 0u);
    for (const auto& [mu, m] : sol.form.coordinates()) {
        if (m >= 0) continue;
        Q want = (mu == z && m == -1) ? Q(1) : Q(0);
        EXPECT_EQ(sol.form.at(mu, m), want);
    }
    EXPECT_EQ(sol.form.at(z, qll(-1)), 1);
}

TEST(PrincipalPart, ZeroAndInfeasible) {
    auto zero = vvmf_with_principal_part(qll(-1), A2(), {}, 4);
    EXPECT_TRUE(zero.form.is_zero());
    EXPECT_EQ(zero.homogeneous_dim, 0u);
    DiscriminantForm D(A2());
    size_t mu = D.index_of({0, 1});
    // the even-weight components satisfy h_mu = h_-mu, so a pole on one side only is impossible
    PrincipalPart bad{{{mu, qfrac(-1, 3)}, qll(1)}};
    EXPECT_THROW(vvmf_with_principal_part(qll(-1), A2(), bad, 4), NoSuchForm);
    PrincipalPart offgrid{{{mu, qfrac(-1, 2)}, qll(1)}};
    EXPECT_THROW(vvmf_with_principal_part(qll(-1), A2(), offgrid, 4), NoSuchForm);
    EXPECT_THROW(vvmf_with_principal_part(qll(-1), A2(), {{{mu, qll(1)}, qll(1)}}, 4), std::invalid_argument);
}
