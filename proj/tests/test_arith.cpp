#include "latjac/arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latjac;

namespace {

QMatrix qm(const std::vector<std::vector<int>>& rows) {
    QMatrix M(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
    return M;
}

QVec qv(std::initializer_list<int> xs) {
    QVec v;
    for (int x : xs) v.push_back(Q(x));
    return v;
}

}  // namespace

TEST(Rational, StringRoundTrip) {
    EXPECT_EQ(to_string(Q(3, 6)), "1/2");
    EXPECT_EQ(to_string(Q(-4, 2)), "-2");
    EXPECT_EQ(parse_rational("-7/21"), Q(-1, 3));
    EXPECT_EQ(floor_q(Q(-1, 3)), -1);
    EXPECT_EQ(frac_part(Q(-1, 3)), Q(2, 3));
}

TEST(Cyclotomic, Roots) {
    EXPECT_EQ(Cyclotomic::root(0, 12), Cyclotomic(12, 1));
    EXPECT_EQ(Cyclotomic::root(6, 12), Cyclotomic(12, -1));
    Cyclotomic w = Cyclotomic::root(4, 12);
    EXPECT_TRUE((w * w + w + Cyclotomic(12, 1)).is_zero());
    for (int a = -13; a < 13; ++a)
        for (int b = -5; b < 7; ++b)
            EXPECT_EQ(Cyclotomic::root(a, 12) * Cyclotomic::root(b, 12), Cyclotomic::root(a + b, 12));
}

TEST(Cyclotomic, TraceOfPowers) {
    for (int M : {1, 5, 8, 12, 24, 60}) {
        for (int j = 0; j < 2 * M; ++j) {
            Cyclotomic s(M);
            for (int a = 0; a < M; ++a) s += Cyclotomic::root((long long)j * a, M);
            EXPECT_EQ(s, Cyclotomic(M, (j % M == 0) ? M : 0)) << M << " " << j;
        }
    }
}

TEST(Cyclotomic, ConjugateIsInverseOnRoots) {
    for (int a = 0; a < 24; ++a) {
        Cyclotomic z = Cyclotomic::root(a, 24);
        EXPECT_EQ(z * z.conj(), Cyclotomic(24, 1));
    }
    EXPECT_EQ(Cyclotomic::e(Q(1, 8), 24), Cyclotomic::root(3, 24));
}

TEST(LinearAlgebra, Rref) {
    auto z = rref(QMatrix(2, 3));
    EXPECT_EQ(z.rank(), 0u);
    auto id = rref(QMatrix::identity(3));
    EXPECT_EQ(id.rank(), 3u);
    EXPECT_EQ(id.space, QSubspace::full(3));
    auto r = rref(qm({{1, 2}, {2, 4}}));
    ASSERT_EQ(r.rank(), 1u);
    EXPECT_EQ(r.space.basis()[0], qv({1, 2}));
}

TEST(LinearAlgebra, Kernel) {
    EXPECT_EQ(kernel(QMatrix::identity(3)).dim(), 0u);
    EXPECT_EQ(kernel(qm({{1, -1}})), QSubspace::span({qv({1, 1})}, 2));
    EXPECT_EQ(kernel(qm({{1, 2}, {2, 4}})), QSubspace::span({qv({2, -1})}, 2));
}

TEST(LinearAlgebra, Intersect) {
    auto A = QSubspace::span({qv({1, 1}), qv({0, 1})}, 2);
    auto e1 = QSubspace::span({qv({1, 0})}, 2), e2 = QSubspace::span({qv({0, 1})}, 2);
    EXPECT_EQ(intersect(A, A), A);
    EXPECT_EQ(intersect(e1, e2).dim(), 0u);
    EXPECT_EQ(intersect(A, e1), e1);
    EXPECT_THROW(intersect(e1, QSubspace::full(3)), std::invalid_argument);
}

TEST(LinearAlgebra, Preimage) {
    auto M = qm({{1, 2, 0}, {0, 1, 1}});
    EXPECT_EQ(preimage(M, QSubspace::full(2)), QSubspace::full(3));
    EXPECT_EQ(preimage(QMatrix(2, 3), QSubspace(2)), QSubspace::full(3));
    auto S = QSubspace::span({qv({1, 0})}, 2);
    EXPECT_EQ(preimage(QMatrix::identity(2), S), S);
}

TEST(LinearAlgebra, RandomProperties) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 40; ++it) {
        size_t r = 1 + it % 4, c = 1 + (it / 4) % 5;
        QMatrix M(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) M(i, j) = Q(d(rng), 1 + (it % 3));
        EXPECT_EQ(rref(M).rank() + kernel(M).dim(), c);
        QSubspace full = QSubspace::full(c);
        EXPECT_EQ(preimage(M, image(M, full)), full);
        std::vector<QVec> rows;
        for (int k = 0; k < 2; ++k) {
            QVec v(r);
            for (auto& x : v) x = d(rng);
            rows.push_back(v);
        }
        QSubspace S = QSubspace::span(rows, r);
        QSubspace P = preimage(M, S);
        for (const auto& b : P.basis()) EXPECT_TRUE(S.contains(M.apply(b)));
    }
}
