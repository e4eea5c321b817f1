#pragma once
// Even integral lattices given by Gram matrices.

#include "latjac/arith.hpp"

#include <utility>
#include <vector>

namespace latjac {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;

IMat identity_imat(size_t n);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_transpose(const IMat& a);
IVec imat_apply(const IMat& a, const IVec& v);
Z det_exact(const IMat& a);
QMatrix to_qmatrix(const IMat& a);
// a^T g a
IMat congruent(const IMat& g, const IMat& a);
long long ivec_dot(const IVec& a, const IVec& b);

class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(IMat g);  // validates symmetry, even diagonal, det != 0

    size_t rank() const { return g_.size(); }
    const IMat& entries() const { return g_; }
    long long operator()(size_t i, size_t j) const { return g_[i][j]; }
    const Z& det() const { return det_; }
    long long abs_det() const;
    // adjugate |L| L^{-1} with |L| = det (signed); positive definite case has det > 0
    const IMat& adjugate() const { return adj_; }
    const QMatrix& inverse() const { return inv_; }
    std::pair<int, int> signature() const { return sig_; }
    bool positive_definite() const { return sig_.second == 0; }

    long long norm(const IVec& v) const;  // v^T G v
    Q q(const IVec& v) const { return qfrac(norm(v), 2); }
    long long pair(const IVec& a, const IVec& b) const;
    Q dual_norm(const IVec& r) const;  // r^T G^{-1} r
    GramMatrix scaled(long long c) const;
    bool operator==(const GramMatrix& o) const { return g_ == o.g_; }
    bool operator<(const GramMatrix& o) const { return g_ < o.g_; }

private:
    IMat g_;
    Z det_;
    IMat adj_;
    QMatrix inv_;
    std::pair<int, int> sig_{0, 0};
};

GramMatrix block_diag(const GramMatrix& a, const GramMatrix& b);
std::pair<int, int> inertia(const QMatrix& sym);

// Signed vectors with 0 < v^T G v <= bound for a positive definite integral
// symmetric matrix G (diagonal not required even). One per +-pair, first
// nonzero entry positive; sorted by (norm, lexicographic).
struct ShortVector {
    IVec v;
    long long norm;  // v^T G v
};
std::vector<ShortVector> enumerate_short(const IMat& G, long long bound);

// Fincke-Pohst on an even Gram matrix: 0 < q(v) <= bound.
std::vector<std::pair<IVec, Q>> short_vectors(const GramMatrix& G, const Q& bound);

struct SmithForm {
    std::vector<Z> divisors;  // d_1 | d_2 | ... (absolute values, includes ones)
    IMat U, Uinv, V;          // U G V = diag(d) up to signs absorbed into U
};
SmithForm smith_form(const IMat& A);

// Z^N / G Z^N through Smith normal form.
class DiscGroup {
public:
    DiscGroup() = default;
    explicit DiscGroup(const GramMatrix& G);

    size_t order() const { return order_; }
    // non-trivial elementary divisors
    const std::vector<long long>& divisors() const { return div_; }
    std::vector<long long> coords(const IVec& r) const;
    IVec vector_of(const std::vector<long long>& c) const;
    size_t index_of(const IVec& r) const;  // position in elements()
    size_t index_of_coords(const std::vector<long long>& c) const;
    const std::vector<std::vector<long long>>& elements() const { return elems_; }

private:
    std::vector<long long> div_;
    std::vector<size_t> pos_;  // SNF positions of non-trivial divisors
    IMat U_, Uinv_;
    size_t order_ = 0;
    std::vector<std::vector<long long>> elems_;
};

// Z-basis of {x in Z^n : A x = 0}, saturated. Columns returned as vectors.
std::vector<IVec> integer_kernel(const IMat& A);

const GramMatrix& e8_gram();
std::pair<IVec, IVec> e8_pair(int n);

GramMatrix orthogonal_complement(const GramMatrix& G, const std::vector<IVec>& span);
// same, also returning the basis columns of the complement inside Z^N
std::pair<GramMatrix, std::vector<IVec>> orthogonal_complement_basis(const GramMatrix& G,
                                                                     const std::vector<IVec>& span);

// LLL reduction of a positive definite Gram matrix; returns (reduced, T) with reduced = T^T G T.
std::pair<GramMatrix, IMat> lll_reduce(const GramMatrix& G);

struct StabilizeStep {
    GramMatrix before;
    IVec v;
    long long n;
    std::pair<IVec, IVec> w;
    int negatives_before, negatives_after;
};

GramMatrix stabilize_positive_definite(const GramMatrix& G, std::vector<StabilizeStep>* log = nullptr);

}  // namespace latjac
