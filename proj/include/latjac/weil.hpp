#pragma once
// Discriminant forms, Weil representations and the dimension formula.

#include "latjac/lattice.hpp"

#include <stdexcept>

namespace latjac {

// Thrown when a weight is outside the range an operation supports.
struct WeightError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class DiscriminantForm {
public:
    DiscriminantForm() = default;
    explicit DiscriminantForm(const GramMatrix& G);

    const GramMatrix& gram() const { return G_; }
    const DiscGroup& group() const { return D_; }
    size_t size() const { return D_.order(); }
    const Q& q(size_t i) const { return q_[i]; }  // in [0, 1)
    Q bil(size_t i, size_t j) const;              // (g_i, g_j) mod 1
    size_t neg(size_t i) const { return neg_[i]; }
    size_t add(size_t i, size_t j) const;
    size_t index_of(const IVec& r) const { return D_.index_of(r); }
    IVec vector_of(size_t i) const { return D_.vector_of(D_.elements()[i]); }
    long long level() const { return level_; }
    // order of the common cyclotomic field, lcm(24, level)
    int field_order() const;

private:
    GramMatrix G_;
    DiscGroup D_;
    std::vector<Q> q_;
    std::vector<size_t> neg_;
    std::vector<IVec> vec_;
    long long level_ = 1;
};

// Square matrix over one cyclotomic field.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(size_t n, int M);
    static CMatrix identity(size_t n, int M);

    size_t size() const { return n_; }
    int field() const { return M_; }
    Cyclotomic& operator()(size_t i, size_t j) { return a_[i * n_ + j]; }
    const Cyclotomic& operator()(size_t i, size_t j) const { return a_[i * n_ + j]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(const Cyclotomic& s) const;
    CMatrix conj_transpose() const;
    CMatrix conj() const;
    Cyclotomic trace() const;
    bool is_scalar() const;
    bool is_diagonal() const;
    bool operator==(const CMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    size_t n_ = 0;
    int M_ = 1;
    std::vector<Cyclotomic> a_;
};

struct WeilRep {
    DiscriminantForm D;
    bool dual = false;
    CMatrix T, S;
    Cyclotomic gauss;  // sum_g e(-q(g)), so that sigma(D) sqrt|D| = gauss
};

WeilRep weil_matrices(const DiscriminantForm& D, bool dual);

// Restriction to span{e_mu + e_-mu} (even parity) or span{e_mu - e_-mu} (odd).
class RestrictedRep {
public:
    RestrictedRep(const DiscriminantForm& D, int parity);

    int parity() const { return parity_; }
    size_t dim() const { return labels_.size(); }
    // orbit representatives (element indices), the smaller index of {mu, -mu}
    const std::vector<size_t>& labels() const { return labels_; }
    // matrix of a full operator commuting with mu -> -mu on the restricted basis
    CMatrix restrict(const CMatrix& full) const;

private:
    int parity_;
    std::vector<size_t> labels_, neg_;
};

// sum of beta_i for eigenvalues e(beta_i) of a finite order matrix
Q alpha(const CMatrix& U);

// Dimension of M_weight for the restricted representation built from rep.
Q dim_formula(const WeilRep& rep, int parity, const Q& weight);

// Dimension of J_{k,L}; requires k >= 2 + N/2.
long dim_jacobi(long k, const GramMatrix& G);

}  // namespace latjac
