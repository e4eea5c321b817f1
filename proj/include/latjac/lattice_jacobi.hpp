#pragma once
// Jacobi forms of lattice index via restriction to scalar indices.

#include "latjac/scalar_jacobi.hpp"
#include "latjac/weil.hpp"

#include <memory>
#include <optional>

namespace latjac {

class Cache;

// Orbit representatives of (Z^N / G Z^N) / {+-1}, minimal in dual norm.
class RClasses {
public:
    explicit RClasses(const GramMatrix& G);

    const GramMatrix& gram() const { return G_; }
    const DiscriminantForm& disc() const { return D_; }
    size_t size() const { return reps_.size(); }
    const IVec& rep(size_t c) const { return reps_[c]; }
    long long rep_adj_norm(size_t c) const { return adjnorm_[c]; }  // L^#[rep]
    // vectors of the coset rep + G Z^N with the same dual norm (both signs of the orbit excluded)
    const std::vector<IVec>& neigh(size_t c) const { return neigh_[c]; }
    size_t mult(size_t c) const { return neigh_[c].size(); }
    bool self_paired(size_t c) const { return self_[c]; }
    size_t element(size_t c) const { return elem_[c]; }  // disc index of rep
    // class of a disc element and sign: +1 if it is the rep's element, -1 for its negative
    std::pair<size_t, int> class_of_element(size_t e) const { return {cls_[e], sgn_[e]}; }
    std::pair<size_t, int> class_of(const IVec& r) const { return class_of_element(D_.index_of(r)); }
    long long adj_norm(const IVec& r) const;  // L^#[r]

private:
    GramMatrix G_;
    DiscriminantForm D_;
    std::vector<IVec> reps_;
    std::vector<long long> adjnorm_;
    std::vector<std::vector<IVec>> neigh_;
    std::vector<char> self_;
    std::vector<size_t> elem_, cls_;
    std::vector<int> sgn_;
};

// Reduced indices (n, class), n < B, 2|L| n - L^#[rep] >= 0, ordered by (n, class);
// self-paired classes dropped for odd parity.
class IndexSet {
public:
    IndexSet(const RClasses& R, long B, int parity);
    long precision() const { return B_; }
    int parity() const { return parity_; }
    size_t size() const { return coords_.size(); }
    const std::vector<std::pair<long, size_t>>& coords() const { return coords_; }
    long find(long n, size_t cls) const;

private:
    long B_;
    int parity_;
    size_t ncls_;
    std::vector<std::pair<long, size_t>> coords_;
    std::vector<long> pos_;  // n * ncls + cls -> position or -1
};

struct ReducedIndex {
    long n;
    size_t cls;
    int sign;  // c(n, r) = sign^k c(reduced)
};
// nullopt when 2|L| n - L^#[r] < 0
std::optional<ReducedIndex> reduce_fe_index(long n, const IVec& r, const RClasses& R);

// c(n, r) of the form with coefficient vector v on I
Q jacobi_coefficient(const RClasses& R, const IndexSet& I, const QVec& v, long n, const IVec& r);

// Greedy complete set for the classes relevant to the parity.
std::vector<IVec> complete_restriction_set(const RClasses& R, int parity);
std::vector<IVec> strong_restriction_set(const IVec& r, const RClasses& R);
std::vector<IVec> sublattice_test_vectors(const IMat& s);

// Lattice vectors with L^#[r] <= 2|L|(B-1), both signs, with class data; reused across s.
class PullbackContext {
public:
    PullbackContext(std::shared_ptr<const RClasses> R, long B);
    const RClasses& classes() const { return *R_; }
    long precision() const { return B_; }
    // rows: ScalarIndex(G[s]/2, B, parity); columns: IndexSet(R, B, parity)
    QMatrix matrix(const IVec& s, int parity, const Cache* cache = nullptr) const;

private:
    struct Entry {
        IVec r;
        long long adj;
        size_t cls;
        int sign;
    };
    std::shared_ptr<const RClasses> R_;
    long B_;
    std::vector<Entry> vecs_;
};

QMatrix pullback_matrix(const GramMatrix& G, const IVec& s, long B, int parity, const Cache* cache = nullptr);

struct JacobiSpace {
    long k = 0;
    long B = 0;
    std::shared_ptr<const RClasses> R;
    std::shared_ptr<const IndexSet> I;
    QSubspace space;              // RREF basis on I
    std::vector<IVec> restriction;  // restriction vectors used
    const GramMatrix& gram() const { return R->gram(); }
};

JacobiSpace jacobi_forms(long k, const GramMatrix& G, long B, const Cache* cache = nullptr);

// A single truncated expansion on the reduced indices of its lattice.
struct JacobiFE {
    long k = 0;
    std::shared_ptr<const RClasses> R;
    std::shared_ptr<const IndexSet> I;
    QVec v;
    const GramMatrix& gram() const { return R->gram(); }
    long precision() const { return I->precision(); }
    Q at(long n, const IVec& r) const { return jacobi_coefficient(*R, *I, v, n, r); }
};
JacobiFE make_fe(const JacobiSpace& J, const QVec& v);
std::vector<JacobiFE> basis_fes(const JacobiSpace& J);

// scalar index m basis recast on the IndexSet of (2m)
QVec scalar_to_lattice(const QVec& v, const ScalarIndex& S, const RClasses& R, const IndexSet& I);

}  // namespace latjac
