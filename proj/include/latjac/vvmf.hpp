#pragma once
// Vector valued modular forms of dual Weil type via theta decomposition.

#include "latjac/lattice_jacobi.hpp"

#include <map>

namespace latjac {

// Truncated expansion sum_mu sum_m a(m, mu) q^m e_mu with all exponents m < precision.
struct VVMF {
    Q weight;
    GramMatrix gram;  // labels the components through its discriminant form
    DiscriminantForm D;
    bool dual = true;  // type is the dual Weil representation of gram
    Q precision;
    std::vector<Q> offset;    // per element: smallest stored exponent
    std::vector<QVec> coef;   // coef[mu][j] is the coefficient of q^(offset + j)

    Q at(size_t mu, const Q& m) const;
    bool is_zero() const;
    // (mu, exponent) pairs sorted by exponent, then mu
    std::vector<std::pair<size_t, Q>> coordinates() const;
    QVec flatten() const;
    VVMF truncate(const Q& P) const;
};

// zero form of dual type, exponents from -t up to P
VVMF vvmf_zero(const Q& k, const GramMatrix& G, const Q& P, long t = 0);

// shape (offsets, precision, labels) taken from the first form
VVMF linear_combination(const std::vector<VVMF>& fs, const QVec& x);
// row echelon basis in flattened coordinates
std::vector<VVMF> echelon(const std::vector<VVMF>& fs);

VVMF theta_decomposition(const JacobiFE& phi);
VVMF theta_decomposition(const JacobiSpace& J, const QVec& v);
// inverse of theta_decomposition at the largest precision the components determine
JacobiFE theta_inverse(const VVMF& f, long k);

// terms (G^-1[r]/2, r) of theta_{G,l} with r = l mod G Z^N and exponent < B
std::vector<std::pair<Q, IVec>> theta_series(const GramMatrix& G, const IVec& l, long B);

// lexicographically least q-preserving isomorphism, as a map of element indices
std::vector<size_t> discriminant_isomorphism(const DiscriminantForm& from, const DiscriminantForm& to);
VVMF relabel(const VVMF& f, const GramMatrix& target, const std::vector<size_t>& map);

struct VVMFBasis {
    std::vector<VVMF> forms;
    GramMatrix jacobi_gram;  // positive definite lattice the forms were computed on
    long jacobi_weight = 0;
    std::vector<size_t> relabel;  // disc(jacobi_gram) -> disc(G)
};
VVMFBasis vvmf_basis(const Q& k, const GramMatrix& G, long B, const Cache* cache = nullptr);

// poles of order <= t at infinity: weight k + 12t forms divided by Delta^t
std::vector<VVMF> vvmf_weakly_holomorphic(const Q& k, const GramMatrix& G, long t, long B,
                                          const Cache* cache = nullptr);
// component-wise product with Delta^t
VVMF multiply_delta_power(const VVMF& f, long t);

struct NoSuchForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using PrincipalPart = std::map<std::pair<size_t, Q>, Q>;
struct PrincipalPartSolution {
    VVMF form;                   // free parameters set to zero
    size_t homogeneous_dim = 0;  // dimension of the solution space of the homogeneous system
};
PrincipalPartSolution vvmf_with_principal_part(const Q& k, const GramMatrix& G, const PrincipalPart& pp, long B,
                                               const Cache* cache = nullptr);

}  // namespace latjac
