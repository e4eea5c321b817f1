#pragma once
// Hecke-type operators U_s, V_l, the arrow operator, development coefficients
// and U-oldspaces of Jacobi forms of lattice index.

#include "latjac/vvmf.hpp"

#include <map>

namespace latjac {

// H = L/L' inside D' = disc(L') for L' = L[s].
struct IsotropicSubgroup {
    GramMatrix ambient;   // L'
    DiscriminantForm D;   // disc(L')
    GramMatrix quotient;  // L, with H^perp / H = disc(L)
    IMat s;               // ambient = quotient[s]
    std::vector<size_t> H, perp;  // sorted element indices of D
    // per element of D: index in disc(quotient) if in H^perp, else -1
    std::vector<long> to_quotient;
};

IsotropicSubgroup embedding_subgroup(const GramMatrix& quotient, const IMat& s);

// Even overlattice G' of G together with s~, G = G'[s~].
struct Overlattice {
    GramMatrix gram;
    IMat s;
    size_t index = 1;  // [L' : L] = |H|
};
// all isotropic subgroups of disc(G), as sorted element index lists; {0} first
std::vector<std::vector<size_t>> isotropic_subgroups(const DiscriminantForm& D);
Overlattice overlattice(const GramMatrix& G, const std::vector<size_t>& H);
// proper overlattices (H != 0)
std::vector<Overlattice> overlattices(const GramMatrix& G);

// Gram matrix of the lexicographically least reduced basis (positive definite, small rank)
IMat canonical_gram(const GramMatrix& G);
bool isometric(const GramMatrix& a, const GramMatrix& b);

// phi(tau, s z); target classes may be supplied to share them
JacobiFE U_s(const JacobiFE& phi, const IMat& s, std::shared_ptr<const RClasses> target = nullptr);
VVMF uparrow(const VVMF& f, const IsotropicSubgroup& H);

// keep exponents in d Z + n0
QSeries res(const QSeries& f, long d, const Q& n0);
VVMF res(const VVMF& f, size_t mu, long d, const Q& n0);

// vector valued counterpart of V_l for Jacobi weight k; output labelled by disc(l G)
VVMF sc_l(const VVMF& f, long l, long k);
JacobiFE V_l(const JacobiFE& phi, long l);

QSeries dev_coefficient(const JacobiFE& phi, long nu, const IVec& s);

QSubspace oldspace_U(long k, const GramMatrix& G, long B, const Cache* cache = nullptr);
long duv_new_dim(long k, const GramMatrix& G);

struct NewformSpace {
    JacobiSpace full;
    QSubspace old;
    std::vector<QVec> fresh;  // echelon complement of old inside full
};
NewformSpace jacobi_newforms(long k, const GramMatrix& G, long B, const Cache* cache = nullptr);

}  // namespace latjac
