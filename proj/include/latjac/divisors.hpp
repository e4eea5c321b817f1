#pragma once
// Linear equivalences of special divisors Z(m, mu) on X_L for
// L = U + U(N) + L'(-1), read off from coefficients of weight (2+n)/2 forms.

#include "latjac/vvmf.hpp"

namespace latjac {

struct DivisorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// mu is a vector r with class G^-1 r in disc(G), G = U(N) + L'(-1). A vector of
// length rank L' is padded with zeros in the U(N) coordinates.
struct DivisorLabel {
    Q m;
    IVec mu;
};

struct RelationSet {
    std::vector<DivisorLabel> labels;
    std::vector<QVec> relations;  // basis of the kernel, one entry per label
    size_t forms = 0;             // forms entering the coefficient matrix
    Q weight;
};

GramMatrix divisor_gram(const GramMatrix& Lprime, long N);

struct DivisorOptions {
    bool cusp_only = true;  // pair only with cusp forms
    long relabel = 1;       // labels mu are read as relabel * mu
    const Cache* cache = nullptr;
};

RelationSet divisor_relations(const GramMatrix& Lprime, long N, const std::vector<DivisorLabel>& divisors, long B,
                              const DivisorOptions& opt = {});

}  // namespace latjac
