#include "latjac/divisors.hpp"

namespace latjac {

GramMatrix divisor_gram(const GramMatrix& Lprime, long N) {
    if (N < 1) throw DivisorError("divisor_gram: N must be positive");
    if (!Lprime.positive_definite()) throw DivisorError("divisor_gram: L' must be positive definite");
    size_t n = Lprime.rank();
    IMat g(n + 2, IVec(n + 2, 0));
    g[0][1] = g[1][0] = N;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i + 2][j + 2] = -Lprime(i, j);
    return GramMatrix(std::move(g));
}

RelationSet divisor_relations(const GramMatrix& Lprime, long N, const std::vector<DivisorLabel>& divisors, long B,
                              const DivisorOptions& opt) {
    GramMatrix G = divisor_gram(Lprime, N);
    size_t n = Lprime.rank();
    // U(1) is unimodular and does not change the discriminant form
    size_t drop = N == 1 ? 2 : 0;
    GramMatrix Gc = G;
    if (drop) {
        IMat g(n, IVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) g[i][j] = G(i + 2, j + 2);
        Gc = GramMatrix(std::move(g));
    }
    DiscriminantForm D(Gc);

    RelationSet out;
    out.labels = divisors;
    out.weight = qfrac((long long)(4 + n), 2);

    std::vector<size_t> idx;
    for (const auto& d : divisors) {
        if (d.m <= 0) throw DivisorError("divisor_relations: m must be positive");
        if (d.m >= B) throw DivisorError("divisor_relations: precision " + std::to_string(B) + " does not reach m = " +
                                         d.m.get_str());
        IVec r;
        if (d.mu.size() == n) {
            r = IVec(2, 0);
            r.insert(r.end(), d.mu.begin(), d.mu.end());
        } else if (d.mu.size() == n + 2) {
            r = d.mu;
        } else {
            throw DivisorError("divisor_relations: label mu has the wrong length");
        }
        r.erase(r.begin(), r.begin() + (long)drop);
        for (auto& x : r) x *= opt.relabel;
        size_t i = D.index_of(r);
        // dual type: exponents in -q(mu) + Z
        Q t = d.m + D.q(i);
        if (t.get_den() != 1)
            throw DivisorError("divisor_relations: (" + d.m.get_str() + ", mu) violates the support congruence");
        idx.push_back(i);
    }
    if (divisors.empty()) return out;

    VVMFBasis basis = vvmf_basis(out.weight, Gc, B, opt.cache);
    std::vector<VVMF> forms = basis.forms;

    if (opt.cusp_only && !forms.empty()) {
        std::vector<size_t> iso;
        for (size_t mu = 0; mu < D.size(); ++mu)
            if (D.q(mu) == 0) iso.push_back(mu);
        QMatrix C(iso.size(), forms.size());
        for (size_t a = 0; a < iso.size(); ++a)
            for (size_t j = 0; j < forms.size(); ++j) C(a, j) = forms[j].at(iso[a], 0);
        QSubspace K = kernel(C);
        std::vector<VVMF> cusp;
        for (const auto& x : K.basis()) cusp.push_back(linear_combination(forms, x));
        forms = std::move(cusp);
    }
    out.forms = forms.size();

    QMatrix A(forms.size(), divisors.size());
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = 0; j < divisors.size(); ++j) A(i, j) = forms[i].at(idx[j], divisors[j].m);
    out.relations = kernel(A).basis();
    return out;
}

}  // namespace latjac
