#include "latjac/weil.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace latjac {

DiscriminantForm::DiscriminantForm(const GramMatrix& G) : G_(G), D_(G) {
    size_t n = D_.order();
    vec_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        vec_.push_back(D_.vector_of(D_.elements()[i]));
        q_.push_back(frac_part(G_.dual_norm(vec_.back()) / 2));
        long long den = q_.back().get_den().get_si();
        level_ = std::lcm(level_, den);
    }
    for (size_t i = 0; i < n; ++i) {
        IVec m = vec_[i];
        for (auto& x : m) x = -x;
        neg_.push_back(D_.index_of(m));
    }
}

Q DiscriminantForm::bil(size_t i, size_t j) const {
    const IMat& A = G_.adjugate();
    long long s = 0;
    for (size_t a = 0; a < vec_[i].size(); ++a)
        for (size_t b = 0; b < vec_[j].size(); ++b) s += vec_[i][a] * A[a][b] * vec_[j][b];
    return frac_part(qll(s) / Q(G_.det()));
}

size_t DiscriminantForm::add(size_t i, size_t j) const {
    IVec s = vec_[i];
    for (size_t a = 0; a < s.size(); ++a) s[a] += vec_[j][a];
    return D_.index_of(s);
}

int DiscriminantForm::field_order() const { return (int)std::lcm(24LL, level_); }

CMatrix::CMatrix(size_t n, int M) : n_(n), M_(M), a_(n * n, Cyclotomic(M)) {}

CMatrix CMatrix::identity(size_t n, int M) {
    CMatrix I(n, M);
    for (size_t i = 0; i < n; ++i) I(i, i) = Cyclotomic(M, 1);
    return I;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    CMatrix r(n_, M_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t l = 0; l < n_; ++l) {
            const Cyclotomic& x = (*this)(i, l);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < n_; ++j) {
                const Cyclotomic& y = o(l, j);
                if (!y.is_zero()) r(i, j) += x * y;
            }
        }
    return r;
}

CMatrix CMatrix::operator*(const Cyclotomic& s) const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = x * s;
    return r;
}

CMatrix CMatrix::conj_transpose() const {
    CMatrix r(n_, M_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
}

CMatrix CMatrix::conj() const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = x.conj();
    return r;
}

Cyclotomic CMatrix::trace() const {
    Cyclotomic t(M_);
    for (size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

bool CMatrix::is_diagonal() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

bool CMatrix::is_scalar() const {
    if (!is_diagonal()) return false;
    for (size_t i = 1; i < n_; ++i)
        if ((*this)(i, i) != (*this)(0, 0)) return false;
    return true;
}

WeilRep weil_matrices(const DiscriminantForm& D, bool dual) {
    int M = D.field_order();
    size_t n = D.size();
    WeilRep W;
    W.D = D;
    W.dual = dual;
    W.T = CMatrix(n, M);
    W.S = CMatrix(n, M);
    W.gauss = Cyclotomic(M);
    for (size_t i = 0; i < n; ++i) {
        W.T(i, i) = Cyclotomic::e(D.q(i), M);
        W.gauss += Cyclotomic::e(-D.q(i), M);
    }
    Cyclotomic norm = W.gauss * W.gauss.conj();
    if (!norm.is_rational() || norm.rational() != qll((long long)n))
        throw std::logic_error("Gauss sum does not have absolute value sqrt|D|");
    // normalization gauss/|D| = e(-sig/8)/sqrt|D| keeps S^2 = (ST)^3
    Cyclotomic ginv = W.gauss * (Q(1) / qll((long long)n));
    // entries are zeta_M^j ginv; build each product once
    std::vector<Cyclotomic> scaled(M);
    std::vector<char> have(M, 0);
    for (size_t g = 0; g < n; ++g)
        for (size_t d = g; d < n; ++d) {
            Q b = frac_part(-D.bil(g, d)) * qll(M);
            long j = b.get_num().get_si();
            if (!have[j]) {
                scaled[j] = Cyclotomic::root(j, M) * ginv;
                have[j] = 1;
            }
            W.S(d, g) = scaled[j];
            W.S(g, d) = scaled[j];
        }
    if (dual) {
        W.T = W.T.conj();
        W.S = W.S.conj();
    }
    return W;
}

RestrictedRep::RestrictedRep(const DiscriminantForm& D, int parity) : parity_(((parity % 2) + 2) % 2) {
    for (size_t i = 0; i < D.size(); ++i) {
        size_t m = D.neg(i);
        if (m < i) continue;
        if (m == i && parity_ == 1) continue;
        labels_.push_back(i);
    }
    neg_.resize(D.size());
    for (size_t i = 0; i < D.size(); ++i) neg_[i] = D.neg(i);
}

CMatrix RestrictedRep::restrict(const CMatrix& A) const {
    size_t d = labels_.size();
    CMatrix R(d, A.field());
    for (size_t c = 0; c < d; ++c) {
        size_t mu = labels_[c], nm = neg_[mu];
        for (size_t r = 0; r < d; ++r) {
            size_t nu = labels_[r];
            Cyclotomic v = A(nu, mu);
            if (nm != mu) v = parity_ ? v - A(nu, nm) : v + A(nu, nm);
            R(r, c) = v;
        }
    }
    return R;
}

namespace {

Cyclotomic cpow(const Cyclotomic& x, long e) {
    Cyclotomic r(x.order(), 1);
    for (long i = 0; i < e; ++i) r = r * x;
    return r;
}

// exponent j with x = zeta_M^j, or -1
long root_exponent(const Cyclotomic& x, int M) {
    for (int j = 0; j < M; ++j)
        if (Cyclotomic::root(j, M) == x) return j;
    return -1;
}

// multiplicities of the eigenvalues from the traces tr(U^a), a < n, with U^p = c I
Q alpha_from_traces(const std::vector<Cyclotomic>& trp, const Cyclotomic& c, long p, size_t d, int M) {
    long n = 0;
    for (long cand = p; cand <= 24; cand += p)
        if (24 % cand == 0 && cpow(c, cand / p) == Cyclotomic(M, 1)) {
            n = cand;
            break;
        }
    if (n == 0 || M % n != 0) throw std::logic_error("alpha: matrix is not of finite order dividing 24");
    std::vector<Cyclotomic> tr(n);
    for (long a = 0; a < n; ++a) tr[a] = cpow(c, a / p) * trp[a % p];
    Q total = 0, count = 0;
    for (long j = 0; j < n; ++j) {
        Cyclotomic s(M);
        for (long a = 0; a < n; ++a) s += Cyclotomic::root(-(j * a % n) * (M / n), M) * tr[a];
        if (!s.is_rational()) throw std::logic_error("alpha: non-rational multiplicity");
        Q m = s.rational() / qll(n);
        if (m.get_den() != 1 || m < 0) throw std::logic_error("alpha: multiplicity is not a non-negative integer");
        total += m * qfrac(j, n);
        count += m;
    }
    if (count != qll((long long)d)) throw std::logic_error("alpha: multiplicities do not add up");
    return total;
}

// alpha for U with U^p scalar, p in {1, 2, 3}; quadratic in the size
Q alpha_known_order(const CMatrix& U, long p) {
    size_t d = U.size();
    int M = U.field();
    if (d == 0) return 0;
    std::vector<Cyclotomic> trp{Cyclotomic(M, qll((long long)d)), U.trace()};
    if (p >= 3) {
        Cyclotomic t2(M);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (!U(i, j).is_zero() && !U(j, i).is_zero()) t2 += U(i, j) * U(j, i);
        trp.push_back(t2);
    }
    // first row of U^p, checked against a scalar matrix on that row
    std::vector<Cyclotomic> row(d, Cyclotomic(M));
    row[0] = Cyclotomic(M, 1);
    for (long e = 0; e < p; ++e) {
        std::vector<Cyclotomic> nr(d, Cyclotomic(M));
        for (size_t l = 0; l < d; ++l) {
            if (row[l].is_zero()) continue;
            for (size_t j = 0; j < d; ++j)
                if (!U(l, j).is_zero()) nr[j] += row[l] * U(l, j);
        }
        row = std::move(nr);
    }
    for (size_t j = 1; j < d; ++j)
        if (!row[j].is_zero()) throw std::logic_error("alpha: power is not scalar");
    trp.resize(p);
    return alpha_from_traces(trp, row[0], p, d, M);
}

}  // namespace

Q alpha(const CMatrix& U) {
    size_t d = U.size();
    int M = U.field();
    if (d == 0) return 0;
    if (U.is_diagonal()) {
        Q a = 0;
        for (size_t i = 0; i < d; ++i) {
            long j = root_exponent(U(i, i), M);
            if (j < 0) throw std::logic_error("alpha: diagonal entry is not a root of unity");
            a += qfrac(j, M);
        }
        return a;
    }
    std::vector<CMatrix> P{CMatrix::identity(d, M), U};
    while (!P.back().is_scalar()) {
        if (P.size() > 24) throw std::logic_error("alpha: matrix is not of finite order dividing 24");
        P.push_back(P.back() * U);
    }
    size_t p = P.size() - 1;
    std::vector<Cyclotomic> trp;
    for (size_t a = 0; a < p; ++a) trp.push_back(P[a].trace());
    return alpha_from_traces(trp, P.back()(0, 0), (long)p, d, M);
}

Q dim_formula(const WeilRep& rep, int parity, const Q& weight) {
    RestrictedRep R(rep.D, parity);
    Q d = qll((long long)R.dim());
    if (R.dim() == 0) return 0;
    int M = rep.S.field();
    CMatrix S = R.restrict(rep.S), T = R.restrict(rep.T);
    // T is diagonal, so S T is a column scaling
    CMatrix ST = rep.S;
    for (size_t i = 0; i < ST.size(); ++i)
        for (size_t j = 0; j < ST.size(); ++j) ST(i, j) = ST(i, j) * rep.T(j, j);
    CMatrix STinv = R.restrict(ST.conj_transpose());
    Q res = d + d * weight / 12;
    // S^2 and (ST)^3 act as scalars on either parity
    res -= alpha_known_order(S * Cyclotomic::e(weight / 4, M), 2);
    res -= alpha_known_order(STinv * Cyclotomic::e(-weight / 6, M), 3);
    res -= alpha(T);
    return res;
}

long dim_jacobi(long k, const GramMatrix& G) {
    if (!G.positive_definite()) throw std::invalid_argument("dim_jacobi: lattice must be positive definite");
    long N = (long)G.rank();
    if (2 * k < 4 + N) throw WeightError("dim_jacobi: weight below 2 + N/2");
    static std::mutex mu;
    static std::map<std::pair<long, IMat>, long> memo;
    auto key = std::make_pair(k, G.entries());
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    DiscriminantForm D(G);
    WeilRep W = weil_matrices(D, true);
    Q d = dim_formula(W, (int)(k % 2), qll(k) - qfrac(N, 2));
    if (d.get_den() != 1 || d < 0) throw std::logic_error("dim_jacobi: non-integral dimension " + to_string(d));
    long v = d.get_num().get_si();
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, v);
    return v;
}

}  // namespace latjac
