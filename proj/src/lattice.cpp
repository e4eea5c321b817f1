#include "latjac/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace latjac {

IMat identity_imat(size_t n) {
    IMat I(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IMat imat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    IMat r(n, IVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (!a[i][l]) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

IMat imat_transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat t(a[0].size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

IVec imat_apply(const IMat& a, const IVec& v) {
    IVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

long long ivec_dot(const IVec& a, const IVec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IMat congruent(const IMat& g, const IMat& a) { return imat_mul(imat_transpose(a), imat_mul(g, a)); }

QMatrix to_qmatrix(const IMat& a) {
    QMatrix M(a.size(), a.empty() ? 0 : a[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) M(i, j) = Q(Z((long)a[i][j]));
    return M;
}

Z det_exact(const IMat& a) {
    // Bareiss fraction-free elimination
    size_t n = a.size();
    if (n == 0) return 1;
    std::vector<std::vector<Z>> m(n, std::vector<Z>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = Z((long)a[i][j]);
    Z prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

QMatrix inverse_q(const QMatrix& A) {
    size_t n = A.rows();
    QMatrix M(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
        M(i, n + i) = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && M(p, c) == 0) ++p;
        if (p == n) throw std::invalid_argument("singular matrix");
        if (p != c)
            for (size_t j = 0; j < 2 * n; ++j) std::swap(M(p, j), M(c, j));
        Q inv = 1 / M(c, c);
        for (size_t j = 0; j < 2 * n; ++j) M(c, j) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || M(i, c) == 0) continue;
            Q f = M(i, c);
            for (size_t j = 0; j < 2 * n; ++j)
                if (M(c, j) != 0) M(i, j) -= f * M(c, j);
        }
    }
    QMatrix R(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R(i, j) = M(i, n + j);
    return R;
}

long long to_ll(const Z& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return z.get_si();
}

}  // namespace

std::pair<int, int> inertia(const QMatrix& sym) {
    size_t n = sym.rows();
    QMatrix A = sym;
    std::vector<char> active(n, 1);
    int pos = 0, neg = 0;
    for (;;) {
        long piv = -1;
        for (size_t i = 0; i < n; ++i)
            if (active[i] && A(i, i) != 0) { piv = (long)i; break; }
        if (piv < 0) {
            long pi = -1, pj = -1;
            for (size_t i = 0; i < n && pi < 0; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (active[i] && active[j] && i != j && A(i, j) != 0) { pi = (long)i; pj = (long)j; break; }
            if (pi < 0) break;
            // congruence e_i -> e_i + e_j makes the diagonal entry 2 A(i,j)
            for (size_t l = 0; l < n; ++l) A(pi, l) += A(pj, l);
            for (size_t l = 0; l < n; ++l) A(l, pi) += A(l, pj);
            piv = pi;
        }
        size_t p = (size_t)piv;
        Q d = A(p, p);
        (d > 0 ? pos : neg)++;
        active[p] = 0;
        for (size_t i = 0; i < n; ++i) {
            if (!active[i] || A(i, p) == 0) continue;
            Q f = A(i, p) / d;
            for (size_t j = 0; j < n; ++j)
                if (active[j] && A(p, j) != 0) A(i, j) -= f * A(p, j);
        }
    }
    return {pos, neg};
}

GramMatrix::GramMatrix(IMat g) : g_(std::move(g)) {
    size_t n = g_.size();
    if (n == 0) throw std::invalid_argument("empty Gram matrix");
    for (const auto& row : g_)
        if (row.size() != n) throw std::invalid_argument("Gram matrix is not square");
    for (size_t i = 0; i < n; ++i) {
        if (g_[i][i] % 2 != 0) throw std::invalid_argument("Gram matrix has odd diagonal entry");
        for (size_t j = 0; j < n; ++j)
            if (g_[i][j] != g_[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
    }
    det_ = det_exact(g_);
    if (det_ == 0) throw std::invalid_argument("Gram matrix is degenerate");
    QMatrix G = to_qmatrix(g_);
    inv_ = inverse_q(G);
    adj_.assign(n, IVec(n));
    Q d(det_);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Q a = inv_(i, j) * d;
            adj_[i][j] = to_ll(a.get_num());
        }
    sig_ = inertia(G);
}

long long GramMatrix::abs_det() const { return to_ll(abs(det_)); }

long long GramMatrix::norm(const IVec& v) const {
    long long s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        for (size_t j = 0; j < v.size(); ++j) s += v[i] * g_[i][j] * v[j];
    }
    return s;
}

long long GramMatrix::pair(const IVec& a, const IVec& b) const {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * g_[i][j] * b[j];
    }
    return s;
}

Q GramMatrix::dual_norm(const IVec& r) const {
    long long s = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        if (!r[i]) continue;
        for (size_t j = 0; j < r.size(); ++j) s += r[i] * adj_[i][j] * r[j];
    }
    return Q(Z((long)s)) / Q(det_);
}

GramMatrix GramMatrix::scaled(long long c) const {
    IMat g = g_;
    for (auto& row : g)
        for (auto& x : row) x *= c;
    return GramMatrix(g);
}

GramMatrix block_diag(const GramMatrix& a, const GramMatrix& b) {
    size_t n = a.rank(), m = b.rank();
    IMat g(n + m, IVec(n + m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = a(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g[n + i][n + j] = b(i, j);
    return GramMatrix(g);
}

// ---- enumeration ----

std::vector<ShortVector> enumerate_short(const IMat& G, long long bound) {
    size_t n = G.size();
    std::vector<ShortVector> out;
    if (bound <= 0 || n == 0) return out;
    typedef long double ld;
    std::vector<std::vector<ld>> q(n, std::vector<ld>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) q[i][j] = (ld)G[i][j];
    for (size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) throw std::invalid_argument("enumerate_short: matrix not positive definite");
        for (size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (size_t k = i + 1; k < n; ++k)
            for (size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    const ld eps = 1e-9L * (1 + (ld)bound);
    IVec x(n, 0);
    std::function<void(long, ld)> rec = [&](long i, ld rem) {
        ld c = 0;
        for (size_t j = i + 1; j < n; ++j) c -= q[i][j] * (ld)x[j];
        ld w = std::sqrt(std::max((ld)0, rem + eps) / q[i][i]);
        long long lo = (long long)std::ceil(c - w - 1e-9L), hi = (long long)std::floor(c + w + 1e-9L);
        for (long long t = lo; t <= hi; ++t) {
            x[i] = t;
            ld d = (ld)t - c;
            ld r2 = rem - q[i][i] * d * d;
            if (r2 < -eps) continue;
            if (i == 0) {
                bool nz = false, posfirst = false;
                for (size_t j = 0; j < n; ++j)
                    if (x[j]) { nz = true; posfirst = x[j] > 0; break; }
                if (!nz || !posfirst) continue;
                long long s = 0;
                for (size_t a = 0; a < n; ++a) {
                    if (!x[a]) continue;
                    for (size_t b = 0; b < n; ++b) s += x[a] * G[a][b] * x[b];
                }
                if (s > 0 && s <= bound) out.push_back({x, s});
            } else {
                rec(i - 1, r2);
            }
        }
        x[i] = 0;
    };
    rec((long)n - 1, (ld)bound);
    std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.v < b.v;
    });
    return out;
}

std::vector<std::pair<IVec, Q>> short_vectors(const GramMatrix& G, const Q& bound) {
    if (!G.positive_definite()) throw std::invalid_argument("short_vectors: Gram matrix not positive definite");
    if (bound < 0) throw std::invalid_argument("short_vectors: negative bound");
    Z b = floor_q(bound * 2);
    std::vector<std::pair<IVec, Q>> out;
    for (auto& sv : enumerate_short(G.entries(), to_ll(b))) out.push_back({sv.v, qfrac(sv.norm, 2)});
    return out;
}

// ---- Smith normal form ----

SmithForm smith_form(const IMat& Ain) {
    size_t m = Ain.size(), n = m ? Ain[0].size() : 0;
    std::vector<std::vector<Z>> A(m, std::vector<Z>(n)), U(m, std::vector<Z>(m)), V(n, std::vector<Z>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = Z((long)Ain[i][j]);
    for (size_t i = 0; i < m; ++i) U[i][i] = 1;
    for (size_t i = 0; i < n; ++i) V[i][i] = 1;
    auto row_addmul = [&](size_t dst, size_t src, const Z& f) {  // row dst -= f row src
        for (size_t j = 0; j < n; ++j) A[dst][j] -= f * A[src][j];
        for (size_t j = 0; j < m; ++j) U[dst][j] -= f * U[src][j];
    };
    auto col_addmul = [&](size_t dst, size_t src, const Z& f) {
        for (size_t i = 0; i < m; ++i) A[i][dst] -= f * A[i][src];
        for (size_t i = 0; i < n; ++i) V[i][dst] -= f * V[i][src];
    };
    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            size_t bi = m, bj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (A[i][j] != 0 && (bi == m || abs(A[i][j]) < abs(A[bi][bj]))) { bi = i; bj = j; }
            if (bi == m) goto done;
            if (bi != t) { std::swap(A[bi], A[t]); std::swap(U[bi], U[t]); }
            if (bj != t) {
                for (size_t i = 0; i < m; ++i) std::swap(A[i][bj], A[i][t]);
                for (size_t i = 0; i < n; ++i) std::swap(V[i][bj], V[i][t]);
            }
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i)
                if (A[i][t] != 0) {
                    Z f = A[i][t] / A[t][t];
                    row_addmul(i, t, f);
                    if (A[i][t] != 0) clean = false;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (A[t][j] != 0) {
                    Z f = A[t][j] / A[t][t];
                    col_addmul(j, t, f);
                    if (A[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        row_addmul(t, i, Z(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (A[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
            for (size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
    }
done:
    SmithForm S;
    for (size_t i = 0; i < std::min(m, n); ++i) S.divisors.push_back(A[i][i]);
    S.U.assign(m, IVec(m));
    S.V.assign(n, IVec(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) S.U[i][j] = to_ll(U[i][j]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) S.V[i][j] = to_ll(V[i][j]);
    QMatrix Ui = inverse_q(to_qmatrix(S.U));
    S.Uinv.assign(m, IVec(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) S.Uinv[i][j] = to_ll(Ui(i, j).get_num());
    return S;
}

DiscGroup::DiscGroup(const GramMatrix& G) {
    SmithForm S = smith_form(G.entries());
    size_t n = G.rank();
    for (size_t i = 0; i < n; ++i) {
        long long d = to_ll(S.divisors[i]);
        if (d > 1) { div_.push_back(d); pos_.push_back(i); }
    }
    U_.clear();
    for (size_t k = 0; k < pos_.size(); ++k) {
        IVec row = S.U[pos_[k]];
        for (auto& x : row) x = ((x % div_[k]) + div_[k]) % div_[k];
        U_.push_back(row);
    }
    Uinv_ = S.Uinv;
    order_ = 1;
    for (auto d : div_) order_ *= (size_t)d;
    std::vector<long long> c(div_.size(), 0);
    for (size_t idx = 0; idx < order_; ++idx) {
        elems_.push_back(c);
        for (long k = (long)c.size() - 1; k >= 0; --k) {
            if (++c[k] < div_[k]) break;
            c[k] = 0;
        }
    }
}

std::vector<long long> DiscGroup::coords(const IVec& r) const {
    std::vector<long long> c(div_.size());
    for (size_t k = 0; k < div_.size(); ++k) {
        __int128 s = 0;
        for (size_t j = 0; j < r.size(); ++j) s += (__int128)U_[k][j] * r[j];
        long long v = (long long)(s % div_[k]);
        c[k] = v < 0 ? v + div_[k] : v;
    }
    return c;
}

IVec DiscGroup::vector_of(const std::vector<long long>& c) const {
    size_t n = Uinv_.size();
    IVec full(n, 0);
    for (size_t k = 0; k < pos_.size(); ++k) full[pos_[k]] = c[k];
    return imat_apply(Uinv_, full);
}

size_t DiscGroup::index_of_coords(const std::vector<long long>& c) const {
    size_t idx = 0;
    for (size_t k = 0; k < div_.size(); ++k) idx = idx * (size_t)div_[k] + (size_t)(((c[k] % div_[k]) + div_[k]) % div_[k]);
    return idx;
}

size_t DiscGroup::index_of(const IVec& r) const { return index_of_coords(coords(r)); }

// ---- integer kernels ----

std::vector<IVec> integer_kernel(const IMat& Ain) {
    size_t m = Ain.size(), n = m ? Ain[0].size() : 0;
    std::vector<std::vector<Z>> A(m, std::vector<Z>(n)), V(n, std::vector<Z>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = Z((long)Ain[i][j]);
    for (size_t i = 0; i < n; ++i) V[i][i] = 1;
    size_t p = 0;
    for (size_t i = 0; i < m && p < n; ++i) {
        for (size_t j = p + 1; j < n; ++j) {
            if (A[i][j] == 0) continue;
            Z a = A[i][p], b = A[i][j], g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Z u = -b / g, w = a / g;
            for (size_t r = 0; r < m; ++r) {
                Z cp = A[r][p], cj = A[r][j];
                A[r][p] = x * cp + y * cj;
                A[r][j] = u * cp + w * cj;
            }
            for (size_t r = 0; r < n; ++r) {
                Z cp = V[r][p], cj = V[r][j];
                V[r][p] = x * cp + y * cj;
                V[r][j] = u * cp + w * cj;
            }
        }
        if (A[i][p] != 0) ++p;
    }
    // size-reduce kernel columns against each other for smaller entries
    std::vector<IVec> out;
    for (size_t j = p; j < n; ++j) {
        IVec v(n);
        for (size_t r = 0; r < n; ++r) v[r] = to_ll(V[r][j]);
        out.push_back(v);
    }
    return out;
}

// ---- E8 and stabilization ----

const GramMatrix& e8_gram() {
    static const GramMatrix E8(IMat{{2, -1, 0, 0, 0, 0, 0, 0},
                                    {-1, 2, -1, 0, 0, 0, 0, 0},
                                    {0, -1, 2, -1, 0, 0, 0, -1},
                                    {0, 0, -1, 2, -1, 0, 0, 0},
                                    {0, 0, 0, -1, 2, -1, 0, 0},
                                    {0, 0, 0, 0, -1, 2, -1, 0},
                                    {0, 0, 0, 0, 0, -1, 2, 0},
                                    {0, 0, -1, 0, 0, 0, 0, 2}});
    return E8;
}

std::pair<IVec, IVec> e8_pair(int n) {
    if (n < 1) throw std::invalid_argument("e8_pair: n must be positive");
    const GramMatrix& E8 = e8_gram();
    std::vector<IVec> vs;
    for (auto& sv : enumerate_short(E8.entries(), 2LL * n)) {
        if (sv.norm != 2LL * n) continue;
        vs.push_back(sv.v);
        IVec neg = sv.v;
        for (auto& x : neg) x = -x;
        vs.push_back(neg);
    }
    for (const auto& w1 : vs)
        for (const auto& w2 : vs)
            if (E8.pair(w1, w2) == 2LL * n - 1) return {w1, w2};
    throw std::logic_error("e8_pair: no pair found (enumeration bug)");
}

std::pair<GramMatrix, std::vector<IVec>> orthogonal_complement_basis(const GramMatrix& G,
                                                                     const std::vector<IVec>& span) {
    size_t n = G.rank();
    IMat P;
    for (const auto& v : span) P.push_back(imat_apply(G.entries(), v));
    IMat S(span.size(), IVec(span.size()));
    for (size_t i = 0; i < span.size(); ++i)
        for (size_t j = 0; j < span.size(); ++j) S[i][j] = G.pair(span[i], span[j]);
    if (det_exact(S) == 0) throw std::invalid_argument("orthogonal_complement: degenerate span");
    std::vector<IVec> K = integer_kernel(P);
    if (K.size() != n - span.size()) throw std::logic_error("orthogonal_complement: unexpected kernel rank");
    IMat B(n, IVec(K.size()));
    for (size_t j = 0; j < K.size(); ++j)
        for (size_t i = 0; i < n; ++i) B[i][j] = K[j][i];
    return {GramMatrix(congruent(G.entries(), B)), K};
}

GramMatrix orthogonal_complement(const GramMatrix& G, const std::vector<IVec>& span) {
    return orthogonal_complement_basis(G, span).first;
}

std::pair<GramMatrix, IMat> lll_reduce(const GramMatrix& Gin) {
    if (!Gin.positive_definite()) throw std::invalid_argument("lll_reduce: not positive definite");
    size_t n = Gin.rank();
    IMat G = Gin.entries(), T = identity_imat(n);
    auto gso = [&](std::vector<std::vector<Q>>& mu, std::vector<Q>& Bs) {
        mu.assign(n, std::vector<Q>(n));
        Bs.assign(n, Q(0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < i; ++j) {
                Q s = Q(Z((long)G[i][j]));
                for (size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * Bs[l];
                mu[i][j] = s / Bs[j];
            }
            Q s = Q(Z((long)G[i][i]));
            for (size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * Bs[l];
            Bs[i] = s;
        }
    };
    auto addmul = [&](size_t k, size_t j, long long r) {  // b_k -= r b_j
        for (size_t i = 0; i < n; ++i) T[i][k] -= r * T[i][j];
        for (size_t i = 0; i < n; ++i) G[k][i] -= r * G[j][i];
        for (size_t i = 0; i < n; ++i) G[i][k] -= r * G[i][j];
    };
    std::vector<std::vector<Q>> mu;
    std::vector<Q> Bs;
    size_t k = 1;
    while (k < n) {
        gso(mu, Bs);
        for (long j = (long)k - 1; j >= 0; --j) {
            Q m = mu[k][j];
            Z r = floor_q(m + Q(1, 2));
            if (r != 0) {
                addmul(k, (size_t)j, to_ll(r));
                gso(mu, Bs);
            }
        }
        if (Bs[k] >= (Q(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * Bs[k - 1]) {
            ++k;
        } else {
            for (size_t i = 0; i < n; ++i) std::swap(T[i][k], T[i][k - 1]);
            std::swap(G[k], G[k - 1]);
            for (size_t i = 0; i < n; ++i) std::swap(G[i][k], G[i][k - 1]);
            k = std::max<size_t>(k - 1, 1);
        }
    }
    GramMatrix R(congruent(Gin.entries(), T));
    return {R, T};
}

namespace {

IVec shortest_negative_vector(const GramMatrix& L) {
    size_t n = L.rank();
    for (long long R = 1; R <= 64; ++R) {
        IVec x(n, -R), best;
        long long bestq = 0;
        bool found = false;
        for (;;) {
            bool nz = false, posfirst = false;
            for (auto c : x)
                if (c) { nz = true; posfirst = c > 0; break; }
            if (nz && posfirst) {
                long long v = L.norm(x);
                if (v < 0 && (!found || v > bestq || (v == bestq && x < best))) {
                    found = true;
                    bestq = v;
                    best = x;
                }
            }
            size_t i = 0;
            while (i < n && x[i] == R) x[i++] = -R;
            if (i == n) break;
            ++x[i];
        }
        if (found) return best;
    }
    throw std::logic_error("stabilize: no negative vector found");
}

}  // namespace

GramMatrix stabilize_positive_definite(const GramMatrix& G, std::vector<StabilizeStep>* log) {
    GramMatrix L = G;
    while (L.signature().second > 0) {
        IVec v = shortest_negative_vector(L);
        long long n = -L.norm(v) / 2;
        auto w = e8_pair((int)n);
        GramMatrix M = block_diag(L, e8_gram());
        size_t N = L.rank();
        IVec a(N + 8, 0), b(N + 8, 0);
        for (size_t i = 0; i < N; ++i) a[i] = b[i] = v[i];
        for (size_t i = 0; i < 8; ++i) { a[N + i] = w.first[i]; b[N + i] = w.second[i]; }
        if (M.norm(a) != 0 || M.norm(b) != 0 || M.pair(a, b) != -1)
            throw std::logic_error("stabilize: glued vectors do not span a hyperbolic plane");
        GramMatrix next = orthogonal_complement(M, {a, b});
        int before = L.signature().second, after = next.signature().second;
        if (after != before - 1) throw std::logic_error("stabilize: negative index did not drop by one");
        if (log) log->push_back({L, v, n, w, before, after});
        L = next;
    }
    return lll_reduce(L).first;
}

}  // namespace latjac
