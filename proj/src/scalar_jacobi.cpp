#include "latjac/scalar_jacobi.hpp"

#include "latjac/weil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latjac {

Q BiSeries::at(long n, long r) const {
    if (n < 0 || n >= precision()) return 0;
    const Row& R = rows_[n];
    long i = r - R.lo;
    if (i < 0 || i >= (long)R.c.size()) return 0;
    return R.c[i];
}

void BiSeries::add(long n, long r, const Q& c) {
    if (n < 0 || n >= precision() || c == 0) return;
    Row& R = rows_[n];
    if (R.c.empty()) {
        R.lo = r;
        R.c.assign(1, c);
        return;
    }
    if (r < R.lo) {
        R.c.insert(R.c.begin(), R.lo - r, Q(0));
        R.lo = r;
    }
    long i = r - R.lo;
    if (i >= (long)R.c.size()) R.c.resize(i + 1);
    R.c[i] += c;
}

BiSeries BiSeries::operator*(const BiSeries& o) const {
    long B = std::min(precision(), o.precision());
    BiSeries out(B);
    for (long n = 0; n < B; ++n) {
        long lo = 0, hi = -1;
        bool any = false;
        for (long a = 0; a <= n; ++a) {
            const Row &x = rows_[a], &y = o.rows_[n - a];
            if (x.c.empty() || y.c.empty()) continue;
            long l = x.lo + y.lo, h = l + (long)x.c.size() + (long)y.c.size() - 2;
            if (!any) { lo = l; hi = h; any = true; }
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
        if (!any) continue;
        Row& R = out.rows_[n];
        R.lo = lo;
        R.c.assign(hi - lo + 1, Q(0));
        for (long a = 0; a <= n; ++a) {
            const Row &x = rows_[a], &y = o.rows_[n - a];
            for (size_t i = 0; i < x.c.size(); ++i) {
                if (x.c[i] == 0) continue;
                for (size_t j = 0; j < y.c.size(); ++j)
                    if (y.c[j] != 0) R.c[x.lo + (long)i + y.lo + (long)j - lo] += x.c[i] * y.c[j];
            }
        }
    }
    return out;
}

BiSeries BiSeries::operator*(const QSeries& f) const {
    if (f.nmin() < 0) throw std::invalid_argument("BiSeries: holomorphic multiplier expected");
    long B = std::min(precision(), f.precision());
    BiSeries out(B);
    for (long n = 0; n < B; ++n)
        for (long i = 0; i <= n; ++i) {
            Q c = f.at(i);
            if (c == 0) continue;
            const Row& x = rows_[n - i];
            for (size_t j = 0; j < x.c.size(); ++j)
                if (x.c[j] != 0) out.add(n, x.lo + (long)j, c * x.c[j]);
        }
    return out;
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
    long B = std::min(precision(), o.precision());
    BiSeries out(B);
    for (long n = 0; n < B; ++n)
        for (const BiSeries* s : {this, &o}) {
            const Row& x = s->rows_[n];
            for (size_t j = 0; j < x.c.size(); ++j) out.add(n, x.lo + (long)j, x.c[j]);
        }
    return out;
}

BiSeries BiSeries::operator*(const Q& s) const {
    BiSeries out = *this;
    for (auto& R : out.rows_)
        for (auto& c : R.c) c *= s;
    return out;
}

BiSeries BiSeries::divide(const QSeries& g) const {
    if (g.nmin() < 0 || g.at(0) == 0) throw std::invalid_argument("BiSeries: divisor must be a unit power series");
    long B = std::min(precision(), g.precision());
    BiSeries out(B);
    Q inv = 1 / g.at(0);
    for (long n = 0; n < B; ++n) {
        const Row& x = rows_[n];
        for (size_t j = 0; j < x.c.size(); ++j) out.add(n, x.lo + (long)j, x.c[j]);
        for (long i = 1; i <= n; ++i) {
            Q gi = g.at(i);
            if (gi == 0) continue;
            const Row& y = out.rows_[n - i];
            for (size_t j = 0; j < y.c.size(); ++j)
                if (y.c[j] != 0) out.add(n, y.lo + (long)j, -gi * y.c[j]);
        }
        for (auto& c : out.rows_[n].c) c *= inv;
    }
    return out;
}

BiSeries BiSeries::even_part_halved() const {
    BiSeries out((precision() + 1) / 2);
    for (long n = 0; n < out.precision(); ++n) out.rows_[n] = rows_[2 * n];
    return out;
}

BiSeries BiSeries::truncate(long B) const {
    BiSeries out(std::min(B, precision()));
    for (long n = 0; n < out.precision(); ++n) out.rows_[n] = rows_[n];
    return out;
}

namespace {

long tri(long a) { return a * (a + 1) / 2; }

// largest A with tri(A) < B
long tri_bound(long B) {
    long A = 0;
    while (tri(A + 1) < B) ++A;
    return A;
}

}  // namespace

WeakGenerators weak_generators(long B) {
    if (B < 1) throw std::invalid_argument("weak_generators: precision must be positive");
    long A = tri_bound(B);
    BiSeries th1sq(B), X(B), th1two(B);
    QSeries X1(0, B), eta3(0, B);
    for (long a = -A - 1; a <= A; ++a) {
        long ta = tri(a);
        if (ta >= B) continue;
        th1two.add(ta, 2 * a + 1, (a % 2) ? -1 : 1);
        for (long b = -A - 1; b <= A; ++b) {
            long e = ta + tri(b);
            if (e >= B) continue;
            int s = ((a + b) % 2) ? -1 : 1;
            th1sq.add(e, a + b + 1, s);
            X.add(e, a + b + 1, 1);
            X1[e] += 1;
        }
    }
    for (long n = 0; tri(n) < B; ++n) eta3[tri(n)] += (n % 2 ? -1 : 1) * (2 * n + 1);
    WeakGenerators W;
    W.phi_m2_1 = th1sq.divide(eta3 * eta3);
    W.phi_m1_2 = th1two.divide(eta3);
    // theta_3(z)^2 / theta_3(0)^2 in powers of q^{1/2}; adding the theta_4 term keeps the even part twice
    long B2 = 2 * B;
    long R = (long)std::sqrt((double)B2) + 1;
    BiSeries th3(B2);
    QSeries th30(0, B2);
    for (long a = -R; a <= R; ++a)
        for (long b = -R; b <= R; ++b) {
            long e = a * a + b * b;
            if (e >= B2) continue;
            th3.add(e, a + b, 1);
            th30[e] += 1;
        }
    BiSeries even = th3.divide(th30).even_part_halved().truncate(B);
    W.phi_0_1 = (X.divide(X1) + even * Q(2)) * Q(4);
    return W;
}

ScalarIndex::ScalarIndex(long m, long B, int parity) : m_(m), B_(B), parity_(((parity % 2) + 2) % 2) {
    if (m < 1) throw std::invalid_argument("scalar index must be positive");
    for (long n = 0; n < B; ++n) {
        offset_.push_back((long)coords_.size());
        for (long r = 0; r <= m; ++r) {
            if (parity_ && (r == 0 || r == m)) continue;
            if (4 * n * m - r * r < 0) break;
            coords_.push_back({n, r});
        }
    }
    offset_.push_back((long)coords_.size());
}

long ScalarIndex::find(long n, long r) const {
    if (n < 0 || n >= B_ || r < 0 || r > m_) return -1;
    if (parity_ && (r == 0 || r == m_)) return -1;
    if (4 * n * m_ - r * r < 0) return -1;
    return offset_[n] + r - (parity_ ? 1 : 0);
}

std::pair<long, int> ScalarIndex::reduce(long n, long r) const {
    long M2 = 2 * m_;
    long rr = ((r % M2) + M2) % M2;
    int sign = 1;
    if (rr > m_) {
        rr = M2 - rr;
        if (parity_) sign = -1;
    }
    long disc = 4 * n * m_ - r * r;
    if (disc < 0) return {-1, 0};
    long n2 = (disc + rr * rr) / (4 * m_);
    if (n2 >= B_) throw std::out_of_range("ScalarIndex::reduce: beyond precision");
    long p = find(n2, rr);
    if (p < 0) return {-1, 0};
    return {p, sign};
}

QVec reduced_coefficients(const BiSeries& phi, const ScalarIndex& I) {
    QVec v;
    v.reserve(I.size());
    for (const auto& [n, r] : I.coords()) v.push_back(phi.at(n, r));
    return v;
}

namespace {

std::vector<BiSeries> powers(const BiSeries& x, long e) {
    std::vector<BiSeries> p;
    BiSeries one(x.precision());
    one.add(0, 0, 1);
    p.push_back(one);
    for (long i = 1; i <= e; ++i) p.push_back(p.back() * x);
    return p;
}

}  // namespace

QSubspace scalar_jacobi_basis(long k, long m, long B) {
    int parity = (int)(((k % 2) + 2) % 2);
    ScalarIndex IB(m, B, parity);
    if (parity && m < 2) return QSubspace(IB.size());
    long expected = -1;
    if (k >= 3) expected = dim_jacobi(k, GramMatrix(IMat{{2 * m}}));
    long Bint = std::max({B, (k + 2 * m) / 12 + 2, m / 4 + 2});
    for (int attempt = 0; attempt < 4; ++attempt, Bint *= 2) {
        WeakGenerators W = weak_generators(Bint);
        long mm = parity ? m - 2 : m;
        long kk = parity ? k + 1 : k;
        auto pm2 = powers(W.phi_m2_1, mm), p0 = powers(W.phi_0_1, mm);
        ScalarIndex I(m, Bint, parity);
        std::vector<std::pair<long, long>> cons;
        for (long n = 0; n < std::min(Bint, m / 4 + 1); ++n)
            for (long r = 0; r <= m; ++r)
                if (r * r > 4 * n * m) cons.push_back({n, r});
        std::vector<QVec> full, red;
        std::vector<QVec> C;
        for (long a = 0; a <= mm; ++a) {
            auto basis = mf_basis(kk + 2 * a, Bint);
            if (basis.empty()) continue;
            BiSeries P = pm2[a] * p0[mm - a];
            if (parity) P = P * W.phi_m1_2;
            for (const auto& f : basis) {
                BiSeries g = P * f;
                QVec c;
                for (const auto& [n, r] : cons) c.push_back(g.at(n, r));
                QVec rv = reduced_coefficients(g, I);
                QVec all = c;
                all.insert(all.end(), rv.begin(), rv.end());
                full.push_back(all);
                red.push_back(rv);
                C.push_back(c);
            }
        }
        size_t g = red.size();
        if (g == 0) {
            if (expected > 0) throw std::logic_error("scalar_jacobi_basis: construction misses forms");
            return QSubspace(IB.size());
        }
        // full rank modulo a prime already proves independence over Q
        auto rk = rank_mod_prime(full);
        if (!(rk && *rk == g) && rref(QMatrix::from_rows(full, full[0].size())).rank() < g) continue;
        // kernel of the constraint map on generator coefficients
        QMatrix Ct(cons.size(), g);
        for (size_t j = 0; j < g; ++j)
            for (size_t i = 0; i < cons.size(); ++i) Ct(i, j) = C[j][i];
        QSubspace K = cons.empty() ? QSubspace::full(g) : kernel(Ct);
        if (expected >= 0 && (long)K.dim() != expected)
            throw std::logic_error("scalar_jacobi_basis: weak ring construction gives dimension " +
                                   std::to_string(K.dim()) + ", formula gives " + std::to_string(expected));
        std::vector<QVec> out;
        for (const auto& kv : K.basis()) {
            QVec v(IB.size());
            for (size_t j = 0; j < g; ++j)
                if (kv[j] != 0)
                    for (size_t i = 0; i < IB.size(); ++i) v[i] += kv[j] * red[j][i];
            out.push_back(v);
        }
        return QSubspace::span(out, IB.size());
    }
    throw std::logic_error("scalar_jacobi_basis: generators stay dependent at every tried precision");
}

QVec scalar_U_l(const QVec& phi, long k, long m, long l, long B) {
    if (l < 1) throw std::invalid_argument("scalar_U_l: l must be positive");
    int parity = (int)(((k % 2) + 2) % 2);
    ScalarIndex I(m, B, parity), O(m * l * l, B, parity);
    if (phi.size() != I.size()) throw std::invalid_argument("scalar_U_l: coefficient vector has wrong size");
    QVec out(O.size());
    for (size_t i = 0; i < O.size(); ++i) {
        auto [n, r] = O.coords()[i];
        if (r % l) continue;
        auto [p, s] = I.reduce(n, r / l);
        if (p >= 0) out[i] = phi[p] * s;
    }
    return out;
}

QSubspace scalar_oldspace(long k, long m, long B) {
    int parity = (int)(((k % 2) + 2) % 2);
    ScalarIndex O(m, B, parity);
    std::vector<QVec> rows;
    for (long t = 2; t * t <= m; ++t) {
        if (m % (t * t)) continue;
        QSubspace S = scalar_jacobi_basis(k, m / (t * t), B);
        for (const auto& v : S.basis()) rows.push_back(scalar_U_l(v, k, m / (t * t), t, B));
    }
    return QSubspace::span(rows, O.size());
}

}  // namespace latjac
