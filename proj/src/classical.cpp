#include "latjac/classical.hpp"

#include <algorithm>
#include <stdexcept>

namespace latjac {

QSeries QSeries::constant(const Q& c, long B) {
    QSeries s(0, B);
    if (B > 0) s[0] = c;
    return s;
}

bool QSeries::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

QSeries QSeries::truncate(long B) const {
    QSeries r(nmin_, std::min(B, B_));
    for (long n = nmin_; n < r.B_; ++n) r[n] = at(n);
    return r;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries r(std::min(nmin_, o.nmin_), std::min(B_, o.B_));
    for (long n = r.nmin_; n < r.B_; ++n) r[n] = at(n) + o.at(n);
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * Q(-1); }

QSeries QSeries::operator*(const Q& s) const {
    QSeries r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
    long B = std::min(B_ + o.nmin_, o.B_ + nmin_);
    QSeries r(nmin_ + o.nmin_, B);
    for (long i = nmin_; i < B_; ++i) {
        const Q& a = c_[i - nmin_];
        if (a == 0) continue;
        for (long j = o.nmin_; j < o.B_ && i + j < B; ++j) {
            const Q& b = o.c_[j - o.nmin_];
            if (b != 0) r[i + j] += a * b;
        }
    }
    return r;
}

bool QSeries::operator==(const QSeries& o) const { return nmin_ == o.nmin_ && B_ == o.B_ && c_ == o.c_; }

Z divisor_sigma(long n, long e) {
    Z s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Z p;
            mpz_pow_ui(p.get_mpz_t(), Z(d).get_mpz_t(), (unsigned long)e);
            s += p;
        }
    return s;
}

QSeries eisenstein(int k, long B) {
    if (k != 4 && k != 6) throw std::invalid_argument("eisenstein: only weights 4 and 6");
    if (B < 1) throw std::invalid_argument("eisenstein: precision must be positive");
    QSeries E = QSeries::constant(1, B);
    long c = (k == 4) ? 240 : -504;
    for (long n = 1; n < B; ++n) E[n] = Q(divisor_sigma(n, k - 1) * c);
    return E;
}

QSeries delta(long B) {
    // q prod (1 - q^n)^24 via the pentagonal expansion of prod (1 - q^n)
    QSeries eta(0, B);
    for (long j = 0;; ++j) {
        bool any = false;
        for (long s : {1L, -1L}) {
            if (j == 0 && s == -1) continue;
            long e = j * (3 * j - s) / 2;
            if (e < B) {
                eta[e] += (j % 2) ? -1 : 1;
                any = true;
            }
        }
        if (!any) break;
    }
    QSeries p = QSeries::constant(1, B);
    for (int i = 0; i < 24; ++i) p = p * eta;
    QSeries D(0, B);
    for (long n = 1; n < B; ++n) D[n] = p.at(n - 1);
    return D;
}

long dim_mf(long k) {
    if (k < 0 || k % 2) return 0;
    if (k % 12 == 2) return k / 12;
    return k / 12 + 1;
}

namespace {

QSeries power(const QSeries& f, long e, long B) {
    QSeries r = QSeries::constant(1, B);
    for (long i = 0; i < e; ++i) r = r * f;
    return r;
}

}  // namespace

std::vector<QSeries> mf_basis(long k, long B) {
    long d = dim_mf(k);
    std::vector<QSeries> out;
    if (d == 0) return out;
    long P = std::max(B, d + 1);
    QSeries E4 = eisenstein(4, P), E6 = eisenstein(6, P), D = delta(P);
    std::vector<QVec> rows;
    for (long c = 0; c < d; ++c) {
        long w = k - 12 * c, a = -1, b = -1;
        for (long bb = 0; 6 * bb <= w; ++bb)
            if ((w - 6 * bb) % 4 == 0) { a = (w - 6 * bb) / 4; b = bb; break; }
        if (a < 0) throw std::logic_error("mf_basis: no monomial of weight " + std::to_string(w));
        QSeries f = power(E4, a, P) * power(E6, b, P) * power(D, c, P);
        QVec v(P);
        for (long n = 0; n < P; ++n) v[n] = f.at(n);
        rows.push_back(v);
    }
    RrefResult R = rref(QMatrix::from_rows(rows, P));
    if (R.rank() != (size_t)d) throw std::logic_error("mf_basis: monomials are dependent");
    for (const auto& v : R.space.basis()) {
        QSeries f(0, B);
        for (long n = 0; n < B; ++n) f[n] = v[n];
        out.push_back(f);
    }
    return out;
}

QSeries hecke_Tl(const QSeries& f, long k, long l) {
    if (l < 1) throw std::invalid_argument("hecke_Tl: l must be positive");
    if (f.nmin() < 0) throw std::invalid_argument("hecke_Tl: holomorphic series expected");
    long B = f.precision() / l;
    QSeries r(0, B);
    for (long n = 0; n < B; ++n) {
        Q s = 0;
        for (long d = 1; d <= l; ++d) {
            if (l % d || (n % d)) continue;
            Z p;
            mpz_pow_ui(p.get_mpz_t(), Z(d).get_mpz_t(), (unsigned long)(k - 1));
            s += Q(p) * f.at(n * l / (d * d));
        }
        r[n] = s;
    }
    return r;
}

QSeries series_divide(const QSeries& f, const QSeries& g) {
    long g0 = g.nmin();
    while (g0 < g.precision() && g.at(g0) == 0) ++g0;
    if (g0 >= g.precision()) throw std::invalid_argument("series_divide: zero divisor");
    long gl = g.precision() - g0;
    long B = std::min(f.precision() - g0, f.nmin() - g0 + gl);
    QSeries r(f.nmin() - g0, B);
    Q inv = 1 / g.at(g0);
    for (long n = r.nmin(); n < B; ++n) {
        Q s = f.at(n + g0);
        for (long i = 1; g0 + i < g.precision() && n - i >= r.nmin(); ++i) {
            const Q gi = g.at(g0 + i);
            if (gi != 0) s -= gi * r.at(n - i);
        }
        r[n] = s * inv;
    }
    return r;
}

QSeries divide_by_delta_power(const QSeries& f, long t) {
    if (t < 0) throw std::invalid_argument("divide_by_delta_power: negative power");
    if (t == 0) return f;
    long P = f.precision() - f.nmin() + 1;
    QSeries Dt = power(delta(P + t + 1), t, P + t + 1);
    QSeries r = series_divide(f, Dt);
    return r.truncate(f.precision() - t);
}

}  // namespace latjac
