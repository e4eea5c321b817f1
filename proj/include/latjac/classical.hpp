#pragma once
// Level one elliptic modular forms as truncated q-expansions.

#include "latjac/arith.hpp"

#include <vector>

namespace latjac {

// sum_{n_min <= n < B} c(n) q^n
class QSeries {
public:
    QSeries() = default;
    QSeries(long nmin, long B) : nmin_(nmin), B_(B), c_(B > nmin ? B - nmin : 0) {}
    static QSeries constant(const Q& c, long B);

    long nmin() const { return nmin_; }
    long precision() const { return B_; }
    Q at(long n) const { return (n < nmin_ || n >= B_) ? Q(0) : c_[n - nmin_]; }
    Q& operator[](long n) { return c_[n - nmin_]; }
    bool is_zero() const;
    QSeries truncate(long B) const;

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Q& s) const;
    bool operator==(const QSeries& o) const;  // same range and coefficients

private:
    long nmin_ = 0, B_ = 0;
    std::vector<Q> c_;
};

QSeries eisenstein(int k, long B);  // k in {4, 6}
QSeries delta(long B);
long dim_mf(long k);
// echelonized basis of M_k (leading coefficients form an identity block)
std::vector<QSeries> mf_basis(long k, long B);
QSeries hecke_Tl(const QSeries& f, long k, long l);
QSeries divide_by_delta_power(const QSeries& f, long t);
// exact division by a series with nonzero leading coefficient
QSeries series_divide(const QSeries& f, const QSeries& g);

// sum of d^e over positive divisors d of n
Z divisor_sigma(long n, long e);

}  // namespace latjac
