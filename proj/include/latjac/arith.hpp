#pragma once
// Exact rationals, cyclotomic numbers and dense rational linear algebra.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <optional>
#include <vector>

namespace latjac {

using Q = mpq_class;
using Z = mpz_class;
using QVec = std::vector<Q>;

std::string to_string(const Q& x);
Q parse_rational(const std::string& s);

inline Q qll(long long x) { return Q(Z(static_cast<long>(x))); }
inline Q qfrac(long long a, long long b) {
    Q r(Z(static_cast<long>(a)), Z(static_cast<long>(b)));
    r.canonicalize();
    return r;
}

Z floor_q(const Q& x);
Q frac_part(const Q& x);  // in [0, 1)

// Q(zeta_M) in the power basis modulo Phi_M.
class CycField {
public:
    static std::shared_ptr<const CycField> get(int M);

    int order() const { return M_; }
    int degree() const { return deg_; }
    // x^j mod Phi_M for 0 <= j < M, as integer coefficient rows
    const std::vector<int64_t>& power(int j) const { return pow_[j]; }

private:
    explicit CycField(int M);
    int M_, deg_;
    std::vector<std::vector<int64_t>> pow_;
};

class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(int M);
    Cyclotomic(int M, const Q& c);

    static Cyclotomic root(long long a, int M);  // zeta_M^a
    static Cyclotomic e(const Q& x, int M);      // exp(2 pi i x), needs den(x) | M

    int order() const { return F_ ? F_->order() : 0; }
    const QVec& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Q rational() const;  // throws unless is_rational()

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Q& s) const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic conj() const;

private:
    std::shared_ptr<const CycField> F_;
    QVec c_;
};

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
    static QMatrix identity(size_t n);
    static QMatrix from_rows(const std::vector<QVec>& rows, size_t cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Q& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Q& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
    QVec row(size_t i) const;

    QMatrix operator*(const QMatrix& o) const;
    QVec apply(const QVec& v) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const;

private:
    size_t r_ = 0, c_ = 0;
    QVec a_;
};

// Row space in reduced row echelon form; equal spaces have equal storage.
class QSubspace {
public:
    QSubspace() = default;
    explicit QSubspace(size_t ambient) : n_(ambient) {}
    static QSubspace span(const std::vector<QVec>& rows, size_t ambient);
    static QSubspace full(size_t ambient);

    size_t ambient() const { return n_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<QVec>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return piv_; }
    bool contains(const QVec& v) const;
    // coordinates of v in the stored basis; v must lie in the space
    QVec coordinates(const QVec& v) const;
    bool operator==(const QSubspace& o) const;
    bool operator!=(const QSubspace& o) const { return !(*this == o); }

    // rows spanning the annihilator {c : c.v = 0 for v in space}
    std::vector<QVec> annihilator() const;

private:
    size_t n_ = 0;
    std::vector<QVec> basis_;
    std::vector<size_t> piv_;
};

struct RrefResult {
    QSubspace space;
    std::vector<size_t> pivots;
    size_t rank() const { return pivots.size(); }
};

RrefResult rref(const QMatrix& M);
QSubspace kernel(const QMatrix& M);  // right kernel {v : M v = 0}
QSubspace intersect(const QSubspace& A, const QSubspace& B);
QSubspace sum(const QSubspace& A, const QSubspace& B);
QSubspace preimage(const QMatrix& M, const QSubspace& S);
QSubspace image(const QMatrix& M, const QSubspace& S);
// rows of B whose addition to A extends it to A + B, echelon-greedy
std::vector<QVec> complement_rows(const QSubspace& A, const QSubspace& B);

Q dot(const QVec& a, const QVec& b);

// rank of the rows reduced modulo the prime 2^61 - 1; a lower bound for the
// rational rank, nullopt if a denominator vanishes modulo the prime
std::optional<size_t> rank_mod_prime(const std::vector<QVec>& rows);

}  // namespace latjac
