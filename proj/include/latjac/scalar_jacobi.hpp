#pragma once
// Jacobi forms of scalar index m (lattice (2m)) from the weak Jacobi ring.

#include "latjac/classical.hpp"

#include <utility>
#include <vector>

namespace latjac {

// sum over 0 <= n < B of q^n times a Laurent polynomial in zeta
class BiSeries {
public:
    BiSeries() = default;
    explicit BiSeries(long B) : rows_(B > 0 ? B : 0) {}

    long precision() const { return (long)rows_.size(); }
    Q at(long n, long r) const;
    void add(long n, long r, const Q& c);
    // lowest / highest zeta power present in row n (lo > hi if empty)
    long lo(long n) const { return rows_[n].lo; }
    long hi(long n) const { return rows_[n].lo + (long)rows_[n].c.size() - 1; }

    BiSeries operator*(const BiSeries& o) const;
    BiSeries operator*(const QSeries& f) const;  // f with nmin >= 0
    BiSeries operator+(const BiSeries& o) const;
    BiSeries operator*(const Q& s) const;
    BiSeries divide(const QSeries& g) const;  // g(0) != 0
    // keep even exponents and halve them (series in q^{1/2} -> series in q)
    BiSeries even_part_halved() const;
    BiSeries truncate(long B) const;

private:
    struct Row {
        long lo = 0;
        std::vector<Q> c;
    };
    std::vector<Row> rows_;
};

struct WeakGenerators {
    BiSeries phi_m2_1, phi_0_1, phi_m1_2;
};
WeakGenerators weak_generators(long B);

// Reduced coordinates (n, r), 0 <= r <= m, 4nm - r^2 >= 0, n < B, ordered
// lexicographically; odd parity drops r = 0 and r = m.
class ScalarIndex {
public:
    ScalarIndex(long m, long B, int parity);
    long m() const { return m_; }
    long precision() const { return B_; }
    int parity() const { return parity_; }
    size_t size() const { return coords_.size(); }
    const std::vector<std::pair<long, long>>& coords() const { return coords_; }
    // position of reduced (n, r) or -1
    long find(long n, long r) const;
    // reduce an arbitrary (n, r) to (position or -1, sign)
    std::pair<long, int> reduce(long n, long r) const;

private:
    long m_, B_;
    int parity_;
    std::vector<std::pair<long, long>> coords_;
    std::vector<long> offset_;  // first position of row n
};

// Coefficient vector of a (weak) Jacobi form on the reduced coordinates.
QVec reduced_coefficients(const BiSeries& phi, const ScalarIndex& I);

// J_{k,m} truncated at n < B as a subspace of the ScalarIndex(m, B, k) coordinates.
QSubspace scalar_jacobi_basis(long k, long m, long B);

// phi(tau, l z): index m -> m l^2, same precision
QVec scalar_U_l(const QVec& phi, long k, long m, long l, long B);

QSubspace scalar_oldspace(long k, long m, long B);

}  // namespace latjac
