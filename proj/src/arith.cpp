#include "latjac/arith.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace latjac {

std::string to_string(const Q& xin) {
    Q x = xin;
    x.canonicalize();
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& s) {
    Q r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

Z floor_q(const Q& x) {
    Z f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

Q frac_part(const Q& x) { return x - Q(floor_q(x)); }

// ---- cyclotomic field ----

namespace {

using Poly = std::vector<int64_t>;  // low degree first

Poly poly_divexact(Poly a, const Poly& b) {
    int db = (int)b.size() - 1;
    Poly q(a.size() - db, 0);
    for (int i = (int)a.size() - 1; i >= db; --i) {
        int64_t c = a[i] / b[db];
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

Poly cyclotomic_poly(int M) {
    static std::map<int, Poly> memo;
    auto it = memo.find(M);
    if (it != memo.end()) return it->second;
    Poly p(M + 1, 0);
    p[0] = -1;
    p[M] = 1;
    for (int d = 1; d < M; ++d)
        if (M % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
    memo[M] = p;
    return p;
}

}  // namespace

CycField::CycField(int M) : M_(M) {
    Poly phi = cyclotomic_poly(M);
    deg_ = (int)phi.size() - 1;
    pow_.assign(M, std::vector<int64_t>(deg_, 0));
    std::vector<int64_t> cur(deg_, 0);
    if (deg_ > 0) cur[0] = 1;
    for (int j = 0; j < M; ++j) {
        pow_[j] = cur;
        // multiply by x
        int64_t top = cur[deg_ - 1];
        for (int i = deg_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (int i = 0; i < deg_; ++i) cur[i] -= top * phi[i];
    }
}

std::shared_ptr<const CycField> CycField::get(int M) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CycField>> fields;
    if (M < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto& f = fields[M];
    if (!f) f.reset(new CycField(M));
    return f;
}

Cyclotomic::Cyclotomic(int M) : F_(CycField::get(M)), c_(F_->degree()) {}

Cyclotomic::Cyclotomic(int M, const Q& c) : Cyclotomic(M) { c_[0] = c; }

Cyclotomic Cyclotomic::root(long long a, int M) {
    Cyclotomic z(M);
    long long j = ((a % M) + M) % M;
    const auto& p = z.F_->power((int)j);
    for (int i = 0; i < z.F_->degree(); ++i) z.c_[i] = Q(Z((long)p[i]));
    return z;
}

Cyclotomic Cyclotomic::e(const Q& x, int M) {
    Q y = frac_part(x) * M;
    if (y.get_den() != 1) throw std::invalid_argument("e(x): denominator does not divide field order");
    return root(y.get_num().get_si(), M);
}

bool Cyclotomic::is_zero() const {
    for (const auto& a : c_)
        if (a != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Q Cyclotomic::rational() const {
    if (!is_rational()) throw std::logic_error("cyclotomic number is not rational");
    return c_.empty() ? Q(0) : c_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r = *this;
    r += o;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (!F_) { *this = o; return *this; }
    if (o.F_ && o.F_ != F_) throw std::logic_error("cyclotomic order mismatch");
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Q& s) const {
    Cyclotomic r = *this;
    for (auto& a : r.c_) a *= s;
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (F_ != o.F_) throw std::logic_error("cyclotomic order mismatch");
    int d = F_->degree(), M = F_->order();
    QVec prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    Cyclotomic r(M);
    for (int i = 0; i < d; ++i) r.c_[i] = prod[i];
    for (int i = d; i < 2 * d - 1; ++i) {
        if (prod[i] == 0) continue;
        const auto& p = F_->power(i % M);
        for (int j = 0; j < d; ++j)
            if (p[j]) r.c_[j] += prod[i] * Q(Z((long)p[j]));
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (F_ != o.F_) return is_zero() && o.is_zero();
    return c_ == o.c_;
}

Cyclotomic Cyclotomic::conj() const {
    int d = F_->degree(), M = F_->order();
    Cyclotomic r(M);
    for (int j = 0; j < d; ++j) {
        if (c_[j] == 0) continue;
        const auto& p = F_->power((M - j) % M);
        for (int i = 0; i < d; ++i)
            if (p[i]) r.c_[i] += c_[j] * Q(Z((long)p[i]));
    }
    return r;
}

// ---- matrices ----

QMatrix QMatrix::identity(size_t n) {
    QMatrix I(n, n);
    for (size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, size_t cols) {
    QMatrix M(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        for (size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

QVec QMatrix::row(size_t i) const { return QVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix size mismatch");
    QMatrix R(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Q& a = (*this)(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < o.c_; ++j)
                if (o(k, j) != 0) R(i, j) += a * o(k, j);
        }
    return R;
}

QVec QMatrix::apply(const QVec& v) const {
    if (v.size() != c_) throw std::invalid_argument("vector size mismatch");
    QVec out(r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (v[j] != 0 && (*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix T(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

bool QMatrix::operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

Q dot(const QVec& a, const QVec& b) {
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

// ---- echelon forms ----

namespace {

// In-place RREF on a list of rows; returns pivots.
std::vector<size_t> rref_rows(std::vector<QVec>& rows, size_t n) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Q inv = 1 / rows[r][c];
        for (size_t j = c; j < n; ++j)
            if (rows[r][j] != 0) rows[r][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Q f = rows[i][c];
            for (size_t j = c; j < n; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}

}  // namespace

QSubspace QSubspace::span(const std::vector<QVec>& rows, size_t ambient) {
    QSubspace S(ambient);
    S.basis_ = rows;
    for (const auto& v : rows)
        if (v.size() != ambient) throw std::invalid_argument("span: dimension mismatch");
    S.piv_ = rref_rows(S.basis_, ambient);
    return S;
}

QSubspace QSubspace::full(size_t ambient) {
    std::vector<QVec> rows(ambient, QVec(ambient));
    for (size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
    return span(rows, ambient);
}

bool QSubspace::contains(const QVec& v) const {
    if (v.size() != n_) throw std::invalid_argument("contains: dimension mismatch");
    QVec w = v;
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (w[piv_[i]] == 0) continue;
        Q f = w[piv_[i]];
        for (size_t j = 0; j < n_; ++j)
            if (basis_[i][j] != 0) w[j] -= f * basis_[i][j];
    }
    for (const auto& a : w)
        if (a != 0) return false;
    return true;
}

QVec QSubspace::coordinates(const QVec& v) const {
    if (!contains(v)) throw std::invalid_argument("coordinates: vector not in subspace");
    QVec c(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) c[i] = v[piv_[i]];
    return c;
}

bool QSubspace::operator==(const QSubspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

std::vector<QVec> QSubspace::annihilator() const {
    std::vector<char> is_piv(n_, 0);
    for (auto p : piv_) is_piv[p] = 1;
    std::vector<QVec> out;
    for (size_t f = 0; f < n_; ++f) {
        if (is_piv[f]) continue;
        QVec v(n_);
        v[f] = 1;
        for (size_t i = 0; i < basis_.size(); ++i) v[piv_[i]] = -basis_[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

RrefResult rref(const QMatrix& M) {
    std::vector<QVec> rows;
    for (size_t i = 0; i < M.rows(); ++i) rows.push_back(M.row(i));
    QSubspace S = QSubspace::span(rows, M.cols());
    return {S, S.pivots()};
}

namespace {

constexpr uint64_t kPrime = (1ULL << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) { return (uint64_t)((unsigned __int128)a * b % kPrime); }

uint64_t powmod(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}

uint64_t reduce_z(const Z& z) { return mpz_fdiv_ui(z.get_mpz_t(), kPrime); }

}  // namespace

std::optional<size_t> rank_mod_prime(const std::vector<QVec>& rows) {
    if (rows.empty()) return 0;
    size_t n = rows[0].size();
    std::vector<std::vector<uint64_t>> a;
    for (const auto& r : rows) {
        std::vector<uint64_t> v(n);
        for (size_t j = 0; j < n; ++j) {
            if (r[j] == 0) continue;
            uint64_t den = reduce_z(r[j].get_den());
            if (den == 0) return std::nullopt;
            v[j] = mulmod(reduce_z(r[j].get_num()), powmod(den, kPrime - 2));
        }
        a.push_back(std::move(v));
    }
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < a.size(); ++c) {
        size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        uint64_t inv = powmod(a[rank][c], kPrime - 2);
        for (size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            uint64_t f = mulmod(a[i][c], inv);
            for (size_t j = c; j < n; ++j)
                if (a[rank][j]) a[i][j] = (a[i][j] + kPrime - mulmod(f, a[rank][j])) % kPrime;
        }
        ++rank;
    }
    return rank;
}

QSubspace kernel(const QMatrix& M) {
    // kernel of M = annihilator of its row space
    RrefResult R = rref(M);
    return QSubspace::span(R.space.annihilator(), M.cols());
}

QSubspace intersect(const QSubspace& A, const QSubspace& B) {
    if (A.ambient() != B.ambient()) throw std::invalid_argument("intersect: dimension mismatch");
    std::vector<QVec> cons = A.annihilator();
    auto cb = B.annihilator();
    cons.insert(cons.end(), cb.begin(), cb.end());
    QSubspace C = QSubspace::span(cons, A.ambient());
    return QSubspace::span(C.annihilator(), A.ambient());
}

QSubspace sum(const QSubspace& A, const QSubspace& B) {
    if (A.ambient() != B.ambient()) throw std::invalid_argument("sum: dimension mismatch");
    std::vector<QVec> rows = A.basis();
    rows.insert(rows.end(), B.basis().begin(), B.basis().end());
    return QSubspace::span(rows, A.ambient());
}

QSubspace preimage(const QMatrix& M, const QSubspace& S) {
    if (M.rows() != S.ambient()) throw std::invalid_argument("preimage: dimension mismatch");
    auto ann = S.annihilator();
    if (ann.empty()) return QSubspace::full(M.cols());
    QMatrix C = QMatrix::from_rows(ann, S.ambient()) * M;
    return kernel(C);
}

QSubspace image(const QMatrix& M, const QSubspace& S) {
    if (M.cols() != S.ambient()) throw std::invalid_argument("image: dimension mismatch");
    std::vector<QVec> rows;
    for (const auto& v : S.basis()) rows.push_back(M.apply(v));
    return QSubspace::span(rows, M.rows());
}

std::vector<QVec> complement_rows(const QSubspace& A, const QSubspace& B) {
    std::vector<QVec> out;
    QSubspace cur = A;
    for (const auto& v : B.basis()) {
        if (cur.contains(v)) continue;
        out.push_back(v);
        cur = sum(cur, QSubspace::span({v}, A.ambient()));
    }
    return out;
}

}  // namespace latjac
