#include "latjac/lattice_jacobi.hpp"

#include "latjac/cache.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace latjac {

namespace {

IVec negated(IVec v) {
    for (auto& x : v) x = -x;
    return v;
}

long long adj_norm_of(const IMat& A, const IVec& r) {
    long long s = 0;
    for (size_t a = 0; a < r.size(); ++a)
        for (size_t b = 0; b < r.size(); ++b) s += r[a] * A[a][b] * r[b];
    return s;
}

long long floor_div(long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

std::string ivec_key(const IVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string gram_key(const GramMatrix& G) {
    std::string s;
    for (size_t i = 0; i < G.rank(); ++i) s += (i ? ";" : "") + ivec_key(G.entries()[i]);
    return s;
}

bool primitive(const IVec& v) {
    long long g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g == 1;
}

// Primitive vectors in (q_G, lex) order, one per sign pair.
class VectorStream {
public:
    explicit VectorStream(const GramMatrix& G) : G_(G) {}
    IVec next() {
        while (idx_ >= buf_.size()) refill();
        return buf_[idx_++];
    }

private:
    void refill() {
        long long old = bound_;
        bound_ = bound_ == 0 ? 2 : bound_ * 2;
        buf_.clear();
        idx_ = 0;
        for (const auto& sv : enumerate_short(G_.entries(), bound_))
            if (sv.norm > old && primitive(sv.v)) buf_.push_back(sv.v);
    }
    GramMatrix G_;
    long long bound_ = 0;
    std::vector<IVec> buf_;
    size_t idx_ = 0;
};

}  // namespace

RClasses::RClasses(const GramMatrix& G) : G_(G) {
    if (!G.positive_definite()) throw std::invalid_argument("RClasses: lattice must be positive definite");
    D_ = DiscriminantForm(G);
    size_t n = D_.size();
    const IMat& A = G.adjugate();
    std::vector<char> done(n, 0);
    size_t orbits = 0;
    for (size_t e = 0; e < n; ++e)
        if (D_.neg(e) >= e) ++orbits;
    cls_.assign(n, 0);
    sgn_.assign(n, 1);
    IVec zero(G.rank(), 0);
    std::vector<ShortVector> vs;
    long long bound = 1;
    for (;;) {
        reps_.clear();
        adjnorm_.clear();
        elem_.clear();
        std::fill(done.begin(), done.end(), 0);
        reps_.push_back(zero);
        adjnorm_.push_back(0);
        elem_.push_back(D_.index_of(zero));
        done[elem_[0]] = 1;
        vs = enumerate_short(A, bound);
        for (const auto& sv : vs) {
            size_t e = D_.index_of(sv.v), f = D_.neg(e);
            if (done[e] || done[f]) continue;
            done[e] = done[f] = 1;
            reps_.push_back(sv.v);
            adjnorm_.push_back(sv.norm);
            elem_.push_back(e);
        }
        if (reps_.size() == orbits) break;
        bound *= 2;
    }
    // minimality within the coset follows from the (norm, lex) scan of all vectors up to bound
    for (size_t c = 0; c < reps_.size(); ++c) {
        size_t e = elem_[c], f = D_.neg(e);
        cls_[e] = cls_[f] = c;
        sgn_[e] = 1;
        if (f != e) sgn_[f] = -1;
        self_.push_back(f == e);
    }
    neigh_.assign(reps_.size(), {});
    neigh_[0].push_back(zero);
    for (const auto& sv : vs) {
        size_t e = D_.index_of(sv.v), f = D_.neg(e);
        size_t c = cls_[e];
        if (sv.norm != adjnorm_[c]) continue;
        if (e == elem_[c]) neigh_[c].push_back(sv.v);
        if (f == elem_[c]) neigh_[c].push_back(negated(sv.v));
    }
    for (auto& v : neigh_) std::sort(v.begin(), v.end());
}

long long RClasses::adj_norm(const IVec& r) const { return adj_norm_of(G_.adjugate(), r); }

IndexSet::IndexSet(const RClasses& R, long B, int parity)
    : B_(B), parity_(((parity % 2) + 2) % 2), ncls_(R.size()) {
    long long det = R.gram().abs_det();
    pos_.assign((size_t)std::max(B, 0L) * ncls_, -1);
    for (long n = 0; n < B; ++n)
        for (size_t c = 0; c < ncls_; ++c) {
            if (parity_ && R.self_paired(c)) continue;
            if (2 * det * n - R.rep_adj_norm(c) < 0) continue;
            pos_[n * ncls_ + c] = (long)coords_.size();
            coords_.push_back({n, c});
        }
}

long IndexSet::find(long n, size_t cls) const {
    if (n < 0 || n >= B_ || cls >= ncls_) return -1;
    return pos_[n * ncls_ + cls];
}

std::optional<ReducedIndex> reduce_fe_index(long n, const IVec& r, const RClasses& R) {
    long long det = R.gram().abs_det();
    long long delta = 2 * det * n - R.adj_norm(r);
    if (delta < 0) return std::nullopt;
    auto [c, s] = R.class_of(r);
    long long num = delta + R.rep_adj_norm(c);
    if (num % (2 * det)) throw std::logic_error("reduce_fe_index: non-integral reduced exponent");
    return ReducedIndex{(long)(num / (2 * det)), c, s};
}

Q jacobi_coefficient(const RClasses& R, const IndexSet& I, const QVec& v, long n, const IVec& r) {
    auto red = reduce_fe_index(n, r, R);
    if (!red) return 0;
    if (I.parity() && R.self_paired(red->cls)) return 0;
    if (red->n >= I.precision()) throw std::out_of_range("jacobi_coefficient: beyond precision");
    long p = I.find(red->n, red->cls);
    if (p < 0) return 0;
    return I.parity() ? v[p] * red->sign : v[p];
}

std::vector<IVec> complete_restriction_set(const RClasses& R, int parity) {
    parity = ((parity % 2) + 2) % 2;
    std::vector<size_t> rel;
    for (size_t c = 0; c < R.size(); ++c)
        if (!(parity && R.self_paired(c))) rel.push_back(c);
    std::vector<IVec> S;
    if (rel.empty()) return S;
    VectorStream stream(R.gram());
    std::vector<QVec> cols;
    size_t rank = 0;
    while (rank < rel.size()) {
        IVec s = stream.next();
        std::map<long long, QVec> byval;
        for (size_t i = 0; i < rel.size(); ++i) {
            // reduced scalar coordinate of s^T r; r and -r land on the same one
            long long m2 = R.gram().norm(s), t = ((ivec_dot(s, R.rep(rel[i])) % m2) + m2) % m2;
            if (2 * t > m2) t = m2 - t;
            auto& col = byval[t];
            col.resize(rel.size());
            col[i] = qll((long long)R.mult(rel[i]));
        }
        std::vector<QVec> trial = cols;
        for (auto& [t, col] : byval) trial.push_back(col);
        size_t nr = rref(QMatrix::from_rows(trial, rel.size())).rank();
        if (nr > rank) {
            rank = nr;
            cols = std::move(trial);
            S.push_back(s);
        }
    }
    return S;
}

std::vector<IVec> strong_restriction_set(const IVec& r, const RClasses& R) {
    size_t N = R.gram().rank();
    std::vector<IVec> others;
    for (size_t c = 0; c < R.size(); ++c)
        for (const auto& w : R.neigh(c)) {
            if (w != r) others.push_back(w);
            IVec nw = negated(w);
            if (nw != r) others.push_back(nw);
        }
    VectorStream stream(R.gram());
    IVec s;
    for (;;) {
        s = stream.next();
        long long sr = ivec_dot(s, r);
        bool ok = true;
        for (const auto& w : others)
            if (ivec_dot(s, w) == sr) { ok = false; break; }
        if (ok) break;
    }
    long long h = 0;
    for (const auto& w : others)
        for (size_t i = 0; i < N; ++i) h = std::max(h, std::llabs(r[i] - w[i]));
    ++h;
    std::vector<IVec> out{s};
    for (size_t i = 0; i < N; ++i) {
        IVec v(N);
        for (size_t j = 0; j < N; ++j) v[j] = h * s[j] + (i == j);
        out.push_back(v);
    }
    return out;
}

std::vector<IVec> sublattice_test_vectors(const IMat& s) {
    size_t N = s.size();
    QMatrix inv;
    {
        // Gauss-Jordan on [s | I]
        QMatrix M(N, 2 * N);
        for (size_t i = 0; i < N; ++i) {
            for (size_t j = 0; j < N; ++j) M(i, j) = qll(s[i][j]);
            M(i, N + i) = 1;
        }
        for (size_t c = 0; c < N; ++c) {
            size_t p = c;
            while (p < N && M(p, c) == 0) ++p;
            if (p == N) throw std::invalid_argument("sublattice_test_vectors: singular matrix");
            for (size_t j = 0; j < 2 * N; ++j) std::swap(M(p, j), M(c, j));
            Q piv = M(c, c);
            for (size_t j = 0; j < 2 * N; ++j) M(c, j) /= piv;
            for (size_t i = 0; i < N; ++i) {
                if (i == c || M(i, c) == 0) continue;
                Q f = M(i, c);
                for (size_t j = 0; j < 2 * N; ++j) M(i, j) -= f * M(c, j);
            }
        }
        inv = QMatrix(N, N);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) inv(i, j) = M(i, N + j);
    }
    Z l = 1;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) l = lcm(l, Z(inv(i, j).get_den()));
    auto column = [&](size_t j) {
        IVec v(N);
        for (size_t i = 0; i < N; ++i) v[i] = Q(inv(i, j) * l).get_num().get_si();
        return v;
    };
    std::vector<IVec> out;
    for (size_t j = 0; j < N; ++j) out.push_back(column(j));
    for (size_t j = 0; j + 1 < N; ++j) {
        IVec a = column(j), b = column(j + 1);
        for (size_t i = 0; i < N; ++i) a[i] += b[i];
        out.push_back(a);
    }
    return out;
}

PullbackContext::PullbackContext(std::shared_ptr<const RClasses> R, long B) : R_(std::move(R)), B_(B) {
    const GramMatrix& G = R_->gram();
    long long det = G.abs_det();
    auto push = [&](IVec v, long long adj) {
        auto [c, s] = R_->class_of(v);
        vecs_.push_back({std::move(v), adj, c, s});
    };
    push(IVec(G.rank(), 0), 0);
    if (B_ > 1)
        for (const auto& sv : enumerate_short(G.adjugate(), 2 * det * (B_ - 1))) {
            push(sv.v, sv.norm);
            push(negated(sv.v), sv.norm);
        }
}

QMatrix PullbackContext::matrix(const IVec& s, int parity, const Cache* cache) const {
    parity = ((parity % 2) + 2) % 2;
    const RClasses& R = *R_;
    const GramMatrix& G = R.gram();
    if (s.size() != G.rank()) throw std::invalid_argument("pullback: vector has wrong length");
    if (std::all_of(s.begin(), s.end(), [](long long x) { return x == 0; }))
        throw std::invalid_argument("pullback: s must be nonzero");
    long long m = G.norm(s) / 2;
    std::string key;
    if (cache) {
        key = "pullback G=" + gram_key(G) + " s=" + ivec_key(s) + " B=" + std::to_string(B_) +
              " p=" + std::to_string(parity);
        if (auto hit = cache->get(key))
            if (auto M = parse_matrix(*hit)) return *M;
    }
    long long det = G.abs_det();
    ScalarIndex T(m, B_, parity);
    IndexSet I(R, B_, parity);
    std::vector<long long> acc(T.size() * I.size(), 0);
    for (const auto& [r, adj, c, sg] : vecs_) {
        long long t = ivec_dot(s, r);
        if (t < 0 || t > m) continue;
        if (parity && (t == 0 || t == m)) continue;
        if (parity && R.self_paired(c)) continue;
        for (long long n = ceil_div(adj, 2 * det); n < B_; ++n) {
            long long n2 = (2 * det * n - adj + R.rep_adj_norm(c)) / (2 * det);
            long col = I.find((long)n2, c), row = T.find((long)n, (long)t);
            if (col < 0 || row < 0) throw std::logic_error("pullback: index outside the reduced sets");
            acc[row * I.size() + col] += parity ? sg : 1;
        }
    }
    QMatrix P(T.size(), I.size());
    for (size_t i = 0; i < T.size(); ++i)
        for (size_t j = 0; j < I.size(); ++j)
            if (acc[i * I.size() + j]) P(i, j) = qll(acc[i * I.size() + j]);
    if (cache) cache->put(key, serialize_matrix(P));
    return P;
}

QMatrix pullback_matrix(const GramMatrix& G, const IVec& s, long B, int parity, const Cache* cache) {
    PullbackContext ctx(std::make_shared<const RClasses>(G), B);
    return ctx.matrix(s, parity, cache);
}

namespace {

// restriction vectors tried without any drop in dimension before the precision is raised
constexpr size_t kMaxStaleAdditions = 4096;

QSubspace cached_scalar_basis(long k, long m, long B, const Cache* cache) {
    std::string key = "scalar k=" + std::to_string(k) + " m=" + std::to_string(m) + " B=" + std::to_string(B);
    if (cache)
        if (auto hit = cache->get(key))
            if (auto S = parse_subspace(*hit)) return *S;
    // in-process memo in front of the disk cache
    static std::mutex mu;
    static std::map<std::string, std::shared_future<QSubspace>> memo;
    std::shared_future<QSubspace> f;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(key, std::async(std::launch::deferred, [=] { return scalar_jacobi_basis(k, m, B); })
                                       .share())
                     .first;
            owner = true;
        }
        f = it->second;
    }
    QSubspace S = f.get();
    if (owner && cache) cache->put(key, serialize_subspace(S));
    return S;
}

// vectors of V whose pullback lies in W
QSubspace restrict_by_pullback(const QSubspace& V, const QMatrix& P, const QSubspace& W) {
    if (V.dim() == 0) return V;
    std::vector<QVec> ann = W.annihilator();
    if (ann.empty()) return V;
    std::vector<QVec> img;
    for (const auto& b : V.basis()) img.push_back(P.apply(b));
    QMatrix M(ann.size(), V.dim());
    for (size_t a = 0; a < ann.size(); ++a)
        for (size_t i = 0; i < V.dim(); ++i) M(a, i) = dot(ann[a], img[i]);
    QSubspace K = kernel(M);
    std::vector<QVec> rows;
    for (const auto& x : K.basis()) {
        QVec v(V.ambient());
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0)
                for (size_t j = 0; j < v.size(); ++j) v[j] += x[i] * V.basis()[i][j];
        rows.push_back(v);
    }
    return QSubspace::span(rows, V.ambient());
}

QSubspace truncate_space(const QSubspace& V, size_t n) {
    std::vector<QVec> rows;
    for (const auto& b : V.basis()) rows.emplace_back(b.begin(), b.begin() + n);
    return QSubspace::span(rows, n);
}

}  // namespace

QVec scalar_to_lattice(const QVec& v, const ScalarIndex& S, const RClasses& R, const IndexSet& I) {
    QVec out(I.size());
    for (size_t i = 0; i < I.size(); ++i) {
        auto [n, c] = I.coords()[i];
        auto [p, sg] = S.reduce(n, R.rep(c)[0]);
        if (p >= 0) out[i] = v[p] * sg;
    }
    return out;
}

JacobiFE make_fe(const JacobiSpace& J, const QVec& v) {
    if (v.size() != J.I->size()) throw std::invalid_argument("make_fe: coefficient vector has wrong size");
    return JacobiFE{J.k, J.R, J.I, v};
}

std::vector<JacobiFE> basis_fes(const JacobiSpace& J) {
    std::vector<JacobiFE> out;
    for (const auto& v : J.space.basis()) out.push_back(make_fe(J, v));
    return out;
}

JacobiSpace jacobi_forms(long k, const GramMatrix& G, long B, const Cache* cache) {
    if (!G.positive_definite()) throw std::invalid_argument("jacobi_forms: lattice must be positive definite");
    long N = (long)G.rank();
    if (2 * k < 4 + N) throw WeightError("jacobi_forms: weight below 2 + N/2");
    if (B < 1) throw std::invalid_argument("jacobi_forms: precision must be positive");
    int parity = (int)(((k % 2) + 2) % 2);
    JacobiSpace J;
    J.k = k;
    J.B = B;
    J.R = std::make_shared<const RClasses>(G);
    auto IB = std::make_shared<const IndexSet>(*J.R, B, parity);
    J.I = IB;
    if (N == 1) {
        long m = G(0, 0) / 2;
        ScalarIndex S(m, B, parity);
        QSubspace sc = cached_scalar_basis(k, m, B, cache);
        std::vector<QVec> rows;
        for (const auto& v : sc.basis()) rows.push_back(scalar_to_lattice(v, S, *J.R, *IB));
        J.space = QSubspace::span(rows, IB->size());
        J.restriction = {IVec{1}};
        return J;
    }
    long d = dim_jacobi(k, G);
    if (d == 0) {
        J.space = QSubspace(IB->size());
        return J;
    }
    std::vector<IVec> S = complete_restriction_set(*J.R, parity);
    VectorStream stream(G);
    std::set<IVec> used(S.begin(), S.end());
    long extra = 0;
    const size_t batch = std::max(2u, std::thread::hardware_concurrency());
    for (;;) {
        long Bp = B;
        for (const auto& s : S) {
            long long n2 = G.norm(s);
            Bp = std::max({Bp, dim_mf(k + n2), dim_mf(k - 1 + n2)});
        }
        Bp += extra;
        PullbackContext ctx(J.R, Bp);
        IndexSet I(*J.R, Bp, parity);
        // scalar bases are shared by all s of equal norm
        std::mutex mu;
        std::map<long long, std::shared_future<QSubspace>> memo;
        auto scalar = [&](long long m) {
            std::shared_future<QSubspace> f;
            {
                std::lock_guard<std::mutex> lock(mu);
                auto it = memo.find(m);
                if (it == memo.end())
                    it = memo.emplace(m, std::async(std::launch::deferred, [&, m] {
                                             return cached_scalar_basis(k, m, Bp, cache);
                                         }).share())
                             .first;
                f = it->second;
            }
            return f.get();
        };
        auto parts = [&](const std::vector<IVec>& vs) {
            std::vector<std::future<std::pair<QMatrix, QSubspace>>> jobs;
            for (const auto& s : vs)
                jobs.push_back(std::async(std::launch::async, [&, s] {
                    return std::make_pair(ctx.matrix(s, parity, cache),
                                          scalar(G.norm(s) / 2));
                }));
            std::vector<std::pair<QMatrix, QSubspace>> out;
            for (auto& j : jobs) out.push_back(j.get());
            return out;
        };
        QSubspace V = QSubspace::full(I.size());
        for (const auto& [P, Js] : parts(S)) V = restrict_by_pullback(V, P, Js);
        // the true space always survives, so V shrinking below d means the precision is too low
        size_t stale = 0;
        while ((long)V.dim() > d && stale < kMaxStaleAdditions) {
            std::vector<IVec> next;
            while (next.size() < batch) {
                IVec s = stream.next();
                if (used.insert(s).second) next.push_back(s);
            }
            // each precision change restarts with S, so only keep what was applied
            auto ps = parts(next);
            for (size_t i = 0; i < next.size() && (long)V.dim() > d; ++i) {
                size_t before = V.dim();
                V = restrict_by_pullback(V, ps[i].first, ps[i].second);
                S.push_back(next[i]);
                stale = V.dim() < before ? 0 : stale + 1;
            }
        }
        if ((long)V.dim() == d) {
            J.space = truncate_space(V, IB->size());
            J.restriction = S;
            return J;
        }
        ++extra;
    }
}

}  // namespace latjac
