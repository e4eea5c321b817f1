#include "latjac/hecke.hpp"

#include "latjac/cache.hpp"
#include "latjac/classical.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

namespace latjac {

namespace {

Z ceil_q(const Q& x) { return -floor_q(-x); }

size_t stored_count(const Q& offset, const Q& precision) {
    Z c = ceil_q(precision - offset);
    return c > 0 ? (size_t)c.get_si() : 0;
}

long long to_ll(const Z& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer entry out of range");
    return z.get_si();
}

IMat minor_of(const IMat& a, size_t row, size_t col) {
    IMat m;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i == row) continue;
        IVec r;
        for (size_t j = 0; j < a.size(); ++j)
            if (j != col) r.push_back(a[i][j]);
        m.push_back(r);
    }
    return m;
}

// adj(a) with a adj(a) = det(a) I
IMat adjugate_of(const IMat& a) {
    size_t n = a.size();
    IMat r(n, IVec(n));
    if (n == 1) {
        r[0][0] = 1;
        return r;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Z d = det_exact(minor_of(a, j, i));
            r[i][j] = to_ll((i + j) % 2 ? Z(-d) : d);
        }
    return r;
}

// x with a x = v, if integral
std::optional<IVec> solve_integral(const IMat& adj, long long det, const IVec& v) {
    IVec x = imat_apply(adj, v);
    for (auto& c : x) {
        if (c % det) return std::nullopt;
        c /= det;
    }
    return x;
}

IVec zero_vec(size_t n) { return IVec(n, 0); }

// lower triangular basis of the lattice spanned by full rank integer columns
IMat lattice_basis(std::vector<IVec> cols, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        for (;;) {
            size_t best = cols.size();
            for (size_t j = i; j < cols.size(); ++j)
                if (cols[j][i] != 0 && (best == cols.size() || std::llabs(cols[j][i]) < std::llabs(cols[best][i])))
                    best = j;
            if (best == cols.size()) throw std::logic_error("lattice_basis: columns do not have full rank");
            std::swap(cols[i], cols[best]);
            bool done = true;
            for (size_t j = i + 1; j < cols.size(); ++j) {
                long long f = cols[j][i] / cols[i][i];
                if (f)
                    for (size_t t = 0; t < n; ++t) cols[j][t] -= f * cols[i][t];
                if (cols[j][i]) done = false;
            }
            if (done) break;
        }
    }
    IMat B(n, IVec(n));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) B[i][j] = cols[j][i];
    return B;
}

Q factorial(long n) {
    Z f;
    mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
    return Q(f);
}

Q qpow(const Q& x, long e) {
    Q r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

IsotropicSubgroup embedding_subgroup(const GramMatrix& quotient, const IMat& s) {
    size_t N = quotient.rank();
    if (s.size() != N) throw std::invalid_argument("embedding_subgroup: matrix size does not match the lattice");
    long long det = to_ll(det_exact(s));
    if (det == 0) throw std::invalid_argument("embedding_subgroup: matrix is singular");
    IsotropicSubgroup H;
    H.quotient = quotient;
    H.s = s;
    H.ambient = GramMatrix(congruent(quotient.entries(), s));
    H.D = DiscriminantForm(H.ambient);
    DiscriminantForm DQ(quotient);
    size_t zero = DQ.index_of(zero_vec(N));
    IMat adj = adjugate_of(imat_transpose(s));
    H.to_quotient.assign(H.D.size(), -1);
    for (size_t e = 0; e < H.D.size(); ++e) {
        auto x = solve_integral(adj, det, H.D.vector_of(e));
        if (!x) continue;
        size_t t = DQ.index_of(*x);
        if (DQ.q(t) != H.D.q(e)) throw std::logic_error("embedding_subgroup: quotient map does not preserve q");
        H.to_quotient[e] = (long)t;
        H.perp.push_back(e);
        if (t == zero) H.H.push_back(e);
    }
    if (H.H.size() * H.perp.size() != H.D.size())
        throw std::logic_error("embedding_subgroup: |H| |H^perp| != |D'|");
    return H;
}

std::vector<std::vector<size_t>> isotropic_subgroups(const DiscriminantForm& D) {
    size_t n = D.size();
    size_t zero = D.index_of(zero_vec(D.gram().rank()));
    std::vector<size_t> iso;
    for (size_t e = 0; e < n; ++e)
        if (e != zero && D.q(e) == 0) iso.push_back(e);
    using Mask = std::vector<char>;
    Mask start(n, 0);
    start[zero] = 1;
    std::set<Mask> seen{start};
    std::vector<Mask> todo{start}, found{start};
    while (!todo.empty()) {
        Mask S = todo.back();
        todo.pop_back();
        std::vector<size_t> elems;
        for (size_t e = 0; e < n; ++e)
            if (S[e]) elems.push_back(e);
        for (size_t g : iso) {
            if (S[g]) continue;
            Mask T = S;
            bool ok = true;
            for (size_t t = g; ok && !S[t]; t = D.add(t, g))
                for (size_t x : elems) {
                    size_t y = D.add(x, t);
                    if (D.q(y) != 0) ok = false;
                    T[y] = 1;
                }
            if (ok && seen.insert(T).second) {
                todo.push_back(T);
                found.push_back(T);
            }
        }
    }
    std::vector<std::vector<size_t>> out;
    for (const auto& m : found) {
        std::vector<size_t> v;
        for (size_t e = 0; e < n; ++e)
            if (m[e]) v.push_back(e);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Overlattice overlattice(const GramMatrix& G, const std::vector<size_t>& H) {
    size_t N = G.rank();
    DiscriminantForm D(G);
    long long det = to_ll(G.det());
    const IMat& adj = G.adjugate();
    // the overlattice is (1/det) times the span of det e_i and adj r_h
    std::vector<IVec> cols;
    for (size_t i = 0; i < N; ++i) {
        IVec e = zero_vec(N);
        e[i] = det;
        cols.push_back(e);
    }
    for (size_t h : H) {
        if (D.q(h) != 0) throw std::invalid_argument("overlattice: subgroup is not isotropic");
        cols.push_back(imat_apply(adj, D.vector_of(h)));
    }
    IMat M = lattice_basis(cols, N);
    IMat GM = congruent(G.entries(), M);
    for (auto& row : GM)
        for (auto& x : row) {
            if (x % (det * det)) throw std::logic_error("overlattice: Gram matrix is not integral");
            x /= det * det;
        }
    long long dm = to_ll(det_exact(M));
    IMat s = adjugate_of(M);
    for (auto& row : s)
        for (auto& x : row) {
            Z v = Z(static_cast<long>(x)) * Z(static_cast<long>(det));
            if (v % Z(static_cast<long>(dm)) != 0) throw std::logic_error("overlattice: embedding is not integral");
            x = to_ll(Z(v / Z(static_cast<long>(dm))));
        }
    Overlattice o{GramMatrix(GM), s, H.size()};
    if (congruent(o.gram.entries(), s) != G.entries()) throw std::logic_error("overlattice: G != G'[s]");
    return o;
}

std::vector<Overlattice> overlattices(const GramMatrix& G) {
    std::vector<Overlattice> out;
    for (const auto& H : isotropic_subgroups(DiscriminantForm(G)))
        if (H.size() > 1) out.push_back(overlattice(G, H));
    return out;
}

IMat canonical_gram(const GramMatrix& G) {
    if (!G.positive_definite()) throw std::invalid_argument("canonical_gram: lattice must be positive definite");
    size_t N = G.rank();
    GramMatrix G0 = lll_reduce(G).first;
    if (N > 4) return G0.entries();
    long long bound = 0;
    for (size_t i = 0; i < N; ++i) bound = std::max(bound, G0(i, i));
    std::vector<ShortVector> cand;
    for (const auto& sv : enumerate_short(G0.entries(), bound)) {
        cand.push_back(sv);
        IVec m = sv.v;
        for (auto& x : m) x = -x;
        cand.push_back({m, sv.norm});
    }
    IMat best;
    bool have = false;
    std::vector<IVec> chosen;
    auto key = [&](const IMat& g) {
        IVec k;
        for (size_t i = 0; i < N; ++i) k.push_back(g[i][i]);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = i + 1; j < N; ++j) k.push_back(g[i][j]);
        return k;
    };
    IVec best_key;
    std::function<void(size_t)> dfs = [&](size_t level) {
        if (level == N) {
            IMat B(N, IVec(N));
            for (size_t j = 0; j < N; ++j)
                for (size_t i = 0; i < N; ++i) B[i][j] = chosen[j][i];
            Z d = det_exact(B);
            if (d != 1 && d != -1) return;
            IMat g = congruent(G0.entries(), B);
            IVec k = key(g);
            if (!have || k < best_key) {
                best = g;
                best_key = k;
                have = true;
            }
            return;
        }
        for (const auto& c : cand) {
            if (have) {
                // compare diagonal prefix with the best one
                bool worse = false, better = false;
                for (size_t i = 0; i < level && !worse && !better; ++i) {
                    long long a = G0.norm(chosen[i]);
                    if (a > best_key[i]) worse = true;
                    if (a < best_key[i]) better = true;
                }
                if (!better && !worse && c.norm > best_key[level]) break;
                if (worse) return;
            }
            chosen.push_back(c.v);
            dfs(level + 1);
            chosen.pop_back();
        }
    };
    dfs(0);
    if (!have) return G0.entries();
    return best;
}

bool isometric(const GramMatrix& a, const GramMatrix& b) {
    if (a.rank() != b.rank() || a.det() != b.det()) return false;
    return canonical_gram(a) == canonical_gram(b);
}

JacobiFE U_s(const JacobiFE& phi, const IMat& s, std::shared_ptr<const RClasses> target) {
    const GramMatrix& G = phi.gram();
    size_t N = G.rank();
    if (s.size() != N) throw std::invalid_argument("U_s: matrix size does not match the lattice");
    long long det = to_ll(det_exact(s));
    if (det == 0) throw std::invalid_argument("U_s: matrix is singular");
    GramMatrix Gs(congruent(G.entries(), s));
    if (!target) target = std::make_shared<const RClasses>(Gs);
    if (!(target->gram() == Gs)) throw std::invalid_argument("U_s: target classes belong to a different lattice");
    auto I = std::make_shared<const IndexSet>(*target, phi.precision(), phi.I->parity());
    IMat adj = adjugate_of(imat_transpose(s));
    QVec v(I->size());
    for (size_t i = 0; i < I->size(); ++i) {
        auto [n, c] = I->coords()[i];
        auto x = solve_integral(adj, det, target->rep(c));
        if (x) v[i] = phi.at(n, *x);
    }
    return JacobiFE{phi.k, target, I, v};
}

VVMF uparrow(const VVMF& f, const IsotropicSubgroup& H) {
    if (!(f.gram == H.quotient)) throw std::invalid_argument("uparrow: form is not labelled by H^perp/H");
    VVMF g;
    g.weight = f.weight;
    g.gram = H.ambient;
    g.D = H.D;
    g.dual = f.dual;
    g.precision = f.precision;
    for (size_t e = 0; e < H.D.size(); ++e) {
        long t = H.to_quotient[e];
        if (t >= 0) {
            g.offset.push_back(f.offset[t]);
            g.coef.push_back(f.coef[t]);
        } else {
            Q off = frac_part(f.dual ? Q(-H.D.q(e)) : H.D.q(e));
            g.offset.push_back(off);
            g.coef.emplace_back(stored_count(off, g.precision));
        }
    }
    return g;
}

QSeries res(const QSeries& f, long d, const Q& n0) {
    if (d < 1) throw std::invalid_argument("res: d must be positive");
    QSeries g(f.nmin(), f.precision());
    for (long n = f.nmin(); n < f.precision(); ++n) {
        Q t = (qll(n) - n0) / qll(d);
        if (t.get_den() == 1) g[n] = f.at(n);
    }
    return g;
}

VVMF res(const VVMF& f, size_t mu, long d, const Q& n0) {
    if (d < 1) throw std::invalid_argument("res: d must be positive");
    VVMF g = f;
    for (size_t j = 0; j < g.coef[mu].size(); ++j) {
        Q t = (g.offset[mu] + qll((long long)j) - n0) / qll(d);
        if (t.get_den() != 1) g.coef[mu][j] = 0;
    }
    return g;
}

namespace {

// the reindexing behind sc_l; it agrees with the coefficient formula of V_l for every l
VVMF sc_reindex(const VVMF& f, long l, long k) {
    const GramMatrix& G = f.gram;
    VVMF g;
    g.weight = f.weight;
    g.gram = G.scaled(l);
    g.D = DiscriminantForm(g.gram);
    g.dual = f.dual;
    g.precision = f.precision / qll(l);
    std::vector<long> divs;
    for (long d = 1; d <= l; ++d)
        if (l % d == 0) divs.push_back(d);
    // res-filtered components f_mu | res(d, .) for every d and mu
    for (size_t e = 0; e < g.D.size(); ++e) {
        IVec r = g.D.vector_of(e);
        Q off = frac_part(f.dual ? Q(-g.D.q(e)) : g.D.q(e));
        g.offset.push_back(off);
        QVec col(stored_count(off, g.precision));
        for (long d : divs) {
            long a = l / d;
            bool div = true;
            for (auto x : r) div = div && (x % a == 0);
            if (!div) continue;
            IVec r0 = r;
            for (auto& x : r0) x /= a;
            size_t mu = f.D.index_of(r0);
            // e = (l/d) mu + mu' with mu' in the kernel of multiplication by d
            Q n0 = f.dual ? Q(-G.dual_norm(r0) / 2) : Q(G.dual_norm(r0) / 2);
            VVMF fr = res(f, mu, d, n0);
            Q w = qpow(qll(a), k - 1);
            for (size_t j = 0; j < col.size(); ++j) {
                Q m = off + qll((long long)j);
                col[j] += w * fr.at(mu, qll(d) * qll(d) * m / qll(l));
            }
        }
        g.coef.push_back(std::move(col));
    }
    return g;
}

}  // namespace

VVMF sc_l(const VVMF& f, long l, long k) {
    if (l < 1) throw std::invalid_argument("sc_l: l must be positive");
    if (std::gcd((long long)l, f.gram.abs_det()) != 1) throw std::invalid_argument("sc_l: l is not coprime to det");
    return sc_reindex(f, l, k);
}

JacobiFE V_l(const JacobiFE& phi, long l) {
    if (l < 1) throw std::invalid_argument("V_l: l must be positive");
    if (l == 1) return phi;
    return theta_inverse(sc_reindex(theta_decomposition(phi), l, phi.k), phi.k);
}

QSeries dev_coefficient(const JacobiFE& phi, long nu, const IVec& s) {
    if (nu < 0) throw std::invalid_argument("dev_coefficient: nu must be non-negative");
    long B = phi.precision();
    QSeries out(0, B);
    long k = phi.k;
    if (((k - nu) % 2 + 2) % 2 != 0) return out;
    const GramMatrix& G = phi.gram();
    long long m2 = G.norm(s);
    if (m2 <= 0) throw std::invalid_argument("dev_coefficient: restriction vector must have positive norm");
    long m = (long)(m2 / 2);
    int parity = phi.I->parity();
    PullbackContext ctx(phi.R, B);
    QVec w = ctx.matrix(s, parity).apply(phi.v);
    ScalarIndex S(m, B, parity);
    long h = nu / 2;  // nu = 2h or 2h + 1
    long odd = nu % 2;
    std::vector<Q> wt(h + 1);
    for (long mu = 0; mu <= h; ++mu) {
        Q c = factorial(nu) * factorial(k + 2 * h - mu - 2 + odd) /
              (factorial(mu) * factorial(nu - 2 * mu) * factorial(k + h - 2 + odd));
        wt[mu] = (mu % 2 ? Q(-c) : c) * qpow(qll(m), mu);
    }
    for (long n = 0; n < B; ++n) {
        Q sum = 0;
        for (long r = -2 * m * B; r <= 2 * m * B; ++r) {
            if ((long long)r * r > 4LL * n * m) continue;
            auto [p, sg] = S.reduce(n, r);
            if (p < 0) continue;
            Q c = w[p] * sg;
            if (c == 0) continue;
            Q poly = 0;
            for (long mu = 0; mu <= h; ++mu) poly += wt[mu] * qpow(qll(n), mu) * qpow(qll(r), nu - 2 * mu);
            sum += c * poly;
        }
        out[n] = sum;
    }
    return out;
}

QSubspace oldspace_U(long k, const GramMatrix& G, long B, const Cache* cache) {
    auto R = std::make_shared<const RClasses>(G);
    IndexSet I(*R, B, (int)(((k % 2) + 2) % 2));
    std::vector<QVec> rows;
    for (const auto& o : overlattices(G)) {
        JacobiSpace J = jacobi_forms(k, o.gram, B, cache);
        for (const auto& fe : basis_fes(J)) rows.push_back(U_s(fe, o.s, R).v);
    }
    return QSubspace::span(rows, I.size());
}

long duv_new_dim(long k, const GramMatrix& G) {
    std::map<IMat, long> memo;
    std::mutex mu;
    std::function<long(const GramMatrix&)> rec = [&](const GramMatrix& L) -> long {
        IMat key = canonical_gram(L);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        long d = dim_jacobi(k, L);
        for (const auto& H : isotropic_subgroups(DiscriminantForm(L))) {
            GramMatrix Lp = H.size() > 1 ? overlattice(L, H).gram : L;
            long long g = 0;
            size_t N = Lp.rank();
            for (size_t i = 0; i < N; ++i)
                for (size_t j = i; j < N; ++j) g = std::gcd(g, i == j ? Lp(i, i) / 2 : Lp(i, j));
            for (long long l = 1; l <= g; ++l) {
                if (g % l) continue;
                if (l == 1 && H.size() == 1) continue;
                IMat sc = Lp.entries();
                for (auto& row : sc)
                    for (auto& x : row) x /= l;
                d -= rec(GramMatrix(sc));
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        memo.emplace(key, d);
        return d;
    };
    if (!G.positive_definite()) throw std::invalid_argument("duv_new_dim: lattice must be positive definite");
    return rec(G);
}

NewformSpace jacobi_newforms(long k, const GramMatrix& G, long B, const Cache* cache) {
    NewformSpace out;
    out.full = jacobi_forms(k, G, B, cache);
    out.old = oldspace_U(k, G, B, cache);
    for (const auto& v : out.old.basis())
        if (!out.full.space.contains(v)) throw std::logic_error("jacobi_newforms: oldform outside the full space");
    out.fresh = complement_rows(out.old, out.full.space);
    if (out.old.dim() + out.fresh.size() != out.full.space.dim())
        throw std::logic_error("jacobi_newforms: complement has the wrong dimension");
    return out;
}

}  // namespace latjac
