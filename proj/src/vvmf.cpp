#include "latjac/vvmf.hpp"

#include "latjac/classical.hpp"

#include <algorithm>
#include <functional>

namespace latjac {

namespace {

Z ceil_q(const Q& x) { return -floor_q(-x); }

long to_long(const Z& z) { return z.get_si(); }

size_t stored_count(const Q& offset, const Q& precision) {
    Z c = ceil_q(precision - offset);
    return c > 0 ? (size_t)to_long(c) : 0;
}

// coefficients of (Delta/q)^t = prod (1 - q^n)^(24t), first L terms
QVec delta_quotient_power(long t, size_t L) {
    QVec r(L);
    if (L == 0) return r;
    r[0] = 1;
    if (t == 0) return r;
    QSeries d = delta((long)L + 2);
    QVec base(L);
    for (size_t i = 0; i < L; ++i) base[i] = d.at((long)i + 1);
    for (long s = 0; s < t; ++s) {
        QVec nr(L);
        for (size_t i = 0; i < L; ++i) {
            if (r[i] == 0) continue;
            for (size_t j = 0; i + j < L; ++j) nr[i + j] += r[i] * base[j];
        }
        r = std::move(nr);
    }
    return r;
}

QVec convolve(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// a / b with b[0] = 1
QVec divide_unit(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Q s = a[i];
        for (size_t j = 1; j <= i && j < b.size(); ++j) s -= b[j] * r[i - j];
        r[i] = s;
    }
    return r;
}

VVMF unflatten(const VVMF& shape, const QVec& v) {
    VVMF f = shape;
    auto co = shape.coordinates();
    for (auto& c : f.coef) std::fill(c.begin(), c.end(), Q(0));
    for (size_t i = 0; i < co.size(); ++i) {
        auto [mu, m] = co[i];
        f.coef[mu][to_long(Z(m - f.offset[mu]))] = v[i];
    }
    return f;
}

// zero form of dual type for G with poles of order <= t
VVMF zero_shape(const Q& k, const GramMatrix& G, long t, const Q& P) {
    VVMF f;
    f.weight = k;
    f.gram = G;
    f.D = DiscriminantForm(G);
    f.dual = true;
    f.precision = P;
    for (size_t mu = 0; mu < f.D.size(); ++mu) {
        f.offset.push_back(frac_part(-f.D.q(mu)) - qll(t));
        f.coef.emplace_back(stored_count(f.offset.back(), P));
    }
    return f;
}

}  // namespace

VVMF vvmf_zero(const Q& k, const GramMatrix& G, const Q& P, long t) { return zero_shape(k, G, t, P); }

Q VVMF::at(size_t mu, const Q& m) const {
    if (m >= precision) throw std::out_of_range("VVMF: exponent beyond precision");
    Q d = m - offset[mu];
    if (d < 0 || d.get_den() != 1) return 0;
    size_t j = (size_t)to_long(d.get_num());
    return j < coef[mu].size() ? coef[mu][j] : Q(0);
}

bool VVMF::is_zero() const {
    for (const auto& c : coef)
        for (const auto& x : c)
            if (x != 0) return false;
    return true;
}

std::vector<std::pair<size_t, Q>> VVMF::coordinates() const {
    std::vector<std::pair<size_t, Q>> co;
    for (size_t mu = 0; mu < coef.size(); ++mu)
        for (size_t j = 0; j < coef[mu].size(); ++j) co.push_back({mu, offset[mu] + qll((long long)j)});
    std::stable_sort(co.begin(), co.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return co;
}

QVec VVMF::flatten() const {
    QVec v;
    for (const auto& [mu, m] : coordinates()) v.push_back(at(mu, m));
    return v;
}

VVMF VVMF::truncate(const Q& P) const {
    if (P > precision) throw std::invalid_argument("VVMF::truncate: cannot raise precision");
    VVMF f = *this;
    f.precision = P;
    for (size_t mu = 0; mu < f.coef.size(); ++mu) f.coef[mu].resize(stored_count(f.offset[mu], P));
    return f;
}

VVMF linear_combination(const std::vector<VVMF>& fs, const QVec& x) {
    if (fs.empty() || fs.size() != x.size()) throw std::invalid_argument("linear_combination: size mismatch");
    VVMF r = fs[0];
    for (auto& c : r.coef) std::fill(c.begin(), c.end(), Q(0));
    for (size_t i = 0; i < fs.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t mu = 0; mu < r.coef.size(); ++mu)
            for (size_t j = 0; j < r.coef[mu].size(); ++j) r.coef[mu][j] += x[i] * fs[i].coef[mu][j];
    }
    return r;
}

std::vector<VVMF> echelon(const std::vector<VVMF>& fs) {
    if (fs.empty()) return {};
    std::vector<QVec> rows;
    for (const auto& f : fs) rows.push_back(f.flatten());
    QSubspace S = QSubspace::span(rows, rows[0].size());
    std::vector<VVMF> out;
    for (const auto& b : S.basis()) out.push_back(unflatten(fs[0], b));
    return out;
}

VVMF theta_decomposition(const JacobiFE& J) {
    const QVec& v = J.v;
    const RClasses& R = *J.R;
    const GramMatrix& G = J.gram();
    long long det = G.abs_det();
    int parity = J.I->parity();
    std::vector<Q> a(R.size());
    Q amax = 0;
    for (size_t c = 0; c < R.size(); ++c) {
        a[c] = qfrac(R.rep_adj_norm(c), 2 * det);
        amax = std::max(amax, a[c]);
    }
    VVMF f;
    f.weight = qll(J.k) - qfrac((long long)G.rank(), 2);
    f.gram = G;
    f.D = R.disc();
    f.dual = true;
    f.precision = qll(J.precision()) - amax;
    for (size_t e = 0; e < f.D.size(); ++e) {
        auto [c, sg] = R.class_of_element(e);
        Z n0 = ceil_q(a[c]);
        f.offset.push_back(Q(n0) - a[c]);
        QVec col(stored_count(f.offset.back(), f.precision));
        for (size_t j = 0; j < col.size(); ++j) {
            long n = to_long(n0) + (long)j;
            long p = J.I->find(n, c);
            if (p < 0) continue;
            col[j] = (parity && sg < 0) ? Q(-v[p]) : v[p];
        }
        f.coef.push_back(std::move(col));
    }
    return f;
}

VVMF theta_decomposition(const JacobiSpace& J, const QVec& v) { return theta_decomposition(make_fe(J, v)); }

JacobiFE theta_inverse(const VVMF& f, long k) {
    if (!f.dual) throw std::invalid_argument("theta_inverse: dual Weil type expected");
    const GramMatrix& G = f.gram;
    if (!G.positive_definite()) throw std::invalid_argument("theta_inverse: lattice must be positive definite");
    if (f.weight != qll(k) - qfrac((long long)G.rank(), 2))
        throw std::invalid_argument("theta_inverse: weight does not match k - N/2");
    auto R = std::make_shared<const RClasses>(G);
    long long det = G.abs_det();
    std::vector<Q> a(R->size());
    for (size_t c = 0; c < R->size(); ++c) a[c] = qfrac(R->rep_adj_norm(c), 2 * det);
    // n - a_c < precision for every class
    long B = -1;
    for (size_t c = 0; c < R->size(); ++c) {
        long b = to_long(ceil_q(f.precision + a[c]));
        if (B < 0 || b < B) B = b;
    }
    if (B < 0) B = 0;
    int parity = (int)(((k % 2) + 2) % 2);
    auto I = std::make_shared<const IndexSet>(*R, B, parity);
    QVec v(I->size());
    for (size_t i = 0; i < I->size(); ++i) {
        auto [n, c] = I->coords()[i];
        v[i] = f.at(R->element(c), qll(n) - a[c]);
    }
    return JacobiFE{k, R, I, v};
}

std::vector<std::pair<Q, IVec>> theta_series(const GramMatrix& G, const IVec& l, long B) {
    if (!G.positive_definite()) throw std::invalid_argument("theta_series: lattice must be positive definite");
    DiscriminantForm D(G);
    size_t target = D.index_of(l);
    long long det = G.abs_det();
    std::vector<std::pair<Q, IVec>> out;
    IVec zero(G.rank(), 0);
    if (B > 0 && D.index_of(zero) == target) out.push_back({0, zero});
    if (B <= 0) return out;
    for (const auto& sv : enumerate_short(G.adjugate(), 2 * det * B - 1)) {
        Q m = qfrac(sv.norm, 2 * det);
        IVec neg = sv.v;
        for (auto& x : neg) x = -x;
        if (D.index_of(sv.v) == target) out.push_back({m, sv.v});
        if (D.index_of(neg) == target) out.push_back({m, neg});
    }
    return out;
}

std::vector<size_t> discriminant_isomorphism(const DiscriminantForm& from, const DiscriminantForm& to) {
    if (from.size() != to.size() || from.group().divisors() != to.group().divisors())
        throw std::invalid_argument("discriminant_isomorphism: groups are not isomorphic");
    size_t n = to.size();
    const auto& divs = from.group().divisors();
    size_t r = divs.size();
    IVec zero(to.gram().rank(), 0);
    size_t zt = to.index_of(zero);
    std::vector<long long> order(n);
    for (size_t e = 0; e < n; ++e) {
        size_t x = e;
        long long o = 1;
        while (x != zt) {
            x = to.add(x, e);
            ++o;
        }
        order[e] = o;
    }
    std::vector<size_t> gens;
    for (size_t j = 0; j < r; ++j) {
        std::vector<long long> c(r, 0);
        c[j] = 1;
        gens.push_back(from.group().index_of_coords(c));
    }
    std::vector<size_t> choice(r);
    std::vector<size_t> result;
    std::function<bool(size_t)> search = [&](size_t j) -> bool {
        if (j == r) {
            std::vector<size_t> map(n);
            std::vector<char> hit(n, 0);
            for (size_t e = 0; e < n; ++e) {
                const auto& c = from.group().elements()[e];
                size_t img = zt;
                for (size_t i = 0; i < r; ++i)
                    for (long long t = 0; t < c[i]; ++t) img = to.add(img, choice[i]);
                if (hit[img] || to.q(img) != from.q(e)) return false;
                hit[img] = 1;
                map[e] = img;
            }
            result = map;
            return true;
        }
        for (size_t t = 0; t < n; ++t) {
            if (order[t] != divs[j] || to.q(t) != from.q(gens[j])) continue;
            choice[j] = t;
            if (search(j + 1)) return true;
        }
        return false;
    };
    if (!search(0)) throw std::invalid_argument("discriminant_isomorphism: no q-preserving isomorphism");
    return result;
}

VVMF relabel(const VVMF& f, const GramMatrix& target, const std::vector<size_t>& map) {
    VVMF g = f;
    g.gram = target;
    g.D = DiscriminantForm(target);
    for (size_t e = 0; e < map.size(); ++e) {
        g.offset[map[e]] = f.offset[e];
        g.coef[map[e]] = f.coef[e];
    }
    return g;
}

VVMFBasis vvmf_basis(const Q& k, const GramMatrix& G, long B, const Cache* cache) {
    if (B < 1) throw std::invalid_argument("vvmf_basis: precision must be positive");
    VVMFBasis out;
    out.jacobi_gram = G.positive_definite() ? G : stabilize_positive_definite(G);
    DiscriminantForm Dj(out.jacobi_gram), D(G);
    out.relabel = discriminant_isomorphism(Dj, D);
    Q kj = k + qfrac((long long)out.jacobi_gram.rank(), 2);
    if (kj.get_den() != 1) throw std::invalid_argument("vvmf_basis: weight does not match the lattice rank parity");
    out.jacobi_weight = to_long(kj.get_num());
    RClasses R(out.jacobi_gram);
    long long det = out.jacobi_gram.abs_det();
    long long amax = 0;
    for (size_t c = 0; c < R.size(); ++c) amax = std::max(amax, R.rep_adj_norm(c));
    long Bj = B + (long)((amax + 2 * det - 1) / (2 * det));
    JacobiSpace J = jacobi_forms(out.jacobi_weight, out.jacobi_gram, Bj, cache);
    std::vector<VVMF> fs;
    for (const auto& v : J.space.basis())
        fs.push_back(relabel(theta_decomposition(J, v).truncate(qll(B)), G, out.relabel));
    out.forms = echelon(fs);
    return out;
}

VVMF multiply_delta_power(const VVMF& f, long t) {
    if (t < 0) throw std::invalid_argument("multiply_delta_power: negative power");
    VVMF g = f;
    g.precision = f.precision + qll(t);
    for (size_t mu = 0; mu < f.coef.size(); ++mu) {
        g.offset[mu] = f.offset[mu] + qll(t);
        g.coef[mu] = convolve(f.coef[mu], delta_quotient_power(t, f.coef[mu].size()));
    }
    g.weight = f.weight + qll(12 * t);
    return g;
}

std::vector<VVMF> vvmf_weakly_holomorphic(const Q& k, const GramMatrix& G, long t, long B, const Cache* cache) {
    if (t < 0) throw std::invalid_argument("vvmf_weakly_holomorphic: negative pole order");
    VVMFBasis H = vvmf_basis(k + qll(12 * t), G, B + t, cache);
    std::vector<VVMF> out;
    for (const auto& f : H.forms) {
        VVMF g = f;
        g.weight = k;
        g.precision = f.precision - qll(t);
        for (size_t mu = 0; mu < f.coef.size(); ++mu) {
            g.offset[mu] = f.offset[mu] - qll(t);
            g.coef[mu] = divide_unit(f.coef[mu], delta_quotient_power(t, f.coef[mu].size()));
        }
        out.push_back(std::move(g));
    }
    return echelon(out);
}

PrincipalPartSolution vvmf_with_principal_part(const Q& k, const GramMatrix& G, const PrincipalPart& pp, long B,
                                               const Cache* cache) {
    DiscriminantForm D(G);
    long t = 0;
    for (const auto& [key, val] : pp) {
        const auto& [mu, m] = key;
        if (mu >= D.size()) throw std::invalid_argument("principal part: unknown component");
        if (m >= 0) throw std::invalid_argument("principal part: exponents must be negative");
        t = std::max(t, to_long(ceil_q(-m)));
    }
    while (k + qll(12 * t) < 2) ++t;
    std::vector<VVMF> fs = vvmf_weakly_holomorphic(k, G, t, B, cache);
    VVMF shape = fs.empty() ? zero_shape(k, G, t, qll(B)) : fs[0];
    for (const auto& [key, val] : pp) {
        const auto& [mu, m] = key;
        Q d = m - shape.offset[mu];
        if (val != 0 && d.get_den() != 1) throw NoSuchForm("no such form: exponent outside the support of the component");
    }
    std::vector<std::pair<size_t, Q>> eqs;
    for (const auto& co : shape.coordinates())
        if (co.second < 0) eqs.push_back(co);
    size_t d = fs.size();
    QMatrix A(eqs.size(), d + 1);
    for (size_t r = 0; r < eqs.size(); ++r) {
        for (size_t i = 0; i < d; ++i) A(r, i) = fs[i].at(eqs[r].first, eqs[r].second);
        auto it = pp.find(eqs[r]);
        if (it != pp.end()) A(r, d) = it->second;
    }
    RrefResult rr = rref(A);
    QVec x(d);
    for (size_t i = 0; i < rr.space.dim(); ++i) {
        size_t p = rr.space.pivots()[i];
        if (p == d) throw NoSuchForm("no such form: principal part is not attained");
        x[p] = rr.space.basis()[i][d];
    }
    PrincipalPartSolution sol;
    sol.homogeneous_dim = d - rr.space.dim();
    if (d == 0) {
        sol.form = shape;
    } else {
        sol.form = linear_combination(fs, x);
    }
    return sol;
}

}  // namespace latjac
