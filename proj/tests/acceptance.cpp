// Acceptance checks, one PASS/FAIL line each. Exit status is nonzero if any line fails.

#include "latjac/divisors.hpp"
#include "latjac/hecke.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace latjac;

namespace {

int failures = 0;

void line(const std::string& id, bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

// runs body; an exception is a failure of that criterion
void run(const std::string& id, const std::string& what, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << s << "s";
    line(id, ok, what, detail.empty() ? os.str() : detail + "; " + os.str());
}

QVec ints(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(qll(x));
    return v;
}

bool in_span(const std::vector<VVMF>& basis, const VVMF& f) {
    if (basis.empty()) return f.is_zero();
    std::vector<QVec> rows;
    for (const auto& b : basis) rows.push_back(b.flatten());
    return QSubspace::span(rows, f.flatten().size()).contains(f.flatten());
}

size_t span_dim(const std::vector<VVMF>& fs) {
    std::vector<QVec> rows;
    for (const auto& f : fs) rows.push_back(f.flatten());
    return rows.empty() ? 0 : QSubspace::span(rows, rows[0].size()).dim();
}

// every (G, k) run in this binary, to be compared with the dimension formula
std::vector<std::pair<std::string, bool>> runs;

JacobiSpace tracked(long k, const GramMatrix& G, long B) {
    JacobiSpace J = jacobi_forms(k, G, B);
    long d = dim_jacobi(k, G);
    std::ostringstream os;
    os << "k=" << k << " G=[";
    for (const auto& r : G.entries()) {
        os << "[";
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "]";
    }
    os << "] size=" << J.space.dim() << " dim=" << d;
    runs.push_back({os.str(), (long)J.space.dim() == d});
    return J;
}

GramMatrix gram(IMat g) { return GramMatrix(std::move(g)); }

// h(tau) = sum_l theta_l h_l compared with every coefficient c(n, r), n below the vvmf precision
bool theta_roundtrip(const JacobiSpace& J, std::string& detail) {
    const GramMatrix& G = J.gram();
    DiscriminantForm D(G);
    size_t checked = 0;
    for (const auto& phi : basis_fes(J)) {
        VVMF h = theta_decomposition(phi);
        long P = Z(floor_q(h.precision)).get_si();
        if (h.precision.get_den() == 1) --P;  // exponents n <= P
        std::map<std::pair<long, IVec>, Q> prod;
        for (size_t l = 0; l < D.size(); ++l)
            for (const auto& [e, r] : theta_series(G, D.vector_of(l), P + 1))
                for (size_t j = 0; j < h.coef[l].size(); ++j) {
                    Q ex = e + h.offset[l] + qll((long long)j);
                    if (ex.get_den() != 1) return detail = "non-integral exponent", false;
                    long n = ex.get_num().get_si();
                    if (n <= P) prod[{n, r}] += h.coef[l][j];
                }
        // the product against c(n, r), and every reduced coefficient against the product
        for (const auto& [key, val] : prod)
            if (phi.at(key.first, key.second) != val) return detail = "mismatch in product", false;
        for (size_t p = 0; p < phi.I->size(); ++p) {
            auto [n, c] = phi.I->coords()[p];
            if (n > P) continue;
            auto it = prod.find({n, phi.R->rep(c)});
            Q got = it == prod.end() ? Q(0) : it->second;
            if (got != phi.v[p]) return detail = "coefficient not reproduced", false;
            ++checked;
        }
        JacobiFE back = theta_inverse(h, phi.k);
        for (size_t p = 0; p < back.I->size(); ++p) {
            auto [n, c] = back.I->coords()[p];
            if (back.v[p] != phi.at(n, back.R->rep(c))) return detail = "theta_inverse mismatch", false;
        }
    }
    detail = std::to_string(checked) + " coefficients";
    return checked > 0;
}

}  // namespace

int main() {
    GramMatrix A2p = gram({{2, 1}, {1, 2}});

    // 1. worked example
    {
        JacobiSpace J;
        std::string err;
        try {
            J = tracked(9, A2p, 10);
        } catch (const std::exception& e) {
            err = e.what();
        }
        line("1a", err.empty() && J.space.dim() == 2, "J_{9,[[2,1],[1,2]]} at B=10 has basis size 2",
             err.empty() ? "computed size " + std::to_string(J.space.dim()) + ", dim formula " +
                               std::to_string(dim_jacobi(9, A2p))
                         : err);
        run("1b", "(e_(0,2) - e_(0,1)) (q^(2/3) - 16 q^(5/3) + ...) lies in the theta decomposed span",
            [&](std::string& d) {
                if (!err.empty()) return false;
                std::vector<VVMF> hs;
                for (const auto& v : J.space.basis()) hs.push_back(theta_decomposition(J, v));
                if (hs.empty()) return false;
                VVMF f = hs[0];
                for (auto& c : f.coef) std::fill(c.begin(), c.end(), Q(0));
                QVec reference = ints({1, -16, 104, -320, 260, 1248, -3712, 1664, 6890});
                size_t e2 = f.D.index_of({0, 2}), e1 = f.D.index_of({0, 1});
                if (f.offset[e1] != qfrac(2, 3) || f.coef[e1].size() != reference.size()) return false;
                for (size_t j = 0; j < reference.size(); ++j) {
                    f.coef[e2][j] = reference[j];
                    f.coef[e1][j] = -reference[j];
                }
                d = "weight " + to_string(f.weight) + ", 9 terms per component";
                return in_span(hs, f);
            });
    }

    // 2. table for (-2)
    bool c2 = true, c3 = true;
    {
        GramMatrix G = gram({{-2}});
        DiscriminantForm D(G);
        size_t m0 = D.index_of({0}), m1 = D.index_of({1});
        struct Row {
            Q k;
            std::vector<std::pair<QVec, QVec>> forms;
        };
        std::vector<Row> rows = {
            {qfrac(5, 2), {{ints({1, -70, -120, -240, -550, -528}), ints({-10, -48, -250, -240, -480, -480})}}},
            {qfrac(9, 2), {{ints({1, 242, 2640, 11040, 30962, 65760}), ints({2, 480, 4322, 13920, 39360, 73920})}}},
            {qfrac(13, 2),
             {{ints({28, 0, -433680, -4736160, -21626280, -74216064}),
               ints({-195, -58344, -933595, -6583560, -30703920, -96379920})},
              {ints({0, 56, 240, -1440, 704, -960}), ints({-1, -120, -9, 1320, 240, -5040})}}},
        };
        for (const auto& r : rows)
            run("2", "M_" + to_string(r.k) + " of dual type (-2): dimension " + std::to_string(r.forms.size()) +
                         " and reference rows span it",
                [&](std::string& d) {
                    auto B = vvmf_basis(r.k, G, 6);
                    d = "dim " + std::to_string(B.forms.size()) + ", jacobi rank " +
                        std::to_string(B.jacobi_gram.rank());
                    if (B.forms.size() != r.forms.size()) return c2 = false;
                    std::vector<VVMF> reference;
                    for (const auto& [a0, a1] : r.forms) {
                        VVMF f = B.forms[0];
                        f.coef[m0] = a0;
                        f.coef[m1] = a1;
                        if (!in_span(B.forms, f)) return c2 = false;
                        reference.push_back(f);
                    }
                    return c2 = c2 && span_dim(reference) == B.forms.size();
                });
    }

    // 3. table for (-10)
    run("3", "M_5/2 of dual type (-10): dimension 2 and both reference forms in the span", [&](std::string& d) {
        GramMatrix G = gram({{-10}});
        DiscriminantForm D(G);
        std::vector<std::vector<QVec>> table = {
            {ints({5, 0, -120, -960, -840, -2270, -960, -2160}), ints({-7, 60, -420, -660, -1147, -1080, -2647, -2220}),
             ints({17, -240, -120, -763, -1320, -1560, -1440, -2563}),
             ints({-43, -240, -643, -300, -1200, -1500, -2460, -1260}),
             ints({-187, -367, -360, -1080, -840, -1320, -1920, -2400}),
             ints({-60, -230, -540, -840, -120, -1560, -1140, -3360})},
            {ints({0, 20, 40, -80, 0, -60, 120, -80}), ints({-1, 30, -10, -30, 29, -40, -21, -110}),
             ints({6, -20, 40, 16, -60, -80, 80, 16}), ints({1, -20, 1, 50, 0, -50, -30, 70}),
             ints({-16, -6, 20, -40, 80, 40, 40, 0}), ints({-10, 10, -50, -20, 140, 20, 50, -80})}};
        auto B = vvmf_basis(qfrac(5, 2), G, 8);
        d = "dim " + std::to_string(B.forms.size());
        if (B.forms.size() != 2) return c3 = false;
        std::vector<VVMF> reference;
        for (const auto& t : table) {
            VVMF f = B.forms[0];
            for (long mu = 0; mu < 10; ++mu) {
                size_t e = D.index_of({mu});
                const QVec& row = t[mu <= 5 ? mu : 10 - mu];  // supported on e_mu + e_-mu
                if (f.coef[e].size() != row.size()) return c3 = false;
                f.coef[e] = row;
            }
            if (!in_span(B.forms, f)) return c3 = false;
            reference.push_back(f);
        }
        return c3 = span_dim(reference) == 2;
    });

    // 4. counterexample to a direct sum decomposition
    run("4", "duv_new_dim(4, [[8,4],[4,8]]) = -1", [](std::string& d) {
        long v = duv_new_dim(4, gram({{8, 4}, {4, 8}}));
        d = "got " + std::to_string(v);
        return v == -1;
    });

    // 5. divisor relations
    {
        auto lab = [](long long p, long long q, long long mu) { return DivisorLabel{qfrac(p, q), IVec{mu}}; };
        std::vector<DivisorLabel> intro = {lab(17, 16, 3), lab(9, 16, 1), lab(1, 16, 3)};
        QVec intro_rel = ints({1, -2, 2});
        RelationSet R8;
        run("5a", "L'=(8): Z(17/16,3) - 2Z(9/16,1) + 2Z(1/16,3) is a relation (labels read as 3 mu, all forms)",
            [&](std::string& d) {
                DivisorOptions opt;
                opt.relabel = 3;
                opt.cusp_only = false;
                R8 = divisor_relations(gram({{8}}), 1, intro, 2, opt);
                d = std::to_string(R8.forms) + " forms, relation space dim " + std::to_string(R8.relations.size());
                return QSubspace::span(R8.relations, 3).contains(intro_rel);
            });
        run("5b", "L'=(8): relation space over the three divisors equals the span of the reference relation",
            [&](std::string& d) {
                auto S = QSubspace::span(R8.relations, 3);
                d = "computed dim " + std::to_string(S.dim()) + ", reference span dim 1";
                return S == QSubspace::span({intro_rel}, 3);
            });
        run("5c", "(-10): relation space over Z(1,0), Z(1/4,5), Z(4/5,4), Z(9/20,3), Z(1/5,2), Z(1/20,1) "
                  "equals the span of the five reference relations",
            [&](std::string& d) {
                std::vector<DivisorLabel> labels = {lab(1, 1, 0), lab(1, 4, 5), lab(4, 5, 4),
                                                    lab(9, 20, 3), lab(1, 5, 2), lab(1, 20, 1)};
                std::vector<Q> c = {qfrac(-1, 2), qfrac(-4, 5), qfrac(1, 20), qfrac(3, 10), qfrac(-1, 20)};
                std::vector<QVec> reference;
                for (size_t i = 0; i < c.size(); ++i) {
                    QVec b(6, Q(0));
                    b[0] = -c[i];
                    b[i + 1] = 1;
                    reference.push_back(b);
                }
                auto R = divisor_relations(gram({{10}}), 1, labels, 2);
                auto S = QSubspace::span(R.relations, 6);
                d = std::to_string(R.forms) + " cusp form(s), relation space dim " + std::to_string(S.dim());
                return S.dim() == 5 && S == QSubspace::span(reference, 6);
            });
    }

    // 6. theta round trip
    {
        struct Case {
            long k;
            GramMatrix G;
            long B;
        };
        std::vector<Case> cases = {{10, A2p, 6},
                                   {9, A2p, 8},
                                   {4, gram({{2}}), 6},
                                   {6, gram({{2, 0}, {0, 4}}), 5},
                                   {7, gram({{4, 1}, {1, 4}}), 5}};
        for (const auto& c : cases)
            run("6", "theta decomposition reproduces the basis of J_{" + std::to_string(c.k) + "} at rank " +
                         std::to_string(c.G.rank()) + " det " + std::to_string(c.G.abs_det()),
                [&](std::string& d) { return theta_roundtrip(tracked(c.k, c.G, c.B), d); });
    }

    // 7. diagrams
    {
        struct UCase {
            long k;
            GramMatrix G;
            IMat s;
        };
        std::vector<UCase> ucases = {{4, gram({{2}}), {{2}}},
                                     {6, gram({{2}}), {{3}}},
                                     {10, A2p, {{2, 0}, {0, 1}}},
                                     {9, A2p, {{1, 1}, {-1, 1}}}};
        for (const auto& c : ucases)
            run("7a", "Theta(U_s phi) = uparrow(Theta phi), k=" + std::to_string(c.k) + " rank " +
                          std::to_string(c.G.rank()),
                [&](std::string& d) {
                    JacobiSpace J = tracked(c.k, c.G, c.G.rank() == 1 ? 6 : 5);
                    IsotropicSubgroup H = embedding_subgroup(c.G, c.s);
                    size_t checked = 0;
                    for (const auto& phi : basis_fes(J)) {
                        VVMF lhs = theta_decomposition(U_s(phi, c.s));
                        VVMF rhs = uparrow(theta_decomposition(phi), H);
                        Q P = std::min(lhs.precision, rhs.precision);
                        for (size_t e = 0; e < lhs.D.size(); ++e) {
                            if (lhs.offset[e] != rhs.offset[e]) return false;
                            for (Q m = lhs.offset[e]; m < P; m += 1, ++checked)
                                if (lhs.at(e, m) != rhs.at(e, m)) return false;
                        }
                    }
                    d = std::to_string(J.space.dim()) + " forms, " + std::to_string(checked) + " coefficients";
                    return checked > 0;
                });
        struct DCase {
            long k;
            GramMatrix G;
            IVec s;
            long l;
            std::vector<long> nus;
        };
        std::vector<DCase> dcases = {{10, gram({{2}}), {1}, 2, {0, 2}},
                                     {14, gram({{2}}), {1}, 3, {0, 2}},
                                     {10, A2p, {1, 0}, 2, {0, 2}},
                                     {10, A2p, {1, 0}, 3, {0}},
                                     {9, A2p, {1, 1}, 2, {3}}};
        for (const auto& c : dcases)
            run("7b", "D_nu(phi|V_" + std::to_string(c.l) + ")[s] = T_" + std::to_string(c.l) +
                          " D_nu(phi[s]), k=" + std::to_string(c.k) + " rank " + std::to_string(c.G.rank()),
                [&](std::string& d) {
                    JacobiSpace J = tracked(c.k, c.G, 12);
                    if (J.space.dim() == 0) return false;
                    JacobiFE phi = make_fe(J, J.space.basis()[0]);
                    JacobiFE v = V_l(phi, c.l);
                    long minP = 1 << 30;
                    for (long nu : c.nus) {
                        QSeries lhs = dev_coefficient(v, nu, c.s);
                        QSeries rhs = hecke_Tl(dev_coefficient(phi, nu, c.s), c.k + nu, c.l);
                        long P = std::min(lhs.precision(), rhs.precision());
                        minP = std::min(minP, P);
                        if (P < 2 || rhs.is_zero() || lhs.truncate(P) != rhs.truncate(P)) return false;
                    }
                    d = "B=12, compared to q^" + std::to_string(minP);
                    return true;
                });
    }

    // 8. dimensions
    run("8a", "scalar construction size = dim_jacobi(k, (2m)) for k in [3,14], m in [1,6]", [](std::string& d) {
        size_t bad = 0;
        for (long m = 1; m <= 6; ++m)
            for (long k = 3; k <= 14; ++k) {
                long B = std::max(dim_mf(k + 2 * m), dim_mf(k - 1 + 2 * m)) + 2;
                if ((long)scalar_jacobi_basis(k, m, B).dim() != dim_jacobi(k, gram({{2 * m}}))) ++bad;
            }
        d = "72 pairs, " + std::to_string(bad) + " mismatches";
        return bad == 0;
    });
    run("8b", "lattice index runs: final basis size = dim_jacobi", [](std::string& d) {
        tracked(4, gram({{8, 4}, {4, 8}}), 5);
        tracked(5, gram({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}), 4);
        size_t bad = 0;
        for (const auto& [desc, ok] : runs)
            if (!ok) {
                ++bad;
                d += (d.empty() ? "" : "; ") + desc;
            }
        d = std::to_string(runs.size()) + " runs, " + std::to_string(bad) + " mismatches" + (d.empty() ? "" : ": " + d);
        return bad == 0;
    });

    // 9. stabilization
    {
        std::vector<GramMatrix> inputs = {gram({{-2}}), gram({{-10}}), gram({{-2, -1}, {-1, -2}}),
                                          gram({{0, 2}, {2, 0}}), gram({{2, 1}, {1, -4}})};
        for (const auto& G : inputs)
            run("9", "stabilize preserves the discriminant form, rank " + std::to_string(G.rank()) + " det " +
                         to_string(Q(G.det())),
                [&](std::string& d) {
                    std::vector<StabilizeStep> log;
                    GramMatrix S = stabilize_positive_definite(G, &log);
                    if (!S.positive_definite()) return false;
                    for (const auto& st : log)
                        if (st.negatives_after != st.negatives_before - 1) return false;
                    if ((int)log.size() != G.signature().second) return false;
                    DiscriminantForm a(G), b(S);
                    if (a.group().divisors() != b.group().divisors()) return false;
                    std::vector<Q> qa, qb;
                    for (size_t i = 0; i < a.size(); ++i) qa.push_back(a.q(i));
                    for (size_t i = 0; i < b.size(); ++i) qb.push_back(b.q(i));
                    std::sort(qa.begin(), qa.end());
                    std::sort(qb.begin(), qb.end());
                    d = "rank " + std::to_string(S.rank()) + ", " + std::to_string(log.size()) + " steps";
                    if (G.entries() == IMat{{-2, -1}, {-1, -2}} && S.rank() != 14) return false;
                    return qa == qb;
                });
    }

    // 10. scale of the data checks
    line("10", c2 && c3, "scaled substitute for the full data set: tables for (-2) and (-10) at precision <= 10",
         "precision 6 and 8");

    std::cout << (failures ? std::to_string(failures) + " failing line(s)" : std::string("all passing")) << std::endl;
    return failures ? 1 : 0;
}
