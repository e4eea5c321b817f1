#include "latjac/io.hpp"

#include <fstream>
#include <sstream>

namespace latjac {

namespace {

long long as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
    return j.get<long long>();
}

IVec ivec_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + ": expected an integer array");
    IVec v;
    for (const auto& x : j) v.push_back(as_int(x, what));
    return v;
}

Json ivec_json(const IVec& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json rational_json(const Q& x) { return to_string(x); }

Q rational_from_json(const Json& j) {
    if (j.is_number_integer()) return qll(j.get<long long>());
    if (!j.is_string()) throw InputError("expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json imat_json(const IMat& m) {
    Json a = Json::array();
    for (const auto& r : m) a.push_back(ivec_json(r));
    return a;
}

IMat imat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix: expected a nonempty nested array");
    IMat m;
    for (const auto& r : j) m.push_back(ivec_from_json(r, "matrix"));
    for (const auto& r : m)
        if (r.size() != m[0].size()) throw InputError("matrix: ragged rows");
    return m;
}

GramMatrix gram_from_json(const Json& j) {
    try {
        return GramMatrix(imat_from_json(j));
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json fe_json(const JacobiFE& f) {
    Json o;
    o["weight"] = f.k;
    o["gram"] = imat_json(f.gram().entries());
    o["precision"] = f.precision();
    Json cs = Json::array();
    for (size_t i = 0; i < f.I->size(); ++i) {
        auto [n, c] = f.I->coords()[i];
        Json e;
        e["n"] = n;
        e["r"] = ivec_json(f.R->rep(c));
        e["c"] = rational_json(f.v[i]);
        cs.push_back(std::move(e));
    }
    o["coeffs"] = std::move(cs);
    return o;
}

JacobiFE fe_from_json(const Json& j) {
    JacobiFE f;
    f.k = as_int(field(j, "weight"), "weight");
    GramMatrix G = gram_from_json(field(j, "gram"));
    if (!G.positive_definite()) throw InputError("Jacobi form: Gram matrix must be positive definite");
    long B = as_int(field(j, "precision"), "precision");
    if (B < 1) throw InputError("Jacobi form: precision must be positive");
    f.R = std::make_shared<RClasses>(G);
    f.I = std::make_shared<IndexSet>(*f.R, B, (int)(f.k % 2));
    f.v.assign(f.I->size(), Q(0));
    std::vector<char> seen(f.I->size(), 0);
    for (const auto& e : field(j, "coeffs")) {
        long n = as_int(field(e, "n"), "n");
        IVec r = ivec_from_json(field(e, "r"), "r");
        if (r.size() != G.rank()) throw InputError("Jacobi form: r has the wrong length");
        Q c = rational_from_json(field(e, "c"));
        auto red = reduce_fe_index(n, r, *f.R);
        if (!red) {
            if (c != 0) throw InputError("Jacobi form: nonzero coefficient at negative discriminant");
            continue;
        }
        if (red->n >= B) throw InputError("Jacobi form: coefficient beyond precision");
        long p = f.I->find(red->n, red->cls);
        if (p < 0) {
            if (c != 0) throw InputError("Jacobi form: nonzero coefficient on a class forced to vanish");
            continue;
        }
        Q val = (f.k % 2 != 0 && red->sign < 0) ? Q(-c) : c;
        if (seen[p] && f.v[p] != val) throw InputError("Jacobi form: inconsistent coefficients");
        f.v[p] = val;
        seen[p] = 1;
    }
    return f;
}

Json vvmf_json(const VVMF& f) {
    Json o;
    o["weight"] = rational_json(f.weight);
    Json d;
    d["gram"] = imat_json(f.gram.entries());
    d["order"] = f.D.size();
    d["invariants"] = ivec_json(IVec(f.D.group().divisors().begin(), f.D.group().divisors().end()));
    o["disc"] = std::move(d);
    o["dual"] = f.dual;
    o["precision"] = rational_json(f.precision);
    Json cs = Json::array();
    for (const auto& [mu, m] : f.coordinates()) {
        Json e;
        e["mu"] = ivec_json(f.D.vector_of(mu));
        e["m"] = rational_json(m);
        e["a"] = rational_json(f.at(mu, m));
        cs.push_back(std::move(e));
    }
    o["coeffs"] = std::move(cs);
    return o;
}

VVMF vvmf_from_json(const Json& j) {
    Q k = rational_from_json(field(j, "weight"));
    GramMatrix G = gram_from_json(field(field(j, "disc"), "gram"));
    if (j.contains("dual") && !j.at("dual").get<bool>()) throw InputError("vvmf: only the dual Weil type is supported");
    Q P = rational_from_json(field(j, "precision"));
    const Json& cs = field(j, "coeffs");
    long t = 0;
    for (const auto& e : cs) {
        Q m = rational_from_json(field(e, "m"));
        if (m < 0) t = std::max(t, Z(-floor_q(m)).get_si());
    }
    VVMF f = vvmf_zero(k, G, P, t);
    for (const auto& e : cs) {
        IVec mu = ivec_from_json(field(e, "mu"), "mu");
        if (mu.size() != G.rank()) throw InputError("vvmf: mu has the wrong length");
        Q m = rational_from_json(field(e, "m"));
        Q a = rational_from_json(field(e, "a"));
        size_t i = f.D.index_of(mu);
        Q d = m - f.offset[i];
        if (m >= P || d < 0 || d.get_den() != 1) {
            if (a != 0) throw InputError("vvmf: exponent " + to_string(m) + " outside the support of its component");
            continue;
        }
        f.coef[i][Z(d).get_si()] = a;
    }
    return f;
}

PrincipalPart principal_part_from_json(const Json& j, const DiscriminantForm& D) {
    if (!j.is_array()) throw InputError("principal part: expected an array");
    PrincipalPart pp;
    for (const auto& e : j) {
        IVec mu = ivec_from_json(field(e, "mu"), "mu");
        if (mu.size() != D.gram().rank()) throw InputError("principal part: mu has the wrong length");
        pp[{D.index_of(mu), rational_from_json(field(e, "m"))}] = rational_from_json(field(e, "a"));
    }
    return pp;
}

std::vector<DivisorLabel> divisors_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("divisors: expected an array");
    std::vector<DivisorLabel> out;
    for (const auto& e : j) {
        DivisorLabel d;
        d.m = rational_from_json(field(e, "m"));
        const Json& mu = field(e, "mu");
        d.mu = mu.is_array() ? ivec_from_json(mu, "mu") : IVec{as_int(mu, "mu")};
        out.push_back(std::move(d));
    }
    return out;
}

Json relations_json(const RelationSet& R) {
    Json out = Json::array();
    for (const auto& b : R.relations) {
        Json cs = Json::array();
        for (size_t i = 0; i < R.labels.size(); ++i) {
            if (b[i] == 0) continue;
            Json e;
            e["m"] = rational_json(R.labels[i].m);
            e["mu"] = ivec_json(R.labels[i].mu);
            e["b"] = rational_json(b[i]);
            cs.push_back(std::move(e));
        }
        Json r;
        r["coeffs"] = std::move(cs);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

void dump_into(std::string& out, const Json& j, size_t indent) {
    std::string flat = j.dump();
    if (!j.is_structured() || flat.size() + indent <= 100 || j.empty()) {
        out += flat;
        return;
    }
    std::string pad(indent + 2, ' ');
    out += j.is_array() ? "[\n" : "{\n";
    size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad;
        if (j.is_object()) out += Json(it.key()).dump() + ": ";
        dump_into(out, *it, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + (j.is_array() ? "]" : "}");
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_into(out, j, 0);
    return out;
}

std::string aligned_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream os;
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) os << ' ';
            os << std::string(w[i] - r[i].size(), ' ') << r[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string relations_table(const RelationSet& R) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"m", "mu"};
    for (size_t j = 0; j < R.relations.size(); ++j) head.push_back("b" + std::to_string(j + 1));
    rows.push_back(head);
    for (size_t i = 0; i < R.labels.size(); ++i) {
        std::string mu = "(";
        for (size_t t = 0; t < R.labels[i].mu.size(); ++t) mu += (t ? "," : "") + std::to_string(R.labels[i].mu[t]);
        std::vector<std::string> row = {to_string(R.labels[i].m), mu + ")"};
        for (const auto& b : R.relations) row.push_back(to_string(b[i]));
        rows.push_back(std::move(row));
    }
    return aligned_table(rows);
}

}  // namespace latjac
