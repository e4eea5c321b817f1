// latjac command line front end.
//
// exit codes: 0 success, 2 invalid input, 3 weight out of range, 4 no such form

#include "latjac/cache.hpp"
#include "latjac/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace latjac;

namespace {

struct Globals {
    bool no_cache = false;
    std::string cache_dir;
    bool table = false;
    std::unique_ptr<Cache> cache;
    const Cache* get() {
        if (no_cache) return nullptr;
        if (!cache) cache = std::make_unique<Cache>(cache_dir.empty() ? Cache::default_dir() : cache_dir);
        return cache.get();
    }
};

void print(const Json& j) { std::cout << dump_json(j) << '\n'; }

// a single object, or an array holding exactly one
Json single(const Json& j) {
    if (!j.is_array()) return j;
    if (j.size() != 1) throw InputError("expected one form, got an array of " + std::to_string(j.size()));
    return j[0];
}

std::string ivec_str(const IVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void print_fes(const std::vector<JacobiFE>& fs, bool table) {
    if (!table) {
        Json a = Json::array();
        for (const auto& f : fs) a.push_back(fe_json(f));
        print(a);
        return;
    }
    std::vector<std::vector<std::string>> rows = {{"form", "n", "r", "c"}};
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t p = 0; p < fs[i].I->size(); ++p) {
            auto [n, c] = fs[i].I->coords()[p];
            rows.push_back({std::to_string(i + 1), std::to_string(n), ivec_str(fs[i].R->rep(c)), to_string(fs[i].v[p])});
        }
    std::cout << aligned_table(rows);
}

void print_vvmfs(const std::vector<VVMF>& fs, bool table) {
    if (!table) {
        Json a = Json::array();
        for (const auto& f : fs) a.push_back(vvmf_json(f));
        print(a);
        return;
    }
    std::vector<std::vector<std::string>> rows = {{"form", "mu", "m", "a"}};
    for (size_t i = 0; i < fs.size(); ++i)
        for (const auto& [mu, m] : fs[i].coordinates())
            rows.push_back({std::to_string(i + 1), ivec_str(fs[i].D.vector_of(mu)), to_string(m),
                            to_string(fs[i].at(mu, m))});
    std::cout << aligned_table(rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobi forms of lattice index and vector valued modular forms"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--no-cache", g.no_cache, "do not read or write the on-disk cache");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default: $LATJAC_CACHE_DIR or the user data dir)");
    app.add_flag("--table", g.table, "aligned table instead of JSON");
    app.add_flag("--json", [&g](int64_t) { g.table = false; }, "JSON output (default)");

    long k = 0, B = 0;
    std::string gram_file, weight_str;

    auto* jb = app.add_subcommand("jacobi-basis", "basis of J_{k,L} (or its U-newspace)");
    bool newforms = false;
    jb->add_option("--weight", k, "weight")->required();
    jb->add_option("--gram", gram_file, "Gram matrix JSON file")->required();
    jb->add_option("--precision", B, "precision B")->required();
    jb->add_flag("--new", newforms, "only the complement of the U-oldspace");

    auto* vv = app.add_subcommand("vvmf", "vector valued modular forms of dual Weil type");
    long weak = -1;
    std::string pp_file;
    vv->add_option("--weight", weight_str, "weight p/q")->required();
    vv->add_option("--gram", gram_file, "Gram matrix JSON file")->required();
    vv->add_option("--precision", B, "precision B")->required();
    auto* weak_opt = vv->add_option("--weak-order", weak, "allow poles of order <= t");
    auto* pp_opt = vv->add_option("--principal-part", pp_file, "principal part JSON file");
    weak_opt->excludes(pp_opt);

    auto* dm = app.add_subcommand("dimension", "dim J_{k,L}");
    dm->add_option("--weight", k, "weight")->required();
    dm->add_option("--gram", gram_file, "Gram matrix JSON file")->required();

    auto* st = app.add_subcommand("stabilize", "stably equivalent positive definite lattice");
    st->add_option("--gram", gram_file, "Gram matrix JSON file")->required();

    auto* hk = app.add_subcommand("hecke", "Hecke-type operators");
    hk->require_subcommand(1);
    std::string input_file, s_file;
    long l = 1;
    auto* us = hk->add_subcommand("us", "phi(tau, s z)");
    us->add_option("--input", input_file, "Jacobi form JSON file")->required();
    us->add_option("--s", s_file, "integer matrix JSON file")->required();
    auto* vl = hk->add_subcommand("vl", "V_l on a Jacobi form");
    vl->add_option("--input", input_file, "Jacobi form JSON file")->required();
    vl->add_option("--l", l, "l")->required();
    auto* sc = hk->add_subcommand("sc", "vector valued counterpart of V_l");
    sc->add_option("--input", input_file, "vector valued form JSON file")->required();
    sc->add_option("--l", l, "l, coprime to det")->required();
    sc->add_option("--weight", k, "Jacobi weight")->required();
    auto* duv = hk->add_subcommand("duv-new-dim", "dimension of the U-newspace by the recursion over overlattices");
    duv->add_option("--weight", k, "weight")->required();
    duv->add_option("--gram", gram_file, "Gram matrix JSON file")->required();

    auto* dr = app.add_subcommand("divisor-relations", "relations of special divisors on U + U(N) + L'(-1)");
    std::string lp_file, div_file;
    long N = 1, relabel = 1;
    bool all_forms = false;
    dr->add_option("--lprime", lp_file, "positive definite L' JSON file")->required();
    dr->add_option("--scale", N, "N")->capture_default_str();
    dr->add_option("--divisors", div_file, "divisor labels JSON file")->required();
    dr->add_option("--precision", B, "precision B")->required();
    dr->add_option("--relabel", relabel, "read labels mu as relabel * mu")->capture_default_str();
    dr->add_flag("--all-forms", all_forms, "pair with all forms, not only cusp forms");

    for (auto* sub : {jb, vv, dm, st, hk, us, vl, sc, duv, dr}) sub->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*jb) {
            GramMatrix G = gram_from_json(read_json_file(gram_file));
            if (!G.positive_definite()) throw InputError("jacobi-basis: Gram matrix must be positive definite");
            if (newforms) {
                NewformSpace S = jacobi_newforms(k, G, B, g.get());
                std::vector<JacobiFE> fs;
                for (const auto& v : S.fresh) fs.push_back(make_fe(S.full, v));
                print_fes(fs, g.table);
            } else {
                print_fes(basis_fes(jacobi_forms(k, G, B, g.get())), g.table);
            }
        } else if (*vv) {
            Q w = rational_from_json(Json(weight_str));
            GramMatrix G = gram_from_json(read_json_file(gram_file));
            if (*pp_opt) {
                PrincipalPart pp = principal_part_from_json(read_json_file(pp_file), DiscriminantForm(G));
                auto sol = vvmf_with_principal_part(w, G, pp, B, g.get());
                print_vvmfs({sol.form}, g.table);
            } else if (weak >= 0) {
                print_vvmfs(vvmf_weakly_holomorphic(w, G, weak, B, g.get()), g.table);
            } else {
                print_vvmfs(vvmf_basis(w, G, B, g.get()).forms, g.table);
            }
        } else if (*dm) {
            std::cout << dim_jacobi(k, gram_from_json(read_json_file(gram_file))) << '\n';
        } else if (*st) {
            GramMatrix S = stabilize_positive_definite(gram_from_json(read_json_file(gram_file)));
            print(imat_json(S.entries()));
        } else if (*us) {
            JacobiFE f = fe_from_json(single(read_json_file(input_file)));
            IMat s = imat_from_json(read_json_file(s_file));
            print_fes({U_s(f, s)}, g.table);
        } else if (*vl) {
            if (l < 1) throw InputError("l must be positive");
            print_fes({V_l(fe_from_json(single(read_json_file(input_file))), l)}, g.table);
        } else if (*sc) {
            if (l < 1) throw InputError("l must be positive");
            print_vvmfs({sc_l(vvmf_from_json(single(read_json_file(input_file))), l, k)}, g.table);
        } else if (*duv) {
            GramMatrix G = gram_from_json(read_json_file(gram_file));
            if (!G.positive_definite()) throw InputError("duv-new-dim: Gram matrix must be positive definite");
            std::cout << duv_new_dim(k, G) << '\n';
        } else if (*dr) {
            GramMatrix Lp = gram_from_json(read_json_file(lp_file));
            auto labels = divisors_from_json(read_json_file(div_file));
            DivisorOptions opt;
            opt.cusp_only = !all_forms;
            opt.relabel = relabel;
            opt.cache = g.get();
            RelationSet R = divisor_relations(Lp, N, labels, B, opt);
            if (g.table)
                std::cout << relations_table(R);
            else
                print(relations_json(R));
        }
    } catch (const NoSuchForm& e) {
        std::cerr << e.what() << '\n';
        return 4;
    } catch (const WeightError& e) {
        std::cerr << "weight: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
