#include "latjac/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;

namespace latjac {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string Cache::default_dir() {
    if (const char* d = std::getenv("LATJAC_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_DATA_HOME"); x && *x) return std::string(x) + "/latjac/cache";
    const char* home = std::getenv("HOME");
    return std::string(home ? home : ".") + "/.local/share/latjac/cache";
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {}

std::string Cache::path_for(const std::string& key) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(key));
    return dir_ + "/" + buf + ".v" + std::to_string(kFormatVersion);
}

namespace {

std::string header(const std::string& key) { return "latjac-cache " + std::to_string(Cache::kFormatVersion) + " " + key; }

}  // namespace

std::optional<std::string> Cache::get(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string first;
    if (!std::getline(in, first) || first != header(key)) return std::nullopt;
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string body = rest.str();
    // trailer guards against truncated writes
    const std::string end = "\nend\n";
    if (body.size() < end.size() || body.compare(body.size() - end.size(), end.size(), end) != 0) return std::nullopt;
    return body.substr(0, body.size() - end.size());
}

void Cache::put(const std::string& key, const std::string& payload) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) return;
    std::string target = path_for(key);
    std::string tmp = target + ".tmp" + std::to_string(::getpid()) + "." + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << header(key) << "\n" << payload << "\nend\n";
        if (!out) {
            fs::remove(tmp, ec);
            return;
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) fs::remove(tmp, ec);
}

std::string serialize_matrix(const QMatrix& M) {
    std::ostringstream o;
    o << M.rows() << " " << M.cols();
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0) o << "\n" << i << " " << j << " " << to_string(M(i, j));
    return o.str();
}

std::optional<QMatrix> parse_matrix(const std::string& s) {
    std::istringstream in(s);
    size_t r, c;
    if (!(in >> r >> c)) return std::nullopt;
    QMatrix M(r, c);
    size_t i, j;
    std::string v;
    while (in >> i >> j >> v) {
        if (i >= r || j >= c) return std::nullopt;
        try {
            M(i, j) = parse_rational(v);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (!in.eof()) return std::nullopt;
    return M;
}

std::string serialize_subspace(const QSubspace& S) {
    QMatrix M(S.dim(), S.ambient());
    for (size_t i = 0; i < S.dim(); ++i)
        for (size_t j = 0; j < S.ambient(); ++j) M(i, j) = S.basis()[i][j];
    return serialize_matrix(M);
}

std::optional<QSubspace> parse_subspace(const std::string& s) {
    auto M = parse_matrix(s);
    if (!M) return std::nullopt;
    std::vector<QVec> rows;
    for (size_t i = 0; i < M->rows(); ++i) rows.push_back(M->row(i));
    QSubspace S = QSubspace::span(rows, M->cols());
    if (S.dim() != M->rows()) return std::nullopt;
    return S;
}

}  // namespace latjac
