#pragma once
// On-disk cache for pullback matrices and scalar bases.

#include "latjac/arith.hpp"

#include <optional>
#include <string>

namespace latjac {

class Cache {
public:
    static constexpr int kFormatVersion = 1;

    // LATJAC_CACHE_DIR, else $XDG_DATA_HOME/latjac/cache, else ~/.local/share/latjac/cache
    static std::string default_dir();
    explicit Cache(std::string dir);

    const std::string& dir() const { return dir_; }
    // key is the full description of the computation; entries whose header does not
    // repeat it verbatim (hash collision, older format, truncation) are ignored
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& payload) const;

private:
    std::string dir_;
    std::string path_for(const std::string& key) const;
};

std::string serialize_matrix(const QMatrix& M);
std::optional<QMatrix> parse_matrix(const std::string& s);
std::string serialize_subspace(const QSubspace& S);
std::optional<QSubspace> parse_subspace(const std::string& s);

uint64_t fnv1a(const std::string& s);

}  // namespace latjac
