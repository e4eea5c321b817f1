#pragma once
// JSON reading and writing for Gram matrices, Jacobi forms, vector valued forms
// and divisor relations. Rationals are strings "p/q" or "p".

#include "latjac/divisors.hpp"
#include "latjac/hecke.hpp"

#include <json.hpp>

namespace latjac {

using Json = nlohmann::ordered_json;

// malformed or inconsistent input
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Json read_json_file(const std::string& path);

Json rational_json(const Q& x);
Q rational_from_json(const Json& j);  // string or integer
Json imat_json(const IMat& m);
IMat imat_from_json(const Json& j);
GramMatrix gram_from_json(const Json& j);

Json fe_json(const JacobiFE& f);
JacobiFE fe_from_json(const Json& j);

Json vvmf_json(const VVMF& f);
VVMF vvmf_from_json(const Json& j);

PrincipalPart principal_part_from_json(const Json& j, const DiscriminantForm& D);

std::vector<DivisorLabel> divisors_from_json(const Json& j);
Json relations_json(const RelationSet& R);
std::string relations_table(const RelationSet& R);

// indented JSON where every value whose compact form fits a line stays on one line
std::string dump_json(const Json& j);

// right aligned columns, one space apart
std::string aligned_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace latjac
