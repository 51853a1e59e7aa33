#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/algebra.hpp"
#include "iwasawa/class_module.hpp"
#include "iwasawa/complex.hpp"
#include "iwasawa/ideal.hpp"
#include "iwasawa/module.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/rational.hpp"
#include "iwasawa/stickelberger.hpp"
#include "iwasawa/tower.hpp"

/// JSON encodings. Every reader throws SchemaError on malformed input.
namespace iwk::io {

using json = nlohmann::json;

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

json to_json(const Rational& x);
Rational rational_from_json(const json& j);

json to_json(const PadicInt& x);
PadicInt padic_from_json(const json& j);

json to_json(const AbelianFieldSpec& spec);
AbelianFieldSpec spec_from_json(const json& j);
/// Accepts a JSON object, a path to a JSON file, or the shorthand "zeta:m".
AbelianFieldSpec spec_from_argument(const std::string& arg);

json places_to_json(const std::vector<Place>& places);
std::vector<Place> places_from_json(const json& j);

/// {"orders", "generators" (residues), "elements": [{"residue", "exponents"}]}.
json group_to_json(const GaloisGroup& gal);
json element_to_json(const FiniteAbelianGroup& G, FiniteAbelianGroup::Element g);

/// Coefficients keyed by the least residue representing each group element; zeros omitted.
json group_ring_to_json(const QGroupRing& x, const GaloisGroup& gal);
QGroupRing group_ring_from_json(const json& j, const GaloisGroup& gal);
json group_ring_to_json(const ZpGroupRing& x, const GaloisGroup& gal);
ZpGroupRing zp_group_ring_from_json(const json& j, const GaloisGroup& gal, int64_t p, int N);

json to_json(const TowerElement& t);
/// Rebuilds the level algebras from meta.field; entries are read as stored.
TowerElement tower_from_json(const json& j);

json to_json(const ClassModuleData& m);
ClassModuleData class_module_from_json(const json& j);

/// Either {"type": "group" | "minus" | "truncated" | "split", ...} or explicit
/// {"p", "N", "basis", "mult", optional "unit" and "sharp"}.
AlgebraPtr algebra_from_json(const json& j);
json to_json(const FiniteCommAlgebra& a);
/// Coordinate array or {"label": coefficient} object.
Vec algebra_element_from_json(const json& j, const FiniteCommAlgebra& a);
json algebra_element_to_json(const Vec& x, const FiniteCommAlgebra& a);

/// {"generators": n, "relations": [[element, ...], ...]}.
FinPresModule finpres_from_json(const json& j, const AlgebraPtr& a);
json to_json(const FinPresModule& m);
std::vector<std::vector<Vec>> algebra_matrix_from_json(const json& j, const FiniteCommAlgebra& a);

json to_json(const Ideal& ideal);

/// {"algebra", "degrees": [a, b], "modules": [presentations], "differentials": [algebra matrices]}.
/// Differential k maps module k to module k+1 by x -> x D_k on generator coordinates.
BoundedComplex complex_from_json(const json& j);

}  // namespace iwk::io
