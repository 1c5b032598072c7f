#pragma once

// JSON and CSV interchange. Big integers always travel as decimal strings;
// exact rationals as {"exact": "num/den", "approx": "<decimal>"}.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "resavg/linear_groups.hpp"
#include "resavg/rational.hpp"
#include "resavg/tower.hpp"

namespace resavg::io {

using json = nlohmann::json;

json rational_json(const Rational& value, int digits = 10);

json tower_to_json(const IndexTower& tower);
/// Throws SchemaError naming the offending field.
IndexTower tower_from_json(const json& doc);

IndexTower read_tower(const std::filesystem::path& path);
void write_tower(const std::filesystem::path& path, const IndexTower& tower);
/// Parses tower JSON text; syntax errors carry line and column.
IndexTower parse_tower(const std::string& text);

/// Header j,d,l,r,s,t,term_num,term_den,partial_num,partial_den where term is
/// the residual-average summand (s-1)/t and partial its running sum.
std::string tower_csv(const IndexTower& tower);

json ell_table_to_json(const linear::EllTable& table);
/// {"primes": [...], "ell": [[...], ...], "O": [...]}; n comes from the caller.
linear::EllTable ell_table_from_json(const json& doc, unsigned n);
linear::EllTable read_ell_table(const std::filesystem::path& path, unsigned n);

}  // namespace resavg::io
