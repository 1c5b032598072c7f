#include "resavg/io.hpp"

#include <fstream>
#include <sstream>

#include "resavg/errors.hpp"

namespace resavg::io {

namespace {

Integer integer_field(const json& v, const std::string& where) {
  Integer out;
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (!try_parse_integer(s, out)) {
      throw SchemaError(where + ": malformed integer \"" + s + "\"");
    }
    return out;
  }
  if (v.is_number_unsigned()) return Integer(v.get<unsigned long>());
  if (v.is_number_integer()) return Integer(v.get<long>());
  throw SchemaError(where + ": expected a decimal string, got " + std::string(v.type_name()));
}

std::vector<Integer> integer_array(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw SchemaError("missing field \"" + key + "\"");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw SchemaError("field \"" + key + "\" must be an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(integer_field(arr[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

json rational_json(const Rational& value, int digits) {
  return json{{"exact", to_fraction_string(value)}, {"approx", to_decimal(value, digits)}};
}

json tower_to_json(const IndexTower& tower) {
  json d = json::array(), l = json::array();
  for (const auto& x : tower.d()) d.push_back(x.get_str());
  for (const auto& x : tower.l()) l.push_back(x.get_str());
  return json{{"name", tower.name()}, {"d", d}, {"l", l}};
}

IndexTower tower_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("tower document must be a JSON object");
  std::string name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw SchemaError("field \"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }
  auto d = integer_array(doc, "d");
  auto l = integer_array(doc, "l");
  if (d.size() != l.size()) {
    throw SchemaError("\"d\" has " + std::to_string(d.size()) + " entries but \"l\" has " +
                      std::to_string(l.size()));
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) throw SchemaError("d[" + std::to_string(i) + "] must be positive");
    if (l[i] < 1) throw SchemaError("l[" + std::to_string(i) + "] must be positive");
  }
  return IndexTower(std::move(name), std::move(d), std::move(l));
}

IndexTower parse_tower(const std::string& text) { return tower_from_json(parse_json_text(text)); }

IndexTower read_tower(const std::filesystem::path& path) { return parse_tower(slurp(path)); }

void write_tower(const std::filesystem::path& path, const IndexTower& tower) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path.string());
  out << tower_to_json(tower).dump(2) << '\n';
}

std::string tower_csv(const IndexTower& tower) {
  std::ostringstream out;
  out << "j,d,l,r,s,t,term_num,term_den,partial_num,partial_den\n";
  Rational partial = 0;
  for (std::size_t j = 1; j <= tower.size(); ++j) {
    auto lv = decompose(tower, j);
    Rational term = make_rational(lv.s - 1, lv.t);
    partial += term;
    out << j << ',' << tower.index(j) << ',' << tower.intersection_index(j) << ',' << lv.r << ','
        << lv.s << ',' << lv.t << ',' << term.get_num() << ',' << term.get_den() << ','
        << partial.get_num() << ',' << partial.get_den() << '\n';
  }
  return out.str();
}

json ell_table_to_json(const linear::EllTable& table) {
  json primes = json::array(), ell = json::array(), O = json::array();
  for (auto p : table.primes()) primes.push_back(p);
  for (const auto& row : table.rows_ell()) ell.push_back(row);
  for (const auto& o : table.orders()) O.push_back(o.get_str());
  return json{{"primes", primes}, {"ell", ell}, {"O", O}};
}

linear::EllTable ell_table_from_json(const json& doc, unsigned n) {
  if (!doc.is_object()) throw SchemaError("ell table must be a JSON object");
  for (const char* key : {"primes", "ell", "O"}) {
    if (!doc.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  }
  std::vector<std::uint64_t> primes;
  auto raw = integer_array(doc, "primes");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Integer& p = raw[i];
    if (p < 2 || !p.fits_ulong_p()) {
      throw SchemaError("primes[" + std::to_string(i) + "] out of range");
    }
    primes.push_back(p.get_ui());
  }
  const json& rows = doc.at("ell");
  if (!rows.is_array()) throw SchemaError("field \"ell\" must be an array of arrays");
  std::vector<std::vector<std::uint64_t>> ell;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (!rows[j].is_array()) throw SchemaError("ell[" + std::to_string(j) + "] must be an array");
    std::vector<std::uint64_t> row;
    for (std::size_t k = 0; k < rows[j].size(); ++k) {
      auto where = "ell[" + std::to_string(j) + "][" + std::to_string(k) + "]";
      Integer v = integer_field(rows[j][k], where);
      if (v < 0 || !v.fits_ulong_p()) throw SchemaError(where + " out of range");
      row.push_back(v.get_ui());
    }
    ell.push_back(std::move(row));
  }
  auto O = integer_array(doc, "O");
  try {
    return linear::EllTable(n, std::move(primes), std::move(ell), std::move(O));
  } catch (const InvalidTable& e) {
    throw SchemaError(std::string("invalid ell table: ") + e.what());
  }
}

linear::EllTable read_ell_table(const std::filesystem::path& path, unsigned n) {
  return ell_table_from_json(parse_json_text(slurp(path)), n);
}

}  // namespace resavg::io
