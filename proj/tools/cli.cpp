#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "resavg/errors.hpp"
#include "resavg/grigorchuk.hpp"
#include "resavg/integer_div.hpp"
#include "resavg/io.hpp"
#include "resavg/linear_groups.hpp"
#include "resavg/primes.hpp"
#include "resavg/tower.hpp"

namespace resavg::cli {

namespace {

using io::json;
using io::rational_json;

struct Report {
  json parameters = json::object();
  json results = json::object();
  std::vector<std::string> warnings;
  // When set, --csv prints this tower's table instead of the JSON report.
  std::optional<IndexTower> csv_tower;
};

struct Globals {
  int digits = 10;
  bool json_out = false;
  bool csv = false;
  bool quiet = false;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  Integer v;
  if (!try_parse_integer(text, v) || v < 0 || !v.fits_ulong_p()) {
    throw InvalidArgument(std::string(what) + " must be a non-negative 64-bit integer, got \"" +
                          text + "\"");
  }
  return v.get_ui();
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    out.push_back(parse_integer(item));
  }
  return out;
}

json tower_summary(const IndexTower& tower, int digits) {
  json out = io::tower_to_json(tower);
  out["levels"] = tower.size();
  if (!tower.empty()) {
    out["ave_partial"] = rational_json(ave_partial(tower, tower.size()), digits);
  }
  return out;
}

json classification_json(const Classification& c, int digits, std::vector<std::string>& warnings) {
  json alphas = json::array();
  for (const auto& [j, a] : c.window_alphas) {
    alphas.push_back(json{{"j", j}, {"alpha", rational_json(a, digits)}});
  }
  for (auto j : c.skipped_levels) {
    warnings.push_back("level " + std::to_string(j) + " has s_j = 1; alpha undefined, skipped");
  }
  if (c.growth == GrowthClass::Indeterminate) {
    warnings.push_back("alpha values in the window straddle 1; classification Indeterminate");
  }
  return json{{"growth", to_string(c.growth)},
              {"window_alphas", alphas},
              {"skipped_levels", c.skipped_levels}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual averages, divisibility functions and index-gap statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--digits", g.digits, "significant digits for decimal fields")
      ->check(CLI::Range(1, 1000));
  app.add_flag("--json", g.json_out, "JSON report on stdout (default)");
  app.add_flag("--csv", g.csv, "print the tower table as CSV where a command produces a tower");
  app.add_flag("--quiet", g.quiet, "do not echo warnings to stderr");

  // Options are kept as strings where arbitrary precision matters.
  std::string upto, terms, prime, n_opt, m_opt, mode = "full", group = "sl", q_opt, kpow;
  std::string matrix, pmax, table_path, N0, C_opt, delta_opt, eps_opt, levels_opt, model = "congruence";
  std::string generate, gen_primes, gen_depth, gen_a, p_opt, a_opt, tower_path, window = "10";
  std::string indices, s_opt = "1", c_opt;
  bool with_classify = false, d1_series = false, with_average = false;

  auto* primes_cmd = app.add_subcommand("primes", "primes up to N");
  primes_cmd->add_option("--upto", upto)->required();

  auto* bertrand_cmd = app.add_subcommand("bertrand", "maximum consecutive-prime ratio up to N");
  bertrand_cmd->add_option("--upto", upto)->required();

  auto* avez_cmd = app.add_subcommand("ave-z", "partial sum of the residual average of Z");
  avez_cmd->add_option("--terms", terms)->required();

  auto* aveprime_cmd = app.add_subcommand("ave-prime", "partial sum over the prime subgroups of Z");
  aveprime_cmd->add_option("--terms", terms)->required();

  auto* avep_cmd = app.add_subcommand("ave-p", "partial sum over the p-power subgroups of Z");
  avep_cmd->add_option("--prime", prime)->required();
  avep_cmd->add_option("--terms", terms)->required();

  auto* density_cmd = app.add_subcommand("density", "empirical density of {m : D(m) = n}");
  density_cmd->add_option("--n", n_opt)->required();
  density_cmd->add_option("--upto", upto)->required();
  density_cmd->add_flag("--average", with_average, "also report the empirical mean of D up to N");

  auto* div_cmd = app.add_subcommand("div", "divisibility function of an integer");
  div_cmd->add_option("--m", m_opt)->required();
  div_cmd->add_option("--mode", mode)->check(CLI::IsMember({"full", "prime", "p"}));
  div_cmd->add_option("--prime", prime);

  auto* sltower_cmd = app.add_subcommand("sl-tower", "congruence tower of SL(n,Z) over the first J primes");
  sltower_cmd->add_option("--n", n_opt)->required();
  sltower_cmd->add_option("--primes", terms)->required();
  sltower_cmd->add_flag("--classify", with_classify);
  sltower_cmd->add_option("--window", window);

  auto* order_cmd = app.add_subcommand("order", "order of SL or GL over F_q or Z/p^k");
  order_cmd->add_option("--group", group)->check(CLI::IsMember({"sl", "gl"}));
  order_cmd->add_option("--n", n_opt)->required();
  order_cmd->add_option("--q", q_opt)->required();
  order_cmd->add_option("--mod-power", kpow);

  auto* matdiv_cmd = app.add_subcommand("matdiv", "least prime detecting a matrix");
  matdiv_cmd->add_option("--matrix", matrix)->required();
  matdiv_cmd->add_option("--pmax", pmax)->required();

  auto* select_cmd = app.add_subcommand("select-powers", "choose prime powers keeping index gaps small");
  select_cmd->add_option("--table", table_path, "ell-table JSON file");
  select_cmd->add_option("--generate", generate, "built-in table instead of --table")
      ->check(CLI::IsMember({"sl", "unit"}));
  select_cmd->add_option("--table-primes", gen_primes, "rows of the built-in table");
  select_cmd->add_option("--depth", gen_depth, "columns of the built-in table");
  select_cmd->add_option("--a", gen_a, "generator for --generate unit");
  select_cmd->add_option("--n", n_opt)->required();
  select_cmd->add_option("--N0", N0)->required();
  select_cmd->add_option("--C", C_opt)->required();
  select_cmd->add_option("--delta", delta_opt)->required();
  select_cmd->add_option("--epsilon", eps_opt, "defaults to delta/2");
  select_cmd->add_option("--levels", levels_opt, "defaults to every table row");
  select_cmd->add_option("--model", model)->check(CLI::IsMember({"congruence", "cyclic"}));

  auto* wief_cmd = app.add_subcommand("wieferich", "a^(p-1) == 1 mod p^2");
  wief_cmd->add_option("--p", p_opt)->required();
  wief_cmd->add_option("--a", a_opt)->required();

  auto* grig_cmd = app.add_subcommand("grig", "level-stabilizer tower of the Grigorchuk group");
  grig_cmd->add_option("--levels", levels_opt)->required();
  grig_cmd->add_flag("--d1-series", d1_series);

  auto* slzp_cmd = app.add_subcommand("slzp", "congruence tower of SL(n, Z_p)");
  slzp_cmd->add_option("--n", n_opt)->required();
  slzp_cmd->add_option("--p", p_opt)->required();
  slzp_cmd->add_option("--levels", levels_opt)->required();

  auto* classify_cmd = app.add_subcommand("classify", "ratio-test growth class of a tower");
  classify_cmd->add_option("--tower", tower_path)->required();
  classify_cmd->add_option("--window", window);

  auto* ave_cmd = app.add_subcommand("ave", "residual-average partial sums of a tower");
  ave_cmd->add_option("--tower", tower_path)->required();
  ave_cmd->add_option("--terms", terms);

  auto* zeta_cmd = app.add_subcommand("zeta", "partial zeta sum over an index set");
  zeta_cmd->add_option("--indices", indices, "comma-separated indices");
  zeta_cmd->add_option("--tower", tower_path, "use the tower's d sequence");
  zeta_cmd->add_option("--s", s_opt);
  zeta_cmd->add_option("--terms", terms);

  auto* check_cmd = app.add_subcommand("tower-check", "structural checks on a tower file");
  check_cmd->add_option("--tower", tower_path)->required();
  check_cmd->add_option("--c", c_opt, "linear gap constant");
  check_cmd->add_option("--delta", delta_opt, "power gap exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const int D = g.digits;
  Report rep;

  try {
    if (sub == primes_cmd) {
      auto N = parse_u64(upto, "--upto");
      rep.parameters["upto"] = N;
      auto seq = primes_upto(N);
      rep.results["count"] = seq.primes.size();
      rep.results["primes"] = seq.primes;
    } else if (sub == bertrand_cmd) {
      auto N = parse_u64(upto, "--upto");
      rep.parameters["upto"] = N;
      auto b = bertrand_verify(N);
      rep.results["max_ratio"] = rational_json(b.max_ratio, D);
      rep.results["witness"] = {b.witness.first, b.witness.second};
      rep.results["holds"] = b.holds;
      rep.results["pairs_checked"] = b.pairs_checked;
    } else if (sub == avez_cmd) {
      auto J = parse_u64(terms, "--terms");
      rep.parameters["terms"] = J;
      rep.results["value"] = rational_json(integers::ave_z_partial(J), D);
    } else if (sub == aveprime_cmd) {
      auto J = parse_u64(terms, "--terms");
      rep.parameters["terms"] = J;
      rep.results["value"] = rational_json(integers::ave_prime_partial(J), D);
    } else if (sub == avep_cmd) {
      auto p = parse_u64(prime, "--prime");
      auto J = parse_u64(terms, "--terms");
      rep.parameters["prime"] = p;
      rep.parameters["terms"] = J;
      Rational v = integers::ave_p_partial(p, J);
      rep.results["value"] = rational_json(v, D);
      rep.results["equals_J_times_p_minus_1"] = (v == Rational(Integer(J) * (p - 1)));
    } else if (sub == density_cmd) {
      auto n = parse_u64(n_opt, "--n");
      auto N = parse_u64(upto, "--upto");
      rep.parameters["n"] = n;
      rep.parameters["upto"] = N;
      Rational emp = integers::empirical_density_exact(n, N);
      Rational mu = integers::level_set_measure(n).measure;
      Rational bound = make_rational(2 * lcm_upto(n), Integer(N));
      Rational gap = abs(emp - mu);
      rep.results["empirical"] = rational_json(emp, D);
      rep.results["measure"] = rational_json(mu, D);
      rep.results["abs_difference"] = rational_json(gap, D);
      rep.results["bound"] = rational_json(bound, D);
      rep.results["within_bound"] = gap <= bound;
      if (with_average) {
        rep.results["empirical_average"] = rational_json(integers::empirical_average_exact(N), D);
      }
    } else if (sub == div_cmd) {
      Integer mv = parse_integer(m_opt);
      if (!mv.fits_slong_p()) throw InvalidArgument("--m must fit in 64 bits");
      long m = mv.get_si();
      rep.parameters["m"] = m_opt;
      rep.parameters["mode"] = mode;
      if (mode == "full") {
        rep.results["value"] = integers::d_full(m);
      } else if (mode == "prime") {
        rep.results["value"] = integers::d_prime(m);
      } else {
        if (prime.empty()) throw InvalidArgument("--mode p needs --prime");
        auto p = parse_u64(prime, "--prime");
        rep.parameters["prime"] = p;
        rep.results["value"] = integers::d_p(m, p).get_str();
      }
    } else if (sub == sltower_cmd) {
      auto n = parse_u64(n_opt, "--n");
      auto J = parse_u64(terms, "--primes");
      rep.parameters["n"] = n;
      rep.parameters["primes"] = J;
      auto tower = linear::sl_prime_tower(static_cast<unsigned>(n), J);
      rep.results["tower"] = tower_summary(tower, D);
      rep.results["is_prime_system"] = is_prime_system(tower);
      if (with_classify) {
        auto W = parse_u64(window, "--window");
        rep.parameters["window"] = W;
        rep.results["classification"] = classification_json(classify(tower, W), D, rep.warnings);
      }
      rep.csv_tower = tower;
    } else if (sub == order_cmd) {
      auto n = static_cast<unsigned>(parse_u64(n_opt, "--n"));
      auto q = parse_u64(q_opt, "--q");
      rep.parameters["group"] = group;
      rep.parameters["n"] = n;
      rep.parameters["q"] = q;
      bool det_one = group == "sl";
      Integer order;
      if (kpow.empty()) {
        order = det_one ? linear::sl_order(n, q) : linear::gl_order(n, q);
      } else {
        auto k = static_cast<unsigned>(parse_u64(kpow, "--mod-power"));
        rep.parameters["mod_power"] = k;
        if (!is_prime(q)) throw InvalidArgument("--mod-power needs --q to be prime");
        order = linear::order_mod_pk(n, q, k, det_one);
      }
      rep.results["order"] = order.get_str();
    } else if (sub == matdiv_cmd) {
      auto gamma = linear::IntMatrix::parse(matrix);
      auto P = parse_u64(pmax, "--pmax");
      rep.parameters["matrix"] = gamma.to_string();
      rep.parameters["pmax"] = P;
      auto md = linear::divisibility_matrix(gamma, P);
      rep.results["prime"] = md.p;
      rep.results["index"] = md.index.get_str();
    } else if (sub == select_cmd) {
      auto n = static_cast<unsigned>(parse_u64(n_opt, "--n"));
      std::optional<linear::EllTable> table;
      if (!table_path.empty() && !generate.empty()) {
        throw InvalidArgument("give either --table or --generate, not both");
      }
      if (!table_path.empty()) {
        table = io::read_ell_table(table_path, n);
        rep.parameters["table"] = table_path;
      } else if (!generate.empty()) {
        if (gen_primes.empty() || gen_depth.empty()) {
          throw InvalidArgument("--generate needs --table-primes and --depth");
        }
        auto rows = parse_u64(gen_primes, "--table-primes");
        auto K = parse_u64(gen_depth, "--depth");
        rep.parameters["generate"] = generate;
        rep.parameters["table_primes"] = rows;
        rep.parameters["depth"] = K;
        if (generate == "sl") {
          table = linear::sl_ell_table(n, first_primes(rows), K);
        } else {
          if (gen_a.empty()) throw InvalidArgument("--generate unit needs --a");
          auto a = parse_u64(gen_a, "--a");
          rep.parameters["a"] = a;
          // Skip primes dividing a; they carry no information for <a>.
          std::vector<std::uint64_t> ps;
          for (std::uint64_t p = 2; ps.size() < rows; ++p) {
            if (is_prime(p) && a % p != 0) ps.push_back(p);
          }
          table = linear::mult_order_ell_table(a, ps, K);
        }
      } else {
        throw InvalidArgument("select-powers needs --table or --generate");
      }
      Rational delta = parse_rational(delta_opt);
      Rational eps = eps_opt.empty() ? Rational(delta / 2) : parse_rational(eps_opt);
      linear::PowerSelectionParams params(n, parse_integer(N0), parse_integer(C_opt), delta, eps);
      std::size_t J = levels_opt.empty() ? table->rows() : parse_u64(levels_opt, "--levels");
      rep.parameters["n"] = n;
      rep.parameters["N0"] = params.N().get_str();
      rep.parameters["C"] = params.C().get_str();
      rep.parameters["delta"] = to_fraction_string(delta);
      rep.parameters["epsilon"] = to_fraction_string(eps);
      rep.parameters["levels"] = J;
      rep.parameters["model"] = model;
      auto ks = linear::select_powers(*table, params, J);
      auto check = linear::verify_power_windows(*table, params, ks);
      auto j0 = linear::power_j0(*table, params);
      auto lm = model == "cyclic" ? linear::LatticeModel::Cyclic
                                  : linear::LatticeModel::CongruenceProduct;
      auto tower = linear::power_tower(*table, ks, lm, "selected powers");
      auto from = gap_power_holds_from(tower, delta);
      rep.results["k"] = ks;
      rep.results["windows_ok"] = check.ok;
      rep.results["window_failures"] = check.failures;
      rep.results["j0"] = j0;
      rep.results["gap_power_holds_from"] = from ? json(*from) : json(nullptr);
      bool after_j0 = from && *from <= std::max<std::size_t>(j0, 1);
      rep.results["gap_power_after_j0"] = after_j0;
      rep.results["is_prime_system"] = is_prime_system(tower);
      rep.results["tower"] = tower_summary(tower, D);
      if (j0 > J) rep.warnings.push_back("j0 lies beyond the selected levels");
      rep.csv_tower = tower;
    } else if (sub == wief_cmd) {
      auto p = parse_u64(p_opt, "--p");
      auto a = parse_u64(a_opt, "--a");
      if (!is_prime(p)) throw InvalidArgument("--p must be prime");
      rep.parameters["p"] = p;
      rep.parameters["a"] = a;
      rep.results["wieferich"] = linear::wieferich_test(p, a);
    } else if (sub == grig_cmd) {
      auto J = static_cast<unsigned>(parse_u64(levels_opt, "--levels"));
      rep.parameters["levels"] = J;
      auto tower = grigorchuk::grig_tower(J);
      rep.results["tower"] = tower_summary(tower, D);
      if (d1_series) {
        if (J < 4) throw InsufficientLevels("--d1-series needs --levels >= 4");
        auto series = grigorchuk::d1_series_terms(tower.d(), J - 3);
        json ts = json::array();
        for (const auto& t : series.terms) ts.push_back(rational_json(t, D));
        rep.results["d1_series"] = json{{"leading", rational_json(series.leading, D)},
                                        {"terms", ts},
                                        {"trend", grigorchuk::to_string(series.trend)}};
      }
      rep.csv_tower = tower;
    } else if (sub == slzp_cmd) {
      auto n = static_cast<unsigned>(parse_u64(n_opt, "--n"));
      auto p = parse_u64(p_opt, "--p");
      auto J = parse_u64(levels_opt, "--levels");
      rep.parameters["n"] = n;
      rep.parameters["p"] = p;
      rep.parameters["levels"] = J;
      auto tower = grigorchuk::slnzp_tower(n, p, J);
      rep.results["tower"] = tower_summary(tower, D);
      rep.csv_tower = tower;
    } else if (sub == classify_cmd) {
      auto tower = io::read_tower(tower_path);
      auto W = parse_u64(window, "--window");
      rep.parameters["tower"] = tower_path;
      rep.parameters["window"] = W;
      rep.results["classification"] = classification_json(classify(tower, W), D, rep.warnings);
      rep.results["growth"] = rep.results["classification"]["growth"];
      rep.csv_tower = tower;
    } else if (sub == ave_cmd) {
      auto tower = io::read_tower(tower_path);
      std::size_t J = terms.empty() ? tower.size() : parse_u64(terms, "--terms");
      rep.parameters["tower"] = tower_path;
      rep.parameters["terms"] = J;
      Rational a = ave_partial(tower, J);
      Rational b = ave_partial_product_form(tower, J);
      rep.results["ave_partial"] = rational_json(a, D);
      rep.results["ave_partial_product_form"] = rational_json(b, D);
      rep.results["measure_telescope"] = rational_json(measure_telescope(tower, J), D);
      rep.results["recursion_check"] = recursion_check(tower.prefix(J));
      if (a != b) rep.warnings.push_back("sum and product forms disagree");
      rep.csv_tower = tower.prefix(J);
    } else if (sub == zeta_cmd) {
      std::vector<Integer> idx;
      if (!indices.empty() && !tower_path.empty()) {
        throw InvalidArgument("give either --indices or --tower, not both");
      }
      if (!tower_path.empty()) {
        auto tower = io::read_tower(tower_path);
        idx.assign(tower.d().begin(), tower.d().end());
        rep.parameters["tower"] = tower_path;
      } else {
        idx = parse_integer_list(indices);
        json shown = json::array();
        for (const auto& v : idx) shown.push_back(v.get_str());
        rep.parameters["indices"] = shown;
      }
      if (idx.empty()) throw InvalidArgument("zeta needs at least one index");
      double s = to_double(parse_rational(s_opt));
      std::size_t J = terms.empty() ? idx.size() : parse_u64(terms, "--terms");
      rep.parameters["s"] = s_opt;
      rep.parameters["terms"] = J;
      rep.results["value"] = zeta_partial(idx, s, J);
    } else if (sub == check_cmd) {
      auto tower = io::read_tower(tower_path);
      rep.parameters["tower"] = tower_path;
      auto diag = diagnose(tower);
      rep.results["consistent"] = diag.ok();
      rep.results["violations"] = diag.violations;
      rep.results["levels"] = tower.size();
      if (diag.ok()) {
        rep.results["is_prime_system"] = is_prime_system(tower);
        rep.results["is_nested"] = is_nested(tower);
        rep.results["measure_telescope"] =
            rational_json(measure_telescope(tower, tower.size()), D);
      }
      if (!c_opt.empty()) {
        Rational c = parse_rational(c_opt);
        rep.parameters["c"] = to_fraction_string(c);
        rep.results["gap_linear"] = gap_check_linear(tower, c);
      }
      if (!delta_opt.empty()) {
        Rational delta = parse_rational(delta_opt);
        rep.parameters["delta"] = to_fraction_string(delta);
        rep.results["gap_power"] = gap_check_power(tower, delta);
      }
      rep.csv_tower = tower;
    }
  } catch (const Error& e) {
    json doc{{"schema_version", kSchemaVersion},
             {"command", command},
             {"error", {{"type", e.kind()}, {"message", e.what()}}}};
    out << doc.dump(2) << '\n';
    if (!g.quiet) err << command << ": " << e.kind() << ": " << e.what() << '\n';
    return 1;
  }

  if (!g.quiet) {
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
  }
  if (g.csv) {
    if (rep.csv_tower) {
      out << io::tower_csv(*rep.csv_tower);
      return 0;
    }
    rep.warnings.push_back("--csv applies only to commands that produce a tower; printing JSON");
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", command},
           {"parameters", rep.parameters},
           {"results", rep.results},
           {"warnings", rep.warnings}};
  out << doc.dump(2) << '\n';
  return 0;
}

}  // namespace resavg::cli
