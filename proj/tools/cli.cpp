#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "krf/characters.hpp"
#include "krf/fermionic.hpp"
#include "krf/genseries.hpp"
#include "krf/qsystem.hpp"
#include "krf/sampling.hpp"
#include "krf/sce.hpp"

namespace krf::cli {

using nlohmann::json;

namespace {

json weight_json(const Weight& w) { return json(w.coords); }

std::string weight_cell(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

Weight parse_weight(const std::string& text, int rank) {
  std::vector<std::int64_t> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("weight: '" + item + "' is not an integer");
    }
  }
  if (static_cast<int>(coords.size()) != rank)
    throw std::invalid_argument("weight: expected " + std::to_string(rank) + " coordinates");
  return Weight(std::move(coords));
}

std::string format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("format must be json or csv");
}

json header(const JobSpec& job) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = job.subcommand.empty() ? job.command : job.command + " " + job.subcommand;
  j["algebra"] = job.algebra;
  return j;
}

Character tensor_character(const CartanData& c, const ModeMap& nu) {
  Character prod = Character::one(c.rank());
  for (const auto& [am, count] : nu.entries())
    for (std::int64_t i = 0; i < count; ++i) prod = prod * classical_kr_character(c, am.a, am.m);
  return prod;
}

// ---- qsys ----------------------------------------------------------------

JobResult run_qsys(const JobSpec& job, const CartanData& c) {
  JobResult res;
  res.document = header(job);
  res.document["level"] = job.level;
  const QTable table = fermionic_qtable(c, job.level);
  const QResidualReport report = check_qsystem(c, table);
  const std::vector<bool> conv = check_convergence(table);

  std::vector<TruncatedSeries> q1;
  for (int a = 0; a < c.rank(); ++a) q1.push_back(table.get({a, 1}));
  const QTable forward = q_forward(c, q1, job.level);
  bool forward_matches = true;
  for (const auto& [am, q] : table.entries()) forward_matches = forward_matches && forward.get(am) == q;

  bool conv_ok = true;
  for (bool b : conv) conv_ok = conv_ok && b;
  res.document["qsystem_ok"] = report.clean();
  res.document["checked"] = report.checked;
  res.document["convergence"] = conv;
  res.document["forward_matches"] = forward_matches;
  json residuals = json::array();
  for (const auto& [am, r] : report.residuals) residuals.push_back({{"a", am.a + 1}, {"m", am.m}, {"residual", r.to_json()}});
  res.document["residuals"] = residuals;
  json series = json::array();
  res.table.header = {"a", "m", "terms", "residual_zero"};
  for (const auto& [am, q] : table.entries()) {
    series.push_back({{"a", am.a + 1}, {"m", am.m}, {"terms", q.to_json()}});
    bool zero = true;
    for (const auto& [bad, r] : report.residuals) zero = zero && !(bad == am);
    res.table.rows.push_back({std::to_string(am.a + 1), std::to_string(am.m), std::to_string(q.num_terms()),
                              am.m <= c.t(am.a) * job.level ? (zero ? "true" : "false") : ""});
  }
  res.document["series"] = series;
  if (!report.clean() || !conv_ok || !forward_matches) res.exit = ExitCode::check_failed;
  return res;
}

// ---- mult ----------------------------------------------------------------

JobResult run_mult(const JobSpec& job, const CartanData& c) {
  JobResult res;
  res.document = header(job);
  res.document["nu"] = job.nu.to_json();
  res.table.header = {"weight", "r", "k"};
  std::vector<WeightMultiplicity> rows;
  if (job.all_weights || !job.weight) {
    rows = all_weight_multiplicities(c, job.nu);
  } else {
    const Weight& w = *job.weight;
    WeightMultiplicity row{w, weight_multiplicity_r(c, job.nu, w), std::nullopt};
    if (w.is_dominant()) row.k = weight_multiplicity_k(c, job.nu, w);
    rows.push_back(row);
  }
  json out = json::array();
  for (const auto& row : rows) {
    json j{{"weight", weight_json(row.weight)}, {"r", row.r.get_str()}};
    j["k"] = row.k ? json(row.k->get_str()) : json(nullptr);
    out.push_back(j);
    res.table.rows.push_back({weight_cell(row.weight), row.r.get_str(), row.k ? row.k->get_str() : ""});
  }
  res.document["multiplicities"] = out;

  if (job.check) {
    if (!c.id().is_classical()) throw std::invalid_argument("--check needs a classical algebra");
    const Character tensor = tensor_character(c, job.nu);
    bool ok = true;
    std::map<Weight, Integer> seen;
    for (const auto& row : rows) {
      seen[row.weight] = row.r;
      ok = ok && row.r == tensor.coefficient(row.weight);
    }
    if (job.all_weights || !job.weight) {
      for (const auto& [w, m] : tensor.terms()) ok = ok && seen.count(w) && seen[w] == m;
    }
    res.document["tensor_check"] = ok;
    if (!ok) res.exit = ExitCode::check_failed;
  }
  return res;
}

// ---- char ----------------------------------------------------------------

JobResult run_char(const JobSpec& job, const CartanData& c) {
  if (!c.id().is_classical()) throw std::invalid_argument("char: classical algebras only");
  JobResult res;
  res.document = header(job);
  res.document["nu"] = job.nu.to_json();
  const Character tensor = tensor_character(c, job.nu);
  const auto decomposition = decompose_into_irreducibles(c, tensor);
  std::map<Weight, Integer> k_counts;
  for (const auto& row : all_weight_multiplicities(c, job.nu))
    if (row.k && *row.k != 0) k_counts[row.weight] = *row.k;

  bool ok = true;
  json out = json::array();
  res.table.header = {"weight", "multiplicity", "k"};
  std::map<Weight, bool> keys;
  for (const auto& [w, m] : decomposition) keys[w] = true;
  for (const auto& [w, k] : k_counts) keys[w] = true;
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
    const Weight& w = it->first;
    const Integer m = decomposition.count(w) ? decomposition.at(w) : Integer(0);
    const Integer k = k_counts.count(w) ? k_counts.at(w) : Integer(0);
    ok = ok && m == k;
    out.push_back({{"weight", weight_json(w)}, {"multiplicity", m.get_str()}, {"k", k.get_str()}});
    res.table.rows.push_back({weight_cell(w), m.get_str(), k.get_str()});
  }
  Integer dim = 0;
  for (const auto& [w, m] : tensor.terms()) dim += m;
  res.document["decomposition"] = out;
  res.document["dimension"] = dim.get_str();
  res.document["ok"] = ok;
  if (!ok) res.exit = ExitCode::check_failed;
  return res;
}

// ---- sce count -----------------------------------------------------------

JobResult run_sce(const JobSpec& job, const CartanData& c) {
  if (job.subcommand != "count") throw std::invalid_argument("sce: unknown subcommand '" + job.subcommand + "'");
  if (!job.pattern) throw std::invalid_argument("sce count: --pattern is required");
  JobResult res;
  res.document = header(job);
  const SCEInstance inst = build_sce(c, job.nu, *job.pattern);
  const Integer det = bareiss_determinant(inst.a);
  const MobiusCount mob = count_offdiagonal_mobius(inst);
  const Integer r = r_number(c, job.nu, *job.pattern).value;
  Integer denom = 1;
  for (const auto& g : inst.groups) denom *= factorial(static_cast<unsigned>(g.count));

  json brute = nullptr;
  std::string brute_cell;
  bool ok = !mob.hypothesis_ok || mob.value == Rational(r);
  if (det != 0 && abs(det) <= job.max_det) {
    const auto off = filter_offdiagonal(inst, enumerate_solutions_bruteforce(inst, job.max_det));
    Rational count(Integer(static_cast<long>(off.size())), denom);
    count.canonicalize();
    brute = rational_string(count);
    brute_cell = rational_string(count);
    if (mob.hypothesis_ok) ok = ok && count == mob.value;
  }
  res.document["nu"] = job.nu.to_json();
  res.document["pattern"] = job.pattern->to_json();
  res.document["detA"] = det.get_str();
  res.document["mobius_count"] = rational_string(mob.value);
  res.document["bruteforce_count"] = brute;
  res.document["R"] = r.get_str();
  res.document["p_nonneg"] = mob.hypothesis_ok;
  res.document["order_ok"] = check_order_condition(c, job.nu, *job.pattern);
  res.document["counts_agree"] = ok;
  res.table.header = {"detA", "mobius_count", "bruteforce_count", "R", "order_ok", "p_nonneg"};
  res.table.rows.push_back({det.get_str(), rational_string(mob.value), brute_cell, r.get_str(),
                            res.document["order_ok"].get<bool>() ? "true" : "false",
                            mob.hypothesis_ok ? "true" : "false"});
  if (!ok) res.exit = ExitCode::check_failed;
  return res;
}

// ---- verify --------------------------------------------------------------

struct NamedCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

void add_report(std::vector<NamedCheck>& out, const std::string& prefix, const GenseriesReport& report) {
  for (const auto& c : report.checks)
    out.push_back({prefix + ": " + c.name, c.ok, c.ok ? std::to_string(c.compared) + " coefficients" : c.first_mismatch});
}

std::vector<Rational> random_beta(Rng& rng, int n) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 7);
  std::vector<Rational> beta;
  for (int i = 0; i < n; ++i) beta.push_back(make_rational(num(rng), den(rng)));
  return beta;
}

std::vector<NamedCheck> genseries_checks(const CartanData& c, const ModeMap& nu, int level, int degree, Rng& rng) {
  std::vector<NamedCheck> out;
  const StringVariables vars = string_variables(c, level, degree);
  add_report(out, "generating", verify_generating_identities(c, nu, level, degree));
  add_report(out, "round trip", verify_round_trip(c, level, degree));
  add_report(out, "z Jacobian", verify_z_jacobian(c, level, degree));
  add_report(out, "binomial expansion", verify_binomial_expansion(c, level, degree, random_beta(rng, vars.size())));
  return out;
}

std::vector<NamedCheck> all_checks(const JobSpec& job, const CartanData& c, Rng& rng) {
  std::vector<NamedCheck> out;
  const int l = job.level;

  const BIdentityReport b = verify_b_identities(c, 12);
  out.push_back({"B-function identities", b.clean(), b.clean() ? std::to_string(b.checked) + " cases" : b.failures.front()});

  const QTable table = fermionic_qtable(c, l);
  const QResidualReport q = check_qsystem(c, table);
  bool conv = true;
  for (bool x : check_convergence(table)) conv = conv && x;
  out.push_back({"Q-system relation", q.clean(), std::to_string(q.checked) + " relations"});
  out.push_back({"Q-system convergence", conv, ""});

  if (c.id().is_classical()) {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < c.rank() && ok; ++a) {
      for (int m = 1; m <= c.t(a) * l && ok; ++m) {
        Weight top = Weight::zero(c.rank());
        top.coords[a] = m;
        const TruncatedSeries embedded = embed_weight(c, classical_kr_character(c, a, m), top, table.truncation());
        if (!(embedded == table.get({a, m}))) {
          ok = false;
          detail = "mismatch at (" + std::to_string(a + 1) + "," + std::to_string(m) + ")";
        }
      }
    }
    out.push_back({"classical KR characters", ok, detail});
  }

  {
    bool ok = true;
    int samples = 0;
    for (int i = 0; i < 40; ++i) {
      const ModeMap nu = random_mode_map(rng, c.rank(), 3, 3, 3);
      const ModeMap n = random_mode_map(rng, c.rank(), 3, 2, 2);
      if (n.support().size() > 12) continue;
      ++samples;
      ok = ok && r_number_alt(c, nu, n) == r_number(c, nu, n).value;
    }
    out.push_back({"R subset expansion", ok, std::to_string(samples) + " samples"});
  }

  {
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      const ModeMap nu = random_mode_map(rng, c.rank(), c.t_max() * l, 1, 1);
      const ModeMap nu2 = random_mode_map(rng, c.rank(), c.t_max() * l, 1, 1);
      ok = ok && mul(r_series(c, nu, l), r_series(c, nu2, l)) == r_series(c, nu + nu2, l);
    }
    out.push_back({"R factorization", ok, "4 pairs"});
  }

  {
    bool ok = true;
    int done = 0;
    for (int i = 0; i < 10; ++i) {
      const auto sc = random_sce_case(rng, c, 4, Integer(10000), 2000);
      if (!sc) continue;
      ++done;
      const SCEInstance inst = build_sce(c, sc->nu, sc->pattern);
      const MobiusCount mob = count_offdiagonal_mobius(inst);
      Integer denom = 1;
      for (const auto& g : inst.groups) denom *= factorial(static_cast<unsigned>(g.count));
      Rational brute(Integer(static_cast<long>(filter_offdiagonal(inst, enumerate_solutions_bruteforce(inst)).size())),
                     denom);
      brute.canonicalize();
      ok = ok && brute == mob.value && mob.value == Rational(r_number(c, sc->nu, sc->pattern).value);
    }
    out.push_back({"SCE three-way count", ok, std::to_string(done) + " instances"});
  }

  {
    const GenseriesReport k0 = verify_k0_identities(c, l);
    add_report(out, k0.experimental ? "K0 (experimental)" : "K0", k0);
  }

  // The w-space identities at the largest degree the default limits allow.
  for (int level = 1; level <= l; ++level) {
    const int vars = static_cast<int>(level_set(c, level).size());
    if (vars > GenseriesLimits{}.max_variables) break;
    const int degree = vars <= 2 ? 4 : (vars <= 4 ? 3 : 2);
    for (auto& chk : genseries_checks(c, job.nu, level, degree, rng)) {
      chk.name = "level " + std::to_string(level) + " " + chk.name;
      out.push_back(std::move(chk));
    }
  }
  return out;
}

JobResult run_verify(JobSpec job, const CartanData& c) {
  Rng rng(job.seed);
  // Without explicit data, every fundamental KR module once.
  if (job.nu.is_zero())
    for (int a = 0; a < c.rank(); ++a) job.nu += ModeMap::unit({a, 1});
  std::vector<NamedCheck> checks;
  if (job.subcommand == "genseries") {
    checks = genseries_checks(c, job.nu, job.level, job.degree, rng);
  } else if (job.subcommand == "all") {
    checks = all_checks(job, c, rng);
  } else {
    throw std::invalid_argument("verify: unknown subcommand '" + job.subcommand + "'");
  }
  JobResult res;
  res.document = header(job);
  res.document["level"] = job.level;
  res.document["seed"] = job.seed;
  res.document["nu"] = job.nu.to_json();
  if (job.subcommand == "genseries") res.document["degree"] = job.degree;
  json arr = json::array();
  bool ok = true;
  res.table.header = {"check", "ok", "detail"};
  for (const auto& chk : checks) {
    ok = ok && chk.ok;
    arr.push_back({{"name", chk.name}, {"ok", chk.ok}, {"detail", chk.detail}});
    res.table.rows.push_back({chk.name, chk.ok ? "true" : "false", chk.detail});
  }
  res.document["checks"] = arr;
  res.document["ok"] = ok;
  if (!ok) res.exit = ExitCode::check_failed;
  return res;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

void JobSpec::validate() const {
  if (algebra.empty()) throw std::invalid_argument("an algebra is required");
  const CartanData c = build_cartan(algebra);
  static const std::vector<std::string> commands{"qsys", "mult", "char", "sce", "verify"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw std::invalid_argument("unknown command '" + command + "'");
  if (level < 1 || level > 10) throw std::invalid_argument("level must be in [1, 10]");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (max_det < 1) throw std::invalid_argument("max_det must be positive");
  auto check_modes = [&](const ModeMap& n, const char* what) {
    for (const auto& [am, v] : n.entries()) {
      if (v <= 0) throw std::invalid_argument(std::string(what) + " entries must be positive");
      if (am.a < 0 || am.a >= c.rank() || am.m < 1) throw std::invalid_argument(std::string(what) + " index out of range");
    }
  };
  check_modes(nu, "nu");
  if (pattern) check_modes(*pattern, "pattern");
  if ((command == "mult" || command == "char") && nu.is_zero()) throw std::invalid_argument(command + ": --nu is required");
  if (weight && static_cast<int>(weight->size()) != c.rank()) throw std::invalid_argument("weight has the wrong rank");
}

JobSpec job_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("job: expected a JSON object");
  static const std::vector<std::string> known{"algebra", "command", "subcommand", "nu",          "pattern", "level", "degree",
                                              "format",  "seed",    "max_det",    "all_weights", "weight",  "check"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw std::invalid_argument("job: unknown field '" + key + "'");
  auto need = [&](const char* key, json::value_t type) -> const json* {
    if (!j.contains(key)) return nullptr;
    const json& v = j.at(key);
    const bool number_ok = type == json::value_t::number_integer &&
                           (v.type() == json::value_t::number_integer || v.type() == json::value_t::number_unsigned);
    if (v.type() != type && !number_ok) throw std::invalid_argument(std::string("job: field '") + key + "' has the wrong type");
    return &v;
  };
  JobSpec job;
  if (auto v = need("algebra", json::value_t::string)) job.algebra = v->get<std::string>();
  else throw std::invalid_argument("job: 'algebra' is required");
  if (auto v = need("command", json::value_t::string)) job.command = v->get<std::string>();
  else throw std::invalid_argument("job: 'command' is required");
  if (auto v = need("subcommand", json::value_t::string)) job.subcommand = v->get<std::string>();
  const int rank = build_cartan(job.algebra).rank();
  if (j.contains("nu")) job.nu = ModeMap::from_json(j.at("nu"), rank);
  if (j.contains("pattern")) job.pattern = ModeMap::from_json(j.at("pattern"), rank);
  if (auto v = need("level", json::value_t::number_integer)) job.level = v->get<int>();
  if (auto v = need("degree", json::value_t::number_integer)) job.degree = v->get<int>();
  if (auto v = need("format", json::value_t::string)) job.format = parse_format(v->get<std::string>());
  if (auto v = need("seed", json::value_t::number_integer)) job.seed = v->get<std::uint64_t>();
  if (j.contains("max_det")) {
    // Integer, or a decimal string for values beyond 64 bits.
    const json& v = j.at("max_det");
    const bool ok = v.is_number_integer() ? (job.max_det = Integer(v.get<long>()), true)
                    : v.is_string()        ? job.max_det.set_str(v.get<std::string>(), 10) == 0
                                           : false;
    if (!ok) throw std::invalid_argument("job: field 'max_det' has the wrong type");
  }
  if (auto v = need("all_weights", json::value_t::boolean)) job.all_weights = v->get<bool>();
  if (auto v = need("check", json::value_t::boolean)) job.check = v->get<bool>();
  if (auto v = need("weight", json::value_t::array)) {
    std::vector<std::int64_t> coords;
    for (const auto& x : *v) {
      if (!x.is_number_integer()) throw std::invalid_argument("job: weight coordinates must be integers");
      coords.push_back(x.get<std::int64_t>());
    }
    job.weight = Weight(std::move(coords));
  }
  job.validate();
  return job;
}

json job_to_json(const JobSpec& job) {
  json j{{"algebra", job.algebra},
         {"command", job.command},
         {"level", job.level},
         {"degree", job.degree},
         {"format", format_name(job.format)},
         {"seed", job.seed},
         {"max_det", job.max_det.get_str()},
         {"all_weights", job.all_weights},
         {"check", job.check},
         {"nu", job.nu.to_json()}};
  if (!job.subcommand.empty()) j["subcommand"] = job.subcommand;
  if (job.pattern) j["pattern"] = job.pattern->to_json();
  if (job.weight) j["weight"] = job.weight->coords;
  return j;
}

JobResult run_job(const JobSpec& job) {
  job.validate();
  const CartanData c = build_cartan(job.algebra);
  if (job.command == "qsys") return run_qsys(job, c);
  if (job.command == "mult") return run_mult(job, c);
  if (job.command == "char") return run_char(job, c);
  if (job.command == "sce") return run_sce(job, c);
  return run_verify(job, c);
}

void write_result(const JobResult& result, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << result.document.dump(2) << "\n";
    return;
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
    out << "\n";
  };
  line(result.table.header);
  for (const auto& row : result.table.rows) line(row);
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kirillov-Reshetikhin characters, fermionic counting and string center equations"};
  app.set_config("--config", "", "TOML file whose keys mirror the command-line flags");
  app.require_subcommand(1);

  std::string algebra_flag, algebra_pos, nu_text, pattern_text, weight_text, format_text = "json", output_path, job_path;
  JobSpec job;
  long max_det = 1000000;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--algebra", algebra_flag, "Algebra such as A2, B3, G2");
    sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", job.seed, "Seed for randomized checks");
    sub->add_option("--output", output_path, "Write the result to this file instead of stdout");
  };

  CLI::App* qsys = app.add_subcommand("qsys", "Fermionic Q-series and the Q-system check");
  common(qsys);
  qsys->add_option("ALGEBRA", algebra_pos, "Algebra (alternative to --algebra)");
  qsys->add_option("--level", job.level, "Truncation level l");

  CLI::App* mult = app.add_subcommand("mult", "Weight multiplicities from the counting numbers");
  common(mult);
  mult->add_option("ALGEBRA", algebra_pos, "Algebra (alternative to --algebra)");
  mult->add_option("--nu", nu_text, "Quantum space data a:m:mult,... (a is 1-based)")->required();
  mult->add_flag("--all-weights", job.all_weights, "Every weight of the module");
  mult->add_option("--weight", weight_text, "A single weight, comma-separated fundamental-weight coordinates");
  mult->add_flag("--check", job.check, "Compare with the tensor product of classical KR characters");

  CLI::App* chr = app.add_subcommand("char", "Irreducible decomposition of a tensor product of KR modules");
  common(chr);
  chr->add_option("ALGEBRA", algebra_pos, "Algebra (alternative to --algebra)");
  chr->add_option("--nu", nu_text, "Quantum space data a:m:mult,...")->required();

  CLI::App* sce = app.add_subcommand("sce", "String center equation");
  sce->require_subcommand(1);
  CLI::App* count = sce->add_subcommand("count", "Off-diagonal solution counts");
  common(count);
  count->add_option("ALGEBRA", algebra_pos, "Algebra (alternative to --algebra)");
  count->add_option("--nu", nu_text, "Quantum space data a:m:mult,...")->required();
  count->add_option("--pattern", pattern_text, "String pattern a:m:mult,...")->required();
  count->add_option("--max-det", max_det, "Refuse brute-force enumeration above this |det A|");

  CLI::App* verify = app.add_subcommand("verify", "Identity checks");
  verify->require_subcommand(1);
  CLI::App* vgen = verify->add_subcommand("genseries", "Generating-series identities");
  CLI::App* vall = verify->add_subcommand("all", "Every identity check at desk scale");
  for (CLI::App* sub : {vgen, vall}) {
    common(sub);
    sub->add_option("ALGEBRA", algebra_pos, "Algebra (alternative to --algebra)");
    sub->add_option("--level", job.level, "Truncation level l");
    sub->add_option("--nu", nu_text, "Quantum space data a:m:mult,...");
  }
  vgen->add_option("--degree", job.degree, "Total degree cutoff");

  CLI::App* run = app.add_subcommand("run", "Run a JSON job file");
  run->add_option("job", job_path, "Job file")->required();
  run->add_option("--output", output_path, "Write the result to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::invalid_input);
  }

  try {
    if (run->parsed()) {
      std::ifstream in(job_path);
      if (!in) throw std::invalid_argument("cannot read job file " + job_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("job file is not valid JSON: ") + e.what());
      }
      job = job_from_json(j);
    } else {
      if (!algebra_flag.empty() && !algebra_pos.empty() && algebra_flag != algebra_pos)
        throw std::invalid_argument("conflicting algebra arguments");
      job.algebra = algebra_flag.empty() ? algebra_pos : algebra_flag;
      if (job.algebra.empty()) throw std::invalid_argument("an algebra is required");
      const int rank = build_cartan(job.algebra).rank();
      job.format = parse_format(format_text);
      job.max_det = Integer(max_det);
      if (!nu_text.empty()) job.nu = ModeMap::parse_compact(nu_text, rank);
      if (!pattern_text.empty()) job.pattern = ModeMap::parse_compact(pattern_text, rank);
      if (!weight_text.empty()) job.weight = parse_weight(weight_text, rank);
      if (qsys->parsed()) job.command = "qsys";
      if (mult->parsed()) job.command = "mult";
      if (chr->parsed()) job.command = "char";
      if (count->parsed()) job.command = "sce", job.subcommand = "count";
      if (vgen->parsed()) job.command = "verify", job.subcommand = "genseries";
      if (vall->parsed()) job.command = "verify", job.subcommand = "all";
    }
    const JobResult result = run_job(job);
    if (output_path.empty()) {
      write_result(result, job.format, out);
    } else {
      std::ofstream file(output_path);
      if (!file) throw std::invalid_argument("cannot write " + output_path);
      write_result(result, job.format, file);
    }
    if (result.exit == ExitCode::check_failed) err << "identity check failed\n";
    return static_cast<int>(result.exit);
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return static_cast<int>(ExitCode::check_failed);
  }
}

}  // namespace krf::cli
