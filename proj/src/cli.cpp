#include "urnlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "urnlab/asymptotics.hpp"
#include "urnlab/exact_moments.hpp"
#include "urnlab/simulator.hpp"

namespace urnlab::cli {

namespace {

constexpr const char* kCsvVersion = "# urnlab-csv v1";

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Moments: return "moments";
    case Command::Limits: return "limits";
    case Command::Dist: return "dist";
    case Command::Simulate: return "simulate";
    case Command::Compare: return "compare";
  }
  return "?";
}

struct RawOptions {
  std::string model;
  std::int64_t m = 1;
  std::int64_t c = 1;
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> nb;
  std::string sampling = "without";
  std::int64_t n = 8;
  unsigned s_max = 4;
  std::int64_t runs = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::int64_t max_terms = std::int64_t{1} << 22;
  std::string format = "json";
  std::string output;
  unsigned workers = 1;
};

void add_common_options(CLI::App& sub, RawOptions& raw) {
  sub.add_option("--model", raw.model, "urn model: M, R, FM, FR, MC or NB")
      ->required()
      ->check(CLI::IsMember({"M", "R", "FM", "FR", "MC", "NB"}));
  sub.add_option("--m", raw.m, "balls drawn per step");
  sub.add_option("--c", raw.c, "balls added per observed ball");
  sub.add_option("--counts", raw.counts, "initial counts w,b[,...]")->required()->delimiter(',');
  sub.add_option("--nb", raw.nb, "non-balanced additions a,b (model NB)")->delimiter(',');
  sub.add_option("--sampling", raw.sampling, "NB sampling: with or without replacement")
      ->check(CLI::IsMember({"with", "without"}));
  sub.add_option("--format", raw.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--output", raw.output, "output file (default: standard output)");
}

std::size_t state_cap_from_environment() {
  const char* text = std::getenv("URNLAB_STATE_CAP");
  if (text == nullptr || *text == '\0') return kDefaultStateCap;
  char* end = nullptr;
  const auto value = std::strtoull(text, &end, 10);
  if (*end != '\0' || value == 0) {
    throw Error(ErrorCode::UsageError, "URNLAB_STATE_CAP must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Exact moments, limits and simulation of multi-draw urn models", "urnlab"};
  app.require_subcommand(1);
  RawOptions raw;

  auto* moments = app.add_subcommand("moments", "exact moment table E(W_n^s)");
  add_common_options(*moments, raw);
  moments->add_option("--n", raw.n, "largest time index");
  moments->add_option("--s-max", raw.s_max, "largest moment order");

  auto* limits = app.add_subcommand("limits", "normalized limit moments lim E(W_n^s)/n^s");
  add_common_options(*limits, raw);
  limits->add_option("--s-max", raw.s_max, "largest moment order");
  limits->add_option("--tol", raw.tol, "series tolerance");
  limits->add_option("--max-terms", raw.max_terms, "series term budget");

  auto* dist = app.add_subcommand("dist", "exact distribution at time n");
  add_common_options(*dist, raw);
  dist->add_option("--n", raw.n, "time index");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo moment estimates");
  add_common_options(*simulate, raw);
  simulate->add_option("--n", raw.n, "time index");
  simulate->add_option("--s-max", raw.s_max, "largest moment order");
  simulate->add_option("--runs", raw.runs, "number of runs");
  simulate->add_option("--seed", raw.seed, "master seed");
  simulate->add_option("--workers", raw.workers, "worker threads (0 = all cores)");

  auto* compare = app.add_subcommand("compare", "recurrence vs oracle vs simulation");
  add_common_options(*compare, raw);
  compare->add_option("--n", raw.n, "largest time index");
  compare->add_option("--s-max", raw.s_max, "largest moment order");
  compare->add_option("--runs", raw.runs, "number of runs");
  compare->add_option("--seed", raw.seed, "master seed");
  compare->add_option("--workers", raw.workers, "worker threads (0 = all cores)");

  // CLI11 consumes a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }

  RunConfig config;
  if (moments->parsed()) config.command = Command::Moments;
  if (limits->parsed()) {
    config.command = Command::Limits;
    if (limits->count("--s-max") == 0) raw.s_max = 2;
  }
  if (dist->parsed()) config.command = Command::Dist;
  if (simulate->parsed()) config.command = Command::Simulate;
  if (compare->parsed()) config.command = Command::Compare;

  try {
    config.spec.model = parse_model(raw.model);
    config.spec.m = raw.m;
    config.spec.c = raw.c;
    config.spec.initial_counts = raw.counts;
    if (!raw.nb.empty()) {
      if (raw.nb.size() != 2) throw Error(ErrorCode::BadParameter, "--nb expects a,b");
      config.spec.nb = NonBalancedParams{raw.nb[0], raw.nb[1]};
    }
    config.spec.nb_sampling =
        raw.sampling == "with" ? Sampling::WithReplacement : Sampling::WithoutReplacement;
    validate_spec(config.spec);
  } catch (const Error& e) {
    throw Error(ErrorCode::UsageError, std::string(to_string(e.code())) + ": " + e.what());
  }
  if (raw.n < 0) throw Error(ErrorCode::UsageError, "--n must be >= 0");
  if (raw.s_max < 1) throw Error(ErrorCode::UsageError, "--s-max must be >= 1");
  if (!(raw.tol > 0.0)) throw Error(ErrorCode::UsageError, "--tol must be positive");
  if (raw.runs < 1) throw Error(ErrorCode::UsageError, "--runs must be >= 1");
  if (raw.max_terms < 1) throw Error(ErrorCode::UsageError, "--max-terms must be >= 1");

  config.n = raw.n;
  config.s_max = raw.s_max;
  config.runs = raw.runs;
  config.seed = raw.seed;
  config.tol = raw.tol;
  config.max_terms = raw.max_terms;
  config.format = raw.format == "csv" ? Format::Csv : Format::Json;
  config.output = raw.output;
  config.workers = raw.workers;
  config.state_cap = state_cap_from_environment();
  return config;
}

namespace {

Json header(const RunConfig& config) {
  Json doc;
  doc["command"] = std::string(command_name(config.command));
  doc["spec"] = spec_to_json(config.spec);
  return doc;
}

bool has_recurrence(Model model) {
  return model == Model::M || model == Model::R || model == Model::MC;
}

Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

Json moments_document(const RunConfig& config) {
  Json doc = header(config);
  doc["n_max"] = config.n;
  doc["s_max"] = config.s_max;
  Json rows = Json::array();
  if (has_recurrence(config.spec.model)) {
    doc["source"] = "recurrence";
    const auto table = compute_moment_table(config.spec, config.n, config.s_max);
    for (std::int64_t n = 0; n <= config.n; ++n) {
      Json row = Json::array();
      for (unsigned s = 0; s <= config.s_max; ++s) row.push_back(rational_to_json(table.at(n, s)));
      rows.push_back(std::move(row));
    }
  } else {
    doc["source"] = "oracle";
    for (std::int64_t n = 0; n <= config.n; ++n) {
      const auto dist = exact_distribution(config.spec, n, config.state_cap);
      Json row = Json::array();
      for (unsigned s = 0; s <= config.s_max; ++s) row.push_back(rational_to_json(oracle_moment(dist, s)));
      rows.push_back(std::move(row));
    }
  }
  doc["moments"] = std::move(rows);
  return doc;
}

Json limits_document(const RunConfig& config) {
  Json doc = header(config);
  doc["tol"] = config.tol;
  const long double mc = static_cast<long double>(config.spec.m * config.spec.c);
  Json limits = Json::array();
  for (unsigned s = 1; s <= config.s_max; ++s) {
    const auto result = normalized_moment_limit(config.spec, s, config.tol, config.max_terms);
    Json entry;
    entry["s"] = s;
    entry["value"] = static_cast<double>(result.value);
    entry["exact"] = result.exact ? rational_to_json(*result.exact) : Json(nullptr);
    entry["limit_moment"] = static_cast<double>(result.value / std::pow(mc, static_cast<long double>(s)));
    entry["terms_used"] = result.terms_used;
    entry["tail_bound"] = static_cast<double>(result.tail_bound);
    entry["comparison_bound"] = static_cast<double>(result.comparison_bound);
    entry["prefactor"] = static_cast<double>(result.prefactor);
    entry["series"] = static_cast<double>(result.series);
    Json roots = Json::array();
    for (std::size_t i = 0; i < result.roots.roots.size(); ++i) {
      roots.push_back({{"re", static_cast<double>(result.roots.roots[i].real())},
                       {"im", static_cast<double>(result.roots.roots[i].imag())},
                       {"residual", static_cast<double>(result.roots.residuals[i])}});
    }
    entry["roots"] = std::move(roots);
    limits.push_back(std::move(entry));
  }
  doc["limits"] = std::move(limits);
  return doc;
}

Json dist_document(const RunConfig& config) {
  Json doc = header(config);
  doc["n"] = config.n;
  doc["distribution"] = distribution_to_json(exact_distribution(config.spec, config.n, config.state_cap));
  return doc;
}

Json simulate_document(const RunConfig& config) {
  Json doc = header(config);
  const auto summary =
      estimate_moments(config.spec, config.n, config.s_max, config.runs, config.seed, config.workers);
  doc["n"] = summary.n;
  doc["runs"] = summary.runs;
  doc["seed"] = summary.seed;
  Json moments = Json::array();
  for (unsigned s = 0; s <= config.s_max; ++s) {
    moments.push_back({{"s", s},
                       {"mean", summary.empirical_moments[s]},
                       {"se", summary.standard_errors[s]}});
  }
  doc["moments"] = std::move(moments);
  doc["martingale_mean"] =
      summary.martingale_mean ? Json(*summary.martingale_mean) : Json(nullptr);
  return doc;
}

Json compare_document(const RunConfig& config) {
  Json doc = header(config);
  doc["n_max"] = config.n;
  doc["s_max"] = config.s_max;
  doc["runs"] = config.runs;
  doc["seed"] = config.seed;
  const auto& spec = config.spec;
  std::optional<MomentTable> table;
  if (has_recurrence(spec.model)) table = compute_moment_table(spec, config.n, config.s_max);

  bool all_exact = true;
  bool all_within = true;
  Json rows = Json::array();
  for (std::int64_t n = 0; n <= config.n; ++n) {
    const auto dist = exact_distribution(spec, n, config.state_cap);
    const auto summary =
        estimate_moments(spec, n, config.s_max, config.runs, config.seed, config.workers);
    for (unsigned s = 0; s <= config.s_max; ++s) {
      const auto oracle = oracle_moment(dist, s);
      std::optional<BigRational> exact;
      if (table) {
        exact = table->at(n, s);
      } else if (is_friedman(spec.model) && s <= 1) {
        exact = s == 0 ? BigRational(1) : closed_form_expectation(spec, n);
      }
      Json row;
      row["n"] = n;
      row["s"] = s;
      row["recurrence"] = exact ? rational_to_json(*exact) : Json(nullptr);
      row["oracle"] = rational_to_json(oracle);
      if (exact) {
        const bool match = *exact == oracle;
        row["exact_match"] = match;
        all_exact = all_exact && match;
      } else {
        row["exact_match"] = nullptr;
      }
      const double mean = summary.empirical_moments[s];
      const double se = summary.standard_errors[s];
      const double difference = mean - to_double(oracle);
      double z = 0.0;
      if (se > 0.0) {
        z = difference / se;
      } else if (difference != 0.0) {
        z = std::copysign(INFINITY, difference);
      }
      const bool within = std::fabs(z) <= 4.0;
      all_within = all_within && within;
      row["simulation_mean"] = mean;
      row["simulation_se"] = se;
      row["z_score"] = number_or_null(z);
      row["within_band"] = within;
      rows.push_back(std::move(row));
    }
  }
  doc["rows"] = std::move(rows);
  doc["all_exact_match"] = all_exact;
  doc["all_within_band"] = all_within;
  return doc;
}

std::string csv_field(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!joined.empty()) joined += ';';
      joined += csv_field(item);
    }
    return joined;
  }
  return value.dump();
}

}  // namespace

Json build_document(const RunConfig& config) {
  switch (config.command) {
    case Command::Moments: return moments_document(config);
    case Command::Limits: return limits_document(config);
    case Command::Dist: return dist_document(config);
    case Command::Simulate: return simulate_document(config);
    case Command::Compare: return compare_document(config);
  }
  throw Error(ErrorCode::UsageError, "unknown command");
}

std::string render_csv(const RunConfig& config, const Json& doc) {
  std::ostringstream out;
  out << kCsvVersion << ' ' << command_name(config.command) << '\n';
  switch (config.command) {
    case Command::Moments: {
      out << "n,s,value\n";
      const auto& rows = doc.at("moments");
      for (std::size_t n = 0; n < rows.size(); ++n) {
        for (std::size_t s = 0; s < rows[n].size(); ++s) {
          out << n << ',' << s << ',' << csv_field(rows[n][s]) << '\n';
        }
      }
      break;
    }
    case Command::Limits: {
      out << "s,value,exact,limit_moment,terms_used,tail_bound,comparison_bound,prefactor,series,"
             "roots_re,roots_im\n";
      for (const auto& entry : doc.at("limits")) {
        Json re = Json::array();
        Json im = Json::array();
        for (const auto& root : entry.at("roots")) {
          re.push_back(root.at("re"));
          im.push_back(root.at("im"));
        }
        out << csv_field(entry.at("s")) << ',' << csv_field(entry.at("value")) << ','
            << csv_field(entry.at("exact")) << ',' << csv_field(entry.at("limit_moment")) << ','
            << csv_field(entry.at("terms_used")) << ',' << csv_field(entry.at("tail_bound")) << ','
            << csv_field(entry.at("comparison_bound")) << ',' << csv_field(entry.at("prefactor"))
            << ',' << csv_field(entry.at("series")) << ',' << csv_field(re) << ','
            << csv_field(im) << '\n';
      }
      break;
    }
    case Command::Dist: {
      out << "state,p\n";
      for (const auto& record : doc.at("distribution")) {
        out << csv_field(record.at("state")) << ',' << csv_field(record.at("p")) << '\n';
      }
      break;
    }
    case Command::Simulate: {
      out << "s,mean,se,martingale_mean\n";
      for (const auto& entry : doc.at("moments")) {
        out << csv_field(entry.at("s")) << ',' << csv_field(entry.at("mean")) << ','
            << csv_field(entry.at("se")) << ',' << csv_field(doc.at("martingale_mean")) << '\n';
      }
      break;
    }
    case Command::Compare: {
      out << "n,s,recurrence,oracle,exact_match,simulation_mean,simulation_se,z_score,within_band\n";
      for (const auto& row : doc.at("rows")) {
        out << csv_field(row.at("n")) << ',' << csv_field(row.at("s")) << ','
            << csv_field(row.at("recurrence")) << ',' << csv_field(row.at("oracle")) << ','
            << csv_field(row.at("exact_match")) << ',' << csv_field(row.at("simulation_mean"))
            << ',' << csv_field(row.at("simulation_se")) << ',' << csv_field(row.at("z_score"))
            << ',' << csv_field(row.at("within_band")) << '\n';
      }
      break;
    }
  }
  return out.str();
}

int execute(const RunConfig& config, std::ostream& out) {
  Json doc;
  try {
    doc = build_document(config);
  } catch (const Error& e) {
    out << error_to_json(e.code(), e.what()).dump(2) << '\n';
    return e.code() == ErrorCode::UsageError ? 2 : 1;
  }
  const std::string text =
      config.format == Format::Json ? doc.dump(2) + "\n" : render_csv(config, doc);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      out << error_to_json(ErrorCode::UsageError, "cannot open " + config.output).dump(2) << '\n';
      return 2;
    }
    file << text;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    out << error_to_json(e.code(), e.what()).dump(2) << '\n';
    return 2;
  }
  return execute(config, out);
}

}  // namespace urnlab::cli
