#include "rootmax/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "rootmax/correlations.hpp"
#include "rootmax/deviations.hpp"
#include "rootmax/parallel.hpp"
#include "rootmax/polyroots.hpp"
#include "rootmax/rmt.hpp"
#include "rootmax/symfunc.hpp"
#include "rootmax/version.hpp"

namespace rootmax {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<long long>(c)) {
    return std::to_string(std::get<long long>(c));
  }
  if (std::holds_alternative<double>(c)) {
    return format_double(std::get<double>(c));
  }
  return std::get<std::string>(c);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

long long to_int(const std::string& s, const char* what) {
  long long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + s +
                                "'");
  }
  return v;
}

double to_real(const std::string& s, const char* what) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string(what) + ": bad number '" + s +
                                "'");
  }
  return v;
}

SampleMethod to_sampler(const std::string& s) {
  if (s == "truncation") return SampleMethod::truncation;
  if (s == "dpp") return SampleMethod::dpp;
  throw std::invalid_argument("sampler must be 'truncation' or 'dpp'");
}

// Allowed (and required) parameter keys per command; anything else is
// rejected so a config echo can never silently drift.
struct CommandSpec {
  std::set<std::string> required;
  std::map<std::string, std::string> optional;  // with defaults
};

const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table = {
      {"sample-roots", {{"n", "samples"}, {}}},
      {"cdf-fluctuations", {{"n", "samples"}, {{"grid", "1.05:3:0.05"}}}},
      {"eval-limit-cdf", {{"grid"}, {}}},
      {"eval-F", {{"y"}, {{"k-max", "6"}, {"method", "both"}}}},
      {"quadrature-J", {{"k", "y"}, {{"nodes", "64"}}}},
      {"series-J", {{"k", "y"}, {{"cut", "48"}}}},
      {"ldp", {{"n", "y", "samples"}, {{"sampler", "truncation"}}}},
      {"direct-mc", {{"n", "y", "samples"}, {}}},
      {"moments", {{"n", "u", "samples"}, {{"sampler", "truncation"}}}},
      {"dpp-sample", {{"n", "samples"}, {{"method", "dpp"}}}},
      {"correlations", {{"z"}, {{"order", "limit"}}}},
      {"fredholm", {{"t"}, {{"radial", "64"}, {"angular", "128"}}}},
      {"gap-series",
       {{"y"}, {{"k-max", "4"}, {"mc-points", "200000"}, {"order", "limit"}}}},
      {"selftest", {{}, {{"quick", "1"}}}},
  };
  return table;
}

std::map<std::string, std::string> resolve_params(
    const ExperimentConfig& config) {
  auto it = command_table().find(config.command);
  if (it == command_table().end()) {
    throw std::invalid_argument("unknown command '" + config.command + "'");
  }
  const CommandSpec& spec = it->second;
  std::map<std::string, std::string> resolved = spec.optional;
  for (const auto& [key, value] : config.params) {
    if (!spec.required.contains(key) && !spec.optional.contains(key)) {
      throw std::invalid_argument("unknown parameter '" + key +
                                  "' for command '" + config.command + "'");
    }
    resolved[key] = value;
  }
  for (const std::string& key : spec.required) {
    if (!resolved.contains(key)) {
      throw std::invalid_argument("missing required parameter '" + key +
                                  "' for command '" + config.command + "'");
    }
  }
  return resolved;
}

cvec parse_complex_list(const std::string& text) {
  cvec out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sep = text.find(';', pos);
    if (sep == std::string::npos) sep = text.size();
    out.push_back(parse_complex(text.substr(pos, sep - pos)));
    pos = sep + 1;
  }
  require(!out.empty(), "empty complex list");
  return out;
}

void set_meta(ResultTable& table, const ExperimentConfig& config,
              const std::map<std::string, std::string>& resolved) {
  table.meta.emplace_back("version", kVersion);
  table.meta.emplace_back("command", config.command);
  table.meta.emplace_back("seed", std::to_string(config.seed));
  table.meta.emplace_back("format", config.format);
  for (const auto& [k, v] : resolved) {
    table.meta.emplace_back("param." + k, v);
  }
}

// Collects per-sample statistics of the Kac maximum root modulus, in chunk
// order so the output is independent of the thread count.
std::vector<double> rho_samples(std::size_t n, std::size_t samples,
                                const RngStream& rng) {
  auto chunk_fn = [&](std::size_t c) {
    RngStream local = rng.child(c);
    std::vector<double> vals;
    vals.reserve(chunk_size(c, samples));
    for (std::size_t s = 0; s < chunk_size(c, samples); ++s) {
      Polynomial p = sample_kac(n, local);
      vals.push_back(max_modulus(find_roots(p, kRootTolDefault, 400)));
    }
    return vals;
  };
  auto partials = run_chunks<std::vector<double>>(chunk_count(samples),
                                                  chunk_fn, true);
  std::vector<double> all;
  all.reserve(samples);
  for (auto& p : partials) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace

std::string ExperimentConfig::serialize() const {
  std::ostringstream text;
  text << "command=" << command << "\n";
  text << "seed=" << seed << "\n";
  text << "format=" << format << "\n";
  if (!out.empty()) text << "out=" << out << "\n";
  for (const auto& [k, v] : params) text << "param." << k << "=" << v << "\n";
  return text.str();
}

ExperimentConfig ExperimentConfig::deserialize(const std::string& text) {
  ExperimentConfig config;
  config.format = "csv";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    require(eq != std::string::npos, "config: expected key=value lines");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "command") {
      config.command = value;
    } else if (key == "seed") {
      config.seed = std::uint64_t(to_int(value, "seed"));
    } else if (key == "format") {
      config.format = value;
    } else if (key == "out") {
      config.out = value;
    } else if (key.starts_with("param.")) {
      config.params[key.substr(6)] = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  require(!config.command.empty(), "config: missing command");
  require(config.format == "csv" || config.format == "json",
          "config: format must be csv or json");
  return config;
}

void ResultTable::add_row(std::vector<Cell> row) {
  require(row.size() == columns.size(), "ResultTable: row width mismatch");
  rows.push_back(std::move(row));
}

std::vector<double> parse_grid(const std::string& spec) {
  std::size_t c1 = spec.find(':');
  if (c1 == std::string::npos) {
    return {to_real(spec, "grid")};
  }
  std::size_t c2 = spec.find(':', c1 + 1);
  require(c2 != std::string::npos, "grid: expected start:stop:step");
  double start = to_real(spec.substr(0, c1), "grid start");
  double stop = to_real(spec.substr(c1 + 1, c2 - c1 - 1), "grid stop");
  double step = to_real(spec.substr(c2 + 1), "grid step");
  require(step > 0.0, "grid: step must be positive");
  require(stop >= start, "grid: stop must be >= start");
  long long count = (long long)(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(std::size_t(count) + 1);
  for (long long i = 0; i <= count; ++i) {
    out.push_back(start + double(i) * step);
  }
  return out;
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  require(!s.empty(), "parse_complex: empty");
  bool has_i = s.back() == 'i' || s.back() == 'j';

  auto to_num = [](std::string part, const char* what) {
    if (part.empty() || part == "+") part = "1";
    if (part == "-") part = "-1";
    if (part.size() > 1 && part[0] == '+') part.erase(0, 1);
    return to_real(part, what);
  };

  if (!has_i) return cplx(to_real(s, "parse_complex"), 0.0);
  s.pop_back();
  // Split at the last +/- that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    return cplx(0.0, to_num(s, "parse_complex imag"));
  }
  double re = to_real(s.substr(0, split), "parse_complex real");
  std::string imag_part = s.substr(split);
  double im = to_num(imag_part, "parse_complex imag");
  return cplx(re, im);
}

std::string render_csv(const ResultTable& table) {
  std::ostringstream out;
  for (const auto& [k, v] : table.meta) out << "# " << k << "=" << v << "\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out << ",";
    out << csv_quote(table.columns[j]);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ",";
      out << csv_quote(format_cell(row[j]));
    }
    out << "\n";
  }
  return out.str();
}

std::string render_json(const ResultTable& table) {
  std::ostringstream out;
  out << "{\n  \"meta\": {";
  for (std::size_t i = 0; i < table.meta.size(); ++i) {
    if (i) out << ",";
    out << "\n    " << json_quote(table.meta[i].first) << ": "
        << json_quote(table.meta[i].second);
  }
  out << "\n  },\n  \"columns\": [";
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out << ", ";
    out << json_quote(table.columns[j]);
  }
  out << "],\n  \"rows\": [";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (i) out << ",";
    out << "\n    [";
    const auto& row = table.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ", ";
      if (std::holds_alternative<std::string>(row[j])) {
        out << json_quote(std::get<std::string>(row[j]));
      } else {
        out << format_cell(row[j]);
      }
    }
    out << "]";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string render(const ResultTable& table, const std::string& format) {
  if (format == "csv") return render_csv(table);
  if (format == "json") return render_json(table);
  throw std::invalid_argument("render: format must be csv or json");
}

ResultTable run(const ExperimentConfig& config) {
  auto params = resolve_params(config);
  RngStream rng(config.seed, 0);
  ResultTable table;
  set_meta(table, config, params);
  const std::string& cmd = config.command;

  if (cmd == "sample-roots") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    table.columns = {"sample", "index", "re", "im", "modulus", "residual"};
    for (std::size_t s = 0; s < samples; ++s) {
      RngStream local = rng.child(s);
      Polynomial p = sample_kac(n, local);
      RootSet roots = find_roots(p, kRootTolDefault, 400);
      for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        table.add_row({(long long)s, (long long)i, roots.roots[i].real(),
                       roots.roots[i].imag(), std::abs(roots.roots[i]),
                       roots.residuals[i]});
      }
    }
  } else if (cmd == "cdf-fluctuations") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    std::vector<double> grid = parse_grid(params.at("grid"));
    std::vector<double> rho = rho_samples(n, samples, rng);
    auto cdf = empirical_cdf(rho, grid);
    table.columns = {"y", "empirical", "limit", "abs_diff"};
    for (const auto& [y, emp] : cdf) {
      double lim = limit_cdf(y);
      table.add_row({y, emp, lim, std::abs(emp - lim)});
    }
  } else if (cmd == "eval-limit-cdf") {
    table.columns = {"y", "cdf"};
    for (double y : parse_grid(params.at("grid"))) {
      table.add_row({y, limit_cdf(y)});
    }
  } else if (cmd == "eval-F") {
    double y = to_real(params.at("y"), "y");
    int kmax = int(to_int(params.at("k-max"), "k-max"));
    const std::string& m = params.at("method");
    FMethod method = m == "quadrature" ? FMethod::quadrature
                     : m == "series"   ? FMethod::series
                     : m == "both"     ? FMethod::both
                                       : throw std::invalid_argument(
                                             "method must be quadrature, "
                                             "series or both");
    FValue f = eval_F(y, kmax, method);
    table.columns = {"k", "contribution", "running_total"};
    double running = 0.0;
    for (std::size_t k = 0; k < f.contributions.size(); ++k) {
      running += f.contributions[k];
      table.add_row({(long long)k, f.contributions[k], running});
    }
    table.meta.emplace_back("total", format_double(f.value));
    table.meta.emplace_back("tail_estimate", format_double(f.tail_estimate));
  } else if (cmd == "quadrature-J") {
    int k = int(to_int(params.at("k"), "k"));
    double y = to_real(params.at("y"), "y");
    std::size_t nodes = std::size_t(to_int(params.at("nodes"), "nodes"));
    table.columns = {"k", "y", "nodes", "value"};
    table.add_row({(long long)k, y, (long long)nodes,
                   quadrature_J(k, y, nodes)});
  } else if (cmd == "series-J") {
    int k = int(to_int(params.at("k"), "k"));
    double y = to_real(params.at("y"), "y");
    long long cut = to_int(params.at("cut"), "cut");
    SeriesJ s = cauchy_series_J(k, y, cut);
    table.columns = {"k", "y", "cut", "value", "tail_bound"};
    table.add_row({(long long)k, y, cut, s.value, s.tail_bound});
  } else if (cmd == "ldp") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    double y = to_real(params.at("y"), "y");
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    LdpEstimate est =
        ldp_estimator(n, y, samples, rng, to_sampler(params.at("sampler")));
    table.columns = {"n",       "y",          "samples",   "p_hat",
                     "std_error", "rescaled", "log_p_hat", "log_std_error",
                     "log_rescaled"};
    table.add_row({(long long)n, y, (long long)samples, est.p_hat,
                   est.std_error, est.rescaled, est.log_p_hat,
                   est.log_std_error, est.log_rescaled});
  } else if (cmd == "direct-mc") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    double y = to_real(params.at("y"), "y");
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    McEstimate est = direct_mc_prob(n, y, samples, rng);
    table.columns = {"n", "y", "samples", "p_hat", "std_error"};
    table.add_row({(long long)n, y, (long long)samples, est.value,
                   est.std_error});
  } else if (cmd == "moments") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    cvec u = parse_complex_list(params.at("u"));
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    double formula = moment_formula(n, u);
    McEstimate mc =
        mc_moment(n, u, samples, rng, to_sampler(params.at("sampler")));
    double z = (mc.std_error > 0.0) ? (mc.value - formula) / mc.std_error
                                    : 0.0;
    table.columns = {"formula", "mc", "std_error", "z_score"};
    table.add_row({formula, mc.value, mc.std_error, z});
  } else if (cmd == "dpp-sample") {
    std::size_t n = std::size_t(to_int(params.at("n"), "n"));
    std::size_t samples = std::size_t(to_int(params.at("samples"), "samples"));
    SampleMethod method = to_sampler(params.at("method"));
    table.columns = {"sample", "index", "re", "im", "modulus"};
    for (std::size_t s = 0; s < samples; ++s) {
      RngStream local = rng.child(s);
      EnsembleSample es = method == SampleMethod::truncation
                              ? sample_truncation(n, local)
                              : sample_dpp(n, local);
      for (std::size_t i = 0; i < es.points.size(); ++i) {
        table.add_row({(long long)s, (long long)i, es.points[i].real(),
                       es.points[i].imag(), std::abs(es.points[i])});
      }
    }
  } else if (cmd == "correlations") {
    cvec z = parse_complex_list(params.at("z"));
    const std::string& order = params.at("order");
    table.columns = {"order", "k", "rho"};
    if (order == "limit") {
      table.add_row({std::string("limit"), (long long)z.size(),
                     rho_limit(z)});
    } else {
      std::size_t n = std::size_t(to_int(order, "order"));
      table.add_row({std::string(order), (long long)z.size(),
                     rho_finite(z, n)});
    }
  } else if (cmd == "fredholm") {
    double t = to_real(params.at("t"), "t");
    std::size_t radial = std::size_t(to_int(params.at("radial"), "radial"));
    std::size_t angular = std::size_t(to_int(params.at("angular"), "angular"));
    NystromGrid grid = make_nystrom_grid(t, radial, angular);
    FredholmResult f = fredholm_bergman(t, grid);
    double oracle = 1.0;
    for (int k = 1; k <= 200; ++k) oracle *= 1.0 - std::pow(t, 2.0 * k);
    table.columns = {"name", "value"};
    table.add_row({std::string("det"), f.det});
    table.add_row({std::string("product_oracle"), oracle});
    for (std::size_t i = 0; i < std::min<std::size_t>(3, f.eigenvalues.size());
         ++i) {
      table.add_row({"lambda_" + std::to_string(i + 1), f.eigenvalues[i]});
    }
  } else if (cmd == "gap-series") {
    double y = to_real(params.at("y"), "y");
    int kmax = int(to_int(params.at("k-max"), "k-max"));
    std::size_t pts = std::size_t(to_int(params.at("mc-points"), "mc-points"));
    const std::string& order = params.at("order");
    std::optional<std::size_t> n;
    if (order != "limit") n = std::size_t(to_int(order, "order"));
    GapSeries gap = gap_probability_series(y, n, kmax, pts, rng);
    table.columns = {"name", "value"};
    for (std::size_t k = 0; k < gap.terms.size(); ++k) {
      table.add_row({"term_" + std::to_string(k), gap.terms[k]});
    }
    table.add_row({std::string("estimate"), gap.value});
    table.add_row({std::string("std_error"), gap.std_error});
    table.add_row({std::string("limit_cdf"), limit_cdf(y)});
  } else if (cmd == "selftest") {
    throw std::invalid_argument("selftest is handled by the CLI driver");
  } else {
    throw std::invalid_argument("unknown command '" + cmd + "'");
  }
  return table;
}

}  // namespace rootmax
