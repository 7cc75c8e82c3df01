#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "srk/increments.hpp"
#include "srk/sde.hpp"
#include "srk/tableau.hpp"
#include "srk/trees.hpp"
#include "srk/weak_mc.hpp"

namespace srk::cli {

namespace {

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw UsageError{"bad " + what + " '" + s + "'"};
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

Rational parse_rational(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() == 1) return Rational(parse_int(parts[0], "order"));
  if (parts.size() == 2) {
    const int den = parse_int(parts[1], "order");
    if (den == 0) throw UsageError{"zero denominator in '" + s + "'"};
    return Rational(parse_int(parts[0], "order"), den);
  }
  throw UsageError{"bad order '" + s + "'"};
}

IncrementPair parse_dist(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.empty() || parts.size() > 2) throw UsageError{"bad --dist '" + s + "'"};
  try {
    IncrementPair pair;
    pair.first = IncrementDistribution(parse_increment_kind(parts[0]));
    pair.second = IncrementDistribution(parse_increment_kind(parts.size() == 2 ? parts[1] : parts[0]));
    return pair;
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

// Parse errors are reported as file:line: message.
SrkTableau load_tableau(const std::string& path) {
  try {
    return load_tableau_file(path);
  } catch (const TableauParseError& e) {
    throw UsageError{path + ":" + std::to_string(e.line()) + ": " + e.what()};
  }
}

SrkTableau selected_tableau(const RunConfig& c) {
  if (c.tableau) return load_tableau(*c.tableau);
  const std::string& m = c.methods.front();
  if (m == "an3d1") return an3d1();
  if (m == "euler") return euler_tableau();
  if (m.starts_with("tableau:")) return load_tableau(m.substr(8));
  throw UsageError{"check-tableau needs an SRK method, got '" + m + "'"};
}

McMethod selected_method(const RunConfig& c, const std::string& name) {
  if (name == "tableau") {
    if (!c.tableau) throw UsageError{"--method tableau needs --tableau FILE"};
    return McMethod::step(StepMethod::srk(load_tableau(*c.tableau)));
  }
  if (name.starts_with("tableau:")) return McMethod::step(StepMethod::srk(load_tableau(name.substr(8))));
  try {
    return parse_method(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

int check_tableau(const RunConfig& c, std::ostream& out) {
  const SrkTableau t = selected_tableau(c);
  const OrderReport r = check_stochastic_order(t);
  out << "tableau " << t.name() << ": s=" << t.stages()
      << (t.is_explicit() ? ", explicit" : ", implicit") << "\n";
  out << "stochastic order " << r.stochastic_order << ", deterministic order "
      << r.deterministic_order << "\n";
  out << "tolerance " << sci(r.tolerance) << "\n";
  out << "condition,residual\n";
  for (int i = 1; i <= static_cast<int>(kStochasticConditionCount); ++i)
    out << i << "," << sci(r.residuals.at(std::to_string(i))) << "\n";
  for (int i = 1; i <= static_cast<int>(kDeterministicConditionCount); ++i) {
    const std::string key = "D" + std::to_string(i);
    out << key << "," << sci(r.residuals.at(key)) << "\n";
  }
  return 0;
}

int moments(const RunConfig& c, std::ostream& out) {
  std::vector<IncrementKind> kinds;
  if (c.dist == "all") {
    kinds = {IncrementKind::MatchUpTo1, IncrementKind::MatchUpTo3, IncrementKind::MatchUpTo5,
             IncrementKind::MatchUpTo7, IncrementKind::Gaussian};
  } else {
    try {
      kinds = {parse_increment_kind(c.dist)};
    } catch (const std::invalid_argument& e) {
      throw UsageError{e.what()};
    }
  }
  if (c.max_k < 0) throw UsageError{"--max-k must be nonnegative"};
  out << "dist,k,moment,normal_moment,matches\n";
  for (IncrementKind kind : kinds) {
    const IncrementDistribution d(kind);
    for (int k = 0; k <= c.max_k; ++k) {
      const Rational mk = moment(d, k);
      const Rational nk = normal_moment(k);
      out << increment_kind_name(kind) << "," << k << "," << to_string(mk) << ","
          << to_string(nk) << "," << (mk == nk ? "yes" : "no") << "\n";
    }
  }
  return 0;
}

void write_header(std::ostream& out) {
  out << "method,problem,h,M,seed,mu_hat,sigma2_mu,ci_lo,ci_hi,effort_per_path,diverged_paths\n";
}

void write_record(std::ostream& out, const WeakErrorRecord& r) {
  out << r.method << "," << r.problem << "," << sci(r.h) << "," << r.paths << "," << r.seed
      << "," << sci(r.mu_hat) << "," << sci(r.sigma2_mu) << "," << sci(r.ci_lo) << ","
      << sci(r.ci_hi) << "," << sci(r.effort_per_path) << "," << r.diverged_paths << "\n";
}

struct StudyOutput {
  std::vector<std::pair<std::string, std::vector<WeakErrorRecord>>> studies;
  bool any_diverged = false;
};

StudyOutput run_studies(const RunConfig& c) {
  if (c.paths < 2) throw UsageError{"--paths must be at least 2"};
  ReferenceProblem problem = [&] {
    try {
      return reference_problem(c.problem);
    } catch (const std::invalid_argument& e) {
      throw UsageError{e.what()};
    }
  }();
  McOptions options;
  options.paths = c.paths;
  options.seed = c.seed;
  options.threads = c.threads;
  options.increments = parse_dist(c.dist);
  const std::vector<double> hs = step_sizes(c);

  StudyOutput result;
  for (const auto& name : c.methods) {
    const McMethod method = selected_method(c, name);
    for (double h : hs) {
      try {
        step_count(problem, method.kind() == McMethod::Kind::Exem ? h / 2.0 : h);
      } catch (const std::invalid_argument& e) {
        throw UsageError{e.what()};
      }
    }
    std::vector<WeakErrorRecord> records;
    for (double h : hs) {
      records.push_back(weak_error(method, problem, h, options));
      result.any_diverged = result.any_diverged || records.back().diverged();
    }
    result.studies.emplace_back(method.id(), std::move(records));
  }
  return result;
}

int converge(const RunConfig& c, std::ostream& out) {
  const StudyOutput s = run_studies(c);
  write_header(out);
  for (const auto& [id, records] : s.studies)
    for (const auto& r : records) write_record(out, r);
  for (const auto& [id, records] : s.studies) {
    const auto order = fit_order(records);
    out << "#fitted_order," << id << "," << (order ? sci(*order) : "unresolved") << "\n";
  }
  return s.any_diverged ? 2 : 0;
}

int effort_table(const RunConfig& c, std::ostream& out) {
  const StudyOutput s = run_studies(c);
  out << "method,problem,h,effort_per_path,abs_mu_hat,ci_half_width,resolved\n";
  for (const auto& [id, records] : s.studies)
    for (const auto& r : records)
      out << r.method << "," << r.problem << "," << sci(r.h) << "," << sci(r.effort_per_path)
          << "," << sci(std::abs(r.mu_hat)) << "," << sci(r.ci_half_width()) << ","
          << (is_resolved(r) ? "yes" : "no") << "\n";
  return s.any_diverged ? 2 : 0;
}

int trees(const RunConfig& c, std::ostream& out) {
  if (c.noise_dim < 1) throw UsageError{"--noise-dim must be positive"};
  if (c.relevant) {
    std::vector<ColoredTree> list;
    try {
      list = relevant_f_trees(*c.relevant, c.noise_dim);
    } catch (const std::invalid_argument& e) {
      throw UsageError{e.what()};
    }
    out << "tree,rho,alpha\n";
    for (const auto& t : list) out << t.to_string() << "," << to_string(rho(t)) << "," << to_string(density(t)) << "\n";
    out << "#count," << list.size() << "\n";
    out << "#shape_families," << shape_families(list).size() << "\n";
    return 0;
  }
  const Rational max_order = parse_rational(c.max_order);
  if (max_order < 0) throw UsageError{"--max-order must be nonnegative"};
  const auto list = enumerate_tadd(max_order, c.noise_dim);
  out << "tree,rho,alpha\n";
  for (const auto& t : list) out << t.to_string() << "," << to_string(rho(t)) << "," << to_string(density(t)) << "\n";
  out << "#count," << list.size() << "\n";
  return 0;
}

}  // namespace

std::vector<double> step_sizes(const RunConfig& config) {
  std::vector<double> hs;
  for (int e = config.h_exp_hi; e >= config.h_exp_lo; --e) hs.push_back(std::ldexp(1.0, e));
  return hs;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out,
                                    const char* env_threads) {
  RunConfig c;
  CLI::App app{"Stochastic Runge-Kutta weak-order toolkit", "srkbench"};
  app.require_subcommand(1);

  std::string methods = "an3d1";
  std::string h_exp = "1:-4";
  std::optional<unsigned> threads;

  auto* check = app.add_subcommand("check-tableau", "Evaluate the weak and deterministic order conditions");
  check->add_option("--method", methods, "an3d1, euler or tableau:<file>");
  check->add_option("--tableau", c.tableau, "Tableau file");

  auto* mom = app.add_subcommand("moments", "Print increment moments against N(0,1)");
  std::string moment_dist = "all";
  mom->add_option("--dist", moment_dist, "gaussian, zero, d3, d5, d7 or all");
  mom->add_option("--max-k", c.max_k, "Largest moment index");

  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--method", methods, "Comma-separated: an3d1, euler, exem, tableau, tableau:<file>");
    sub->add_option("--problem", c.problem, "ex1, ex2 or ex3");
    sub->add_option("--h-exp", h_exp, "Step exponents A:B, h = 2^A down to 2^B");
    sub->add_option("--paths", c.paths, "Monte Carlo paths M");
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--dist", c.dist, "Increment law, or first,second for the two blocks");
    sub->add_option("--threads", threads, "Worker threads (0: all cores)");
    sub->add_option("--out", c.out, "Write the table to this file");
    sub->add_option("--tableau", c.tableau, "Tableau file, selected by --method tableau");
  };
  auto* conv = app.add_subcommand("converge", "Weak error table and fitted order");
  add_mc(conv);
  auto* eff = app.add_subcommand("effort", "Effort against precision");
  add_mc(eff);

  auto* tr = app.add_subcommand("trees", "Enumerate additive-noise trees");
  tr->add_option("--max-order", c.max_order, "Largest order, integer or p/q");
  tr->add_option("--noise-dim", c.noise_dim, "Number of stochastic colors m");
  tr->add_option("--relevant", c.relevant, "List relevant f-trees of this order instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError{e.what()};
  }

  if (check->parsed()) c.command = Command::CheckTableau;
  else if (mom->parsed()) {
    c.command = Command::Moments;
    c.dist = moment_dist;
  }
  else if (conv->parsed()) c.command = Command::Converge;
  else if (eff->parsed()) c.command = Command::Effort;
  else c.command = Command::Trees;

  c.methods = split(methods, ',');
  if (c.methods.empty()) throw UsageError{"--method is empty"};

  const auto ends = split(h_exp, ':');
  if (ends.size() != 2) throw UsageError{"--h-exp expects A:B, got '" + h_exp + "'"};
  c.h_exp_hi = parse_int(ends[0], "--h-exp");
  c.h_exp_lo = parse_int(ends[1], "--h-exp");
  if (c.h_exp_hi < c.h_exp_lo) std::swap(c.h_exp_hi, c.h_exp_lo);

  if (threads) {
    c.threads = *threads;
  } else if (env_threads && *env_threads) {
    try {
      c.threads = static_cast<unsigned>(parse_int(env_threads, "SRKBENCH_THREADS"));
    } catch (const UsageError&) {
      throw UsageError{std::string("bad SRKBENCH_THREADS '") + env_threads + "'"};
    }
  }
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.out) {
    file.open(*config.out);
    if (!file) {
      err << "error: cannot open " << *config.out << "\n";
      return 1;
    }
    sink = &file;
  }
  try {
    switch (config.command) {
      case Command::CheckTableau: return check_tableau(config, *sink);
      case Command::Moments: return moments(config, *sink);
      case Command::Converge: {
        const int status = converge(config, *sink);
        if (status == 2) err << "warning: divergent records\n";
        return status;
      }
      case Command::Effort: {
        const int status = effort_table(config, *sink);
        if (status == 2) err << "warning: divergent records\n";
        return status;
      }
      case Command::Trees: return trees(config, *sink);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto config = parse_args(argc, argv, out, std::getenv("SRKBENCH_THREADS"));
    if (!config) return 0;
    return run(*config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return 1;
  }
}

}  // namespace srk::cli
