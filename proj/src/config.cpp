#include "ramsa/config.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "ramsa/problems.hpp"

namespace ramsa {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number '" + s + "' for key " + key);
  }
}

long parse_long(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer '" + s + "' for key " + key);
  }
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config: bad boolean '" + s + "' for key " + key);
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("config: empty list entry for key " + key);
    out.push_back(parse_double(item, key));
  }
  if (out.empty()) throw ConfigError("config: empty list for key " + key);
  return out;
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections parse_sections(const std::string& text) {
  Sections sections;
  std::istringstream stream(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " +
                        std::to_string(lineno));
    if (section.empty())
      throw ConfigError("config: key outside any section at line " +
                        std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at line " +
                        std::to_string(lineno));
    auto [it, fresh] = sections[section].emplace(key, value);
    (void)it;
    if (!fresh)
      throw ConfigError("config: duplicate key '" + key + "' in [" + section +
                        "]");
  }
  return sections;
}

// Pulls a key out of the section map, erasing it so leftovers can be
// reported as unknown.
bool take(Sections& s, const std::string& section, const std::string& key,
          std::string& value) {
  auto sec = s.find(section);
  if (sec == s.end()) return false;
  auto it = sec->second.find(key);
  if (it == sec->second.end()) return false;
  value = it->second;
  sec->second.erase(it);
  return true;
}

void reject_leftovers(const Sections& s,
                      const std::vector<std::string>& known_sections) {
  for (const auto& [name, keys] : s) {
    bool known = false;
    for (const auto& k : known_sections) known |= (k == name);
    if (!known) throw ConfigError("config: unknown section [" + name + "]");
    if (!keys.empty())
      throw ConfigError("config: unknown key '" + keys.begin()->first +
                        "' in [" + name + "]");
  }
}

}  // namespace

std::string kernel_name(KernelKind kind) {
  return kind == KernelKind::Gaussian ? "gaussian" : "truncated";
}

KernelKind kernel_from_name(const std::string& name) {
  if (name == "gaussian") return KernelKind::Gaussian;
  if (name == "truncated") return KernelKind::TruncatedGaussian;
  throw ConfigError("config: unknown kernel '" + name + "'");
}

SolverConfig RunConfig::materialize(const Problem& prob) const {
  SolverConfig sc;
  sc.lambda_step = StepSchedule(s1_0, tau1);
  sc.x_step = StepSchedule(s2_0, tau2);
  sc.t_step = StepSchedule(s3_0, tau3);
  sc.moment_step = StepSchedule(s4_0, tau4);
  sc.beta1 = beta1;
  sc.beta2 = beta2;
  sc.alpha_target = alpha_star;
  if (alpha_star_objective >= 0.0) {
    const auto outputs = static_cast<std::size_t>(prob.constraint_count) + 1;
    if (sc.alpha_target.size() == 1)
      sc.alpha_target.assign(outputs, sc.alpha_target[0]);
    if (sc.alpha_target.size() != outputs)
      throw ConfigError("config: alpha_star size mismatch");
    sc.alpha_target[0] = alpha_star_objective;
  }
  sc.gamma = gamma;
  sc.epsilon = epsilon;
  sc.budget = budget;
  sc.max_iterations = k_max;
  const auto m = static_cast<std::size_t>(prob.constraint_count);
  sc.t_box = Box::cube(m + 1, t_lower, t_upper);
  if (m > 0) sc.lambda_box = Box::cube(m, 0.0, lambda_upper);
  sc.kernel = kernel;
  sc.estimator = estimator;
  sc.strict_two_eval = strict_two_eval;
  sc.seed = seed;
  sc.record_trace = trace;
  return sc;
}

RunConfig parse_run_config(const std::string& text) {
  Sections s = parse_sections(text);
  RunConfig c;
  std::string v;

  if (take(s, "run", "problem", v)) c.problem = v;
  if (take(s, "run", "kernel", v)) c.kernel = kernel_from_name(v);
  if (take(s, "run", "estimator", v)) {
    if (v == "one_sided")
      c.estimator = EstimatorForm::OneSided;
    else if (v == "two_sided")
      c.estimator = EstimatorForm::TwoSided;
    else
      throw ConfigError("config: unknown estimator '" + v + "'");
  }
  if (take(s, "run", "budget", v)) c.budget = parse_long(v, "budget");
  if (take(s, "run", "seed", v))
    c.seed = static_cast<std::uint64_t>(parse_long(v, "seed"));
  if (take(s, "run", "runs", v))
    c.runs = static_cast<int>(parse_long(v, "runs"));
  if (take(s, "run", "mc_samples", v))
    c.mc_samples = parse_long(v, "mc_samples");
  if (take(s, "run", "jobs", v))
    c.jobs = static_cast<int>(parse_long(v, "jobs"));
  if (take(s, "run", "strict_two_eval", v))
    c.strict_two_eval = parse_bool(v, "strict_two_eval");
  if (take(s, "run", "trace", v)) c.trace = parse_bool(v, "trace");
  if (take(s, "run", "truncate_noise", v))
    c.truncate_noise = parse_bool(v, "truncate_noise");

  if (take(s, "steps", "s1_0", v)) c.s1_0 = parse_double(v, "s1_0");
  if (take(s, "steps", "tau1", v)) c.tau1 = parse_double(v, "tau1");
  if (take(s, "steps", "s2_0", v)) c.s2_0 = parse_double(v, "s2_0");
  if (take(s, "steps", "tau2", v)) c.tau2 = parse_double(v, "tau2");
  if (take(s, "steps", "s3_0", v)) c.s3_0 = parse_double(v, "s3_0");
  if (take(s, "steps", "tau3", v)) c.tau3 = parse_double(v, "tau3");
  if (take(s, "steps", "s4_0", v)) c.s4_0 = parse_double(v, "s4_0");
  if (take(s, "steps", "tau4", v)) c.tau4 = parse_double(v, "tau4");

  if (take(s, "smoothing", "beta1", v)) c.beta1 = parse_double(v, "beta1");
  if (take(s, "smoothing", "beta2", v)) c.beta2 = parse_double(v, "beta2");

  if (take(s, "risk", "alpha_star", v)) c.alpha_star = parse_list(v, "alpha_star");
  if (take(s, "risk", "alpha_star_objective", v))
    c.alpha_star_objective = v == "same" ? -1.0 : parse_double(v, "alpha_star_objective");
  if (take(s, "risk", "gamma", v))
    c.gamma = v == "auto" ? -1.0 : parse_double(v, "gamma");
  if (take(s, "risk", "epsilon", v)) c.epsilon = parse_double(v, "epsilon");
  if (take(s, "risk", "k_max", v))
    c.k_max = v == "auto" ? -1 : parse_long(v, "k_max");

  if (take(s, "boxes", "t_lower", v)) c.t_lower = parse_double(v, "t_lower");
  if (take(s, "boxes", "t_upper", v)) c.t_upper = parse_double(v, "t_upper");
  if (take(s, "boxes", "lambda_upper", v))
    c.lambda_upper = parse_double(v, "lambda_upper");

  reject_leftovers(s, {"run", "steps", "smoothing", "risk", "boxes"});
  return c;
}

std::string emit_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "problem = " << c.problem << "\n";
  out << "kernel = " << kernel_name(c.kernel) << "\n";
  out << "estimator = "
      << (c.estimator == EstimatorForm::OneSided ? "one_sided" : "two_sided")
      << "\n";
  out << "budget = " << c.budget << "\n";
  out << "seed = " << c.seed << "\n";
  out << "runs = " << c.runs << "\n";
  out << "mc_samples = " << c.mc_samples << "\n";
  out << "jobs = " << c.jobs << "\n";
  out << "strict_two_eval = " << (c.strict_two_eval ? "true" : "false") << "\n";
  out << "trace = " << (c.trace ? "true" : "false") << "\n";
  out << "truncate_noise = " << (c.truncate_noise ? "true" : "false") << "\n";
  out << "\n[steps]\n";
  out << "s1_0 = " << format_double(c.s1_0) << "\n";
  out << "tau1 = " << format_double(c.tau1) << "\n";
  out << "s2_0 = " << format_double(c.s2_0) << "\n";
  out << "tau2 = " << format_double(c.tau2) << "\n";
  out << "s3_0 = " << format_double(c.s3_0) << "\n";
  out << "tau3 = " << format_double(c.tau3) << "\n";
  out << "s4_0 = " << format_double(c.s4_0) << "\n";
  out << "tau4 = " << format_double(c.tau4) << "\n";
  out << "\n[smoothing]\n";
  out << "beta1 = " << format_double(c.beta1) << "\n";
  out << "beta2 = " << format_double(c.beta2) << "\n";
  out << "\n[risk]\n";
  out << "alpha_star = ";
  for (std::size_t i = 0; i < c.alpha_star.size(); ++i)
    out << (i ? ", " : "") << format_double(c.alpha_star[i]);
  out << "\n";
  if (c.alpha_star_objective < 0.0)
    out << "alpha_star_objective = same\n";
  else
    out << "alpha_star_objective = " << format_double(c.alpha_star_objective)
        << "\n";
  if (c.gamma < 0.0)
    out << "gamma = auto\n";
  else
    out << "gamma = " << format_double(c.gamma) << "\n";
  out << "epsilon = " << format_double(c.epsilon) << "\n";
  if (c.k_max < 0)
    out << "k_max = auto\n";
  else
    out << "k_max = " << c.k_max << "\n";
  out << "\n[boxes]\n";
  out << "t_lower = " << format_double(c.t_lower) << "\n";
  out << "t_upper = " << format_double(c.t_upper) << "\n";
  out << "lambda_upper = " << format_double(c.lambda_upper) << "\n";
  return out.str();
}

RunConfig paper_row(const std::string& problem, KernelKind kernel) {
  RunConfig c;
  c.problem = problem;
  c.kernel = kernel;
  c.alpha_star_objective = 0.0;
  const bool truncated = kernel == KernelKind::TruncatedGaussian;
  std::string base = problem;
  if (problem == "VSI-epistemic-points" || problem == "VSI-epistemic-interval")
    base = "VSI";

  if (!truncated) {
    c.budget = 5000;
    if (base == "SCD") {
      c.beta1 = 0.05;
      c.s2_0 = 0.05;
      c.s4_0 = 0.2;
    } else if (base == "WBD") {
      c.beta1 = 0.002;
      c.s2_0 = 0.001;
      c.s4_0 = 0.4;
    } else if (base == "VSI") {
      c.beta1 = 0.1;
      c.s2_0 = 0.5;
      c.s4_0 = 0.5;
    } else if (base == "SRD") {
      c.beta1 = 0.05;
      c.s2_0 = 0.15;
      c.s4_0 = 0.2;
    } else {
      throw LookupError("paper_row: no published row for '" + problem + "'");
    }
  } else {
    c.budget = 15000;
    c.truncate_noise = true;
    if (base == "SCD") {
      c.beta1 = 0.1;
      c.s2_0 = 0.1;
      c.s4_0 = 0.25;
    } else if (base == "WBD") {
      c.beta1 = 0.0025;
      c.s2_0 = 0.0008;
      c.s4_0 = 0.4;
    } else if (base == "VSI") {
      c.beta1 = 0.1;
      c.s2_0 = 0.6;
      c.s4_0 = 0.6;
    } else if (base == "SRD") {
      c.beta1 = 0.025;
      c.s2_0 = 0.01;
      c.s4_0 = 0.2;
    } else {
      throw LookupError("paper_row: no published row for '" + problem + "'");
    }
  }
  if (problem == "VSI-epistemic-points") {
    c.budget = 15000;
    c.truncate_noise = false;
  } else if (problem == "VSI-epistemic-interval") {
    c.budget = 10000;
    c.truncate_noise = false;
  }
  return c;
}

Problem problem_from_config(const std::string& text) {
  Sections s = parse_sections(text);
  std::string v;
  Problem p;
  if (!take(s, "problem", "name", v))
    throw ConfigError("problem config: missing name");
  p.name = v;
  if (!take(s, "problem", "lower", v))
    throw ConfigError("problem config: missing lower bounds");
  auto lower = parse_list(v, "lower");
  if (!take(s, "problem", "upper", v))
    throw ConfigError("problem config: missing upper bounds");
  auto upper = parse_list(v, "upper");
  p.box = Box(std::move(lower), std::move(upper));
  p.design_dim = static_cast<int>(p.box.size());
  if (!take(s, "problem", "x0", v))
    throw ConfigError("problem config: missing x0");
  p.x0 = parse_list(v, "x0");
  if (p.x0.size() != p.box.size())
    throw ConfigError("problem config: x0 dimension mismatch");
  if (take(s, "problem", "constraints", v))
    p.constraint_count = static_cast<int>(parse_long(v, "constraints"));
  if (take(s, "problem", "evaluator", v)) {
    const Problem base = builtin_problem(v);
    if (base.design_dim != p.design_dim)
      throw ConfigError("problem config: evaluator dimension mismatch");
    p.evaluator = base.evaluator;
    p.constraint_count = base.constraint_count;
  }

  if (take(s, "uncertainty", "truncate_noise", v))
    p.uncertainty.truncate_design_noise = parse_bool(v, "truncate_noise");

  // Components are listed as c1..cN:
  //   cK = kind p1 p2 [p3 p4] [@design_index] [scaled]
  auto sec = s.find("uncertainty");
  if (sec != s.end()) {
    std::map<int, UncertainComponent> ordered;
    for (const auto& [key, spec] : sec->second) {
      if (key.size() < 2 || key[0] != 'c')
        throw ConfigError("problem config: unknown key '" + key +
                          "' in [uncertainty]");
      const int index = static_cast<int>(parse_long(key.substr(1), key));
      std::istringstream tokens(spec);
      std::string kind;
      tokens >> kind;
      std::vector<double> params;
      int design_index = -1;
      bool scaled = false;
      std::string tok;
      while (tokens >> tok) {
        if (tok == "scaled") {
          scaled = true;
        } else if (tok.front() == '@') {
          design_index = static_cast<int>(parse_long(tok.substr(1), key)) - 1;
        } else {
          params.push_back(parse_double(tok, key));
        }
      }
      UncertainComponent comp;
      auto need = [&](std::size_t count) {
        if (params.size() != count)
          throw ConfigError("problem config: " + key + ": '" + kind +
                            "' expects " + std::to_string(count) +
                            " parameters");
      };
      if (kind == "fixed") {
        need(1);
        comp = UncertainComponent::fixed(params[0]);
      } else if (kind == "normal") {
        need(2);
        comp = UncertainComponent::normal(params[0], params[1], design_index,
                                          scaled);
      } else if (kind == "uniform") {
        need(2);
        comp = UncertainComponent::uniform(params[0], params[1], design_index);
      } else if (kind == "trunc_normal") {
        need(4);
        comp = UncertainComponent::truncated_normal(params[0], params[1],
                                                    params[2], params[3]);
      } else if (kind == "bernoulli") {
        need(2);
        comp = UncertainComponent::bernoulli_pair(params[0], params[1]);
      } else if (kind == "normal_mean_points") {
        need(3);
        comp = UncertainComponent::normal_mean_points(params[0], params[1],
                                                      params[2]);
      } else if (kind == "normal_mean_interval") {
        need(3);
        comp = UncertainComponent::normal_mean_interval(params[0], params[1],
                                                        params[2]);
      } else {
        throw ConfigError("problem config: unknown component kind '" + kind +
                          "'");
      }
      if (!ordered.emplace(index, comp).second)
        throw ConfigError("problem config: duplicate component " + key);
    }
    for (const auto& [index, comp] : ordered) {
      (void)index;
      p.uncertainty.components.push_back(comp);
    }
    sec->second.clear();
  }

  reject_leftovers(s, {"problem", "uncertainty"});
  return p;
}

}  // namespace ramsa
