#include "ffgeom/harness.hpp"

#include "ffgeom/exceptional_constructions.hpp"
#include "ffgeom/furstenberg_constructions.hpp"
#include "ffgeom/parallel.hpp"
#include "ffgeom/prime_matrix.hpp"
#include "ffgeom/projections.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ffgeom {

namespace {

using nlohmann::json;

const std::set<std::string> kRationalKeys = {"s", "t", "a", "step", "grid_step", "upper_constant",
                                             "lower_constant"};
const std::set<std::string> kIntegerKeys = {"n", "k", "m", "l", "p"};
const std::set<std::string> kLabelKeys = {"function", "lemma", "construction"};

const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"index", {"function", "s", "t", "a", "n", "k", "expected"}},
    {"lemmas", {"lemma", "dims", "step", "grid_step", "negative_control"}},
    {"construct", {"s", "t", "n", "k", "p", "upper_constant"}},
    {"exceptional", {"construction", "a", "s", "n", "k", "p", "lower_constant"}},
    {"count", {"n", "k", "m", "l", "p"}},
};

const std::set<std::string> kCommonKeys = {"command", "jobs", "out"};

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("key \"" + key + "\": " + why);
}

std::vector<json> as_list(const json& value) {
  if (value.is_array()) return value.get<std::vector<json>>();
  return {value};
}

Rational rational_from_json(const json& value, const std::string& key) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) return parse_rational_arg(value.get<std::string>(), key);
  bad_key(key, "rationals must be num/den");
}

std::int64_t integer_from_json(const json& value, const std::string& key) {
  if (!value.is_number_integer()) bad_key(key, "expected an integer");
  return value.get<std::int64_t>();
}

std::string b(bool x) { return x ? "true" : "false"; }

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
const std::vector<T>& require(const std::map<std::string, std::vector<T>>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end() || it->second.empty()) bad_key(key, "missing");
  return it->second;
}

template <typename T>
std::vector<T> value_or(const std::map<std::string, std::vector<T>>& m, const std::string& key,
                        std::vector<T> fallback) {
  auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

/// Index tuples of the Cartesian product, first axis slowest.
std::vector<std::vector<std::size_t>> product(const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::size_t>> out;
  for (auto s : sizes) {
    if (s == 0) return out;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t pos = sizes.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sizes[pos]) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (sizes.empty()) return out;
  }
}

struct CaseResult {
  ReportRow row;
  std::vector<CounterexampleReport> counterexamples;
};

using Case = std::function<CaseResult(unsigned)>;

/// Wraps a case so that exceptions become a failing row carrying `prefix` cells.
Case guarded(std::vector<std::string> prefix, std::size_t width, std::function<CaseResult(unsigned)> body) {
  return [prefix = std::move(prefix), width, body = std::move(body)](unsigned jobs) {
    try {
      return body(jobs);
    } catch (const std::exception& e) {
      CaseResult r;
      r.row.cells = prefix;
      r.row.cells.resize(width - 2);
      r.row.cells.push_back("false");
      r.row.cells.push_back(e.what());
      r.row.pass = false;
      return r;
    }
  };
}

std::vector<Case> index_cases(const ExperimentConfig& c) {
  const auto width = csv_header("index").size();
  std::vector<Case> cases;
  for (const auto& fn : value_or(c.labels, "function", {"F"})) {
    if (fn != "F" && fn != "M") bad_key("function", "must be \"F\" or \"M\"");
    const bool is_f = fn == "F";
    const auto& xs = require(c.rationals, is_f ? "s" : "a");
    const auto& ys = require(c.rationals, is_f ? "t" : "s");
    const auto& ns = require(c.integers, "n");
    const auto& ks = require(c.integers, "k");
    for (const auto& ix : product({xs.size(), ys.size(), ns.size(), ks.size()})) {
      const Rational x = xs[ix[0]];
      const Rational y = ys[ix[1]];
      const int n = static_cast<int>(ns[ix[2]]);
      const int k = static_cast<int>(ks[ix[3]]);
      const std::string expected = c.expected ? c.expected->to_string() : "";
      std::vector<std::string> prefix = {fn, to_string(x), to_string(y), std::to_string(n), std::to_string(k), "", "",
                                         expected};
      cases.push_back(guarded(prefix, width, [=, expected_value = c.expected](unsigned) {
        ExactExponent value{0};
        std::string branch;
        if (is_f) {
          const auto fp = FurstenbergParams::make(x, y, n, k);
          value = fp.index();
          branch = std::string("case_") + to_char(fp.branch);
        } else {
          const auto mp = MarstrandParams::make(x, y, n, k);
          value = mp.index();
          branch = "type" + std::to_string(static_cast<int>(mp.type));
        }
        const bool pass = !expected_value || *expected_value == value;
        CaseResult r;
        r.row.cells = {fn, to_string(x), to_string(y), std::to_string(n), std::to_string(k), value.to_string(),
                       branch, expected, b(pass), ""};
        r.row.pass = pass;
        return r;
      }));
    }
  }
  return cases;
}

std::vector<Case> lemma_cases(const ExperimentConfig& c) {
  const auto width = csv_header("lemmas").size();
  const Rational step = c.grid_step;
  const bool negative = c.negative_control;
  std::vector<Case> cases;
  for (const auto& lemma : require(c.labels, "lemma")) {
    std::vector<std::pair<int, int>> dims = c.dims;
    if (lemma == "closed_form_2d") {
      dims = {{2, 1}};
    } else if (lemma != "recursion_f1" && lemma != "recursion_f2" && lemma != "recursion_m" &&
               lemma != "index_properties") {
      bad_key("lemma", "unknown lemma \"" + lemma + "\"");
    } else if (dims.empty()) {
      bad_key("dims", "missing");
    }
    for (const auto& [n, k] : dims) {
      std::vector<std::string> prefix = {lemma, std::to_string(n), std::to_string(k), to_string(step), b(negative), ""};
      cases.push_back(guarded(prefix, width, [=, n = n, k = k](unsigned jobs) {
        std::vector<CounterexampleReport> found;
        const Perturbation shift{Rational(1, 10), false};
        const Perturbation flip{Rational(0), true};
        const IndexFunctions fns = negative ? unclamped_type3_functions() : IndexFunctions{};
        if (lemma == "recursion_f1") {
          if (n != k + 1) throw DomainError("recursion_f1 needs dims of the form [k+1, k]");
          found = check_recursion_f1(k, step, negative ? shift : Perturbation{}, jobs);
        } else if (lemma == "recursion_f2") {
          found = check_recursion_f2(n, k, step, negative ? shift : Perturbation{}, jobs);
        } else if (lemma == "recursion_m") {
          found = check_recursion_m(n, k, step, negative ? flip : Perturbation{}, jobs);
        } else if (lemma == "index_properties") {
          found = check_index_properties(GridSpec{step, {{n, k}}}, fns, jobs);
        } else {
          found = check_closed_form_2d(step, fns);
        }
        const bool pass = negative ? !found.empty() : found.empty();
        CaseResult r;
        r.row.cells = {lemma, std::to_string(n), std::to_string(k), to_string(step), b(negative),
                       std::to_string(found.size()), b(pass), ""};
        r.row.pass = pass;
        r.counterexamples = std::move(found);
        return r;
      }));
    }
  }
  return cases;
}

std::vector<Case> construct_cases(const ExperimentConfig& c) {
  const auto width = csv_header("construct").size();
  const auto& ss = require(c.rationals, "s");
  const auto& ts = require(c.rationals, "t");
  const auto ns = value_or(c.integers, "n", {2});
  const auto ks = value_or(c.integers, "k", {1});
  const auto& ps = require(c.integers, "p");
  const Rational upper = c.upper_constant;
  std::vector<Case> cases;
  for (const auto& ix : product({ss.size(), ts.size(), ns.size(), ks.size(), ps.size()})) {
    const Rational s = ss[ix[0]];
    const Rational t = ts[ix[1]];
    const int n = static_cast<int>(ns[ix[2]]);
    const int k = static_cast<int>(ks[ix[3]]);
    const std::int64_t p = ps[ix[4]];
    std::vector<std::string> prefix = {to_string(s), to_string(t), std::to_string(n), std::to_string(k),
                                       std::to_string(p)};
    cases.push_back(guarded(prefix, width, [=](unsigned jobs) {
      const auto family = (n == 2 && k == 1) ? construct_2d(s, t, p) : construct_general(s, t, n, k, p);
      const auto rep = report(family, "", upper, jobs);
      std::string why;
      for (const auto& f : rep.failures) why += (why.empty() ? "" : "; ") + f;
      CaseResult r;
      r.row.cells = {to_string(s), to_string(t), std::to_string(n), std::to_string(k), std::to_string(p),
                     family.branch, to_string(family.lambda), std::to_string(family.members.size()),
                     rep.e_size.str(), rep.target.to_string(), to_string(rep.ratio), b(rep.valid),
                     b(rep.lower_sanity), b(rep.upper_bound), b(rep.passed()), why};
      r.row.pass = rep.passed();
      return r;
    }));
  }
  return cases;
}

std::vector<Case> exceptional_cases(const ExperimentConfig& c) {
  const auto width = csv_header("exceptional").size();
  const Rational lower = c.lower_constant;
  std::vector<Case> cases;
  for (const auto& kind : value_or(c.labels, "construction", {"marstrand"})) {
    if (kind != "oberlin" && kind != "marstrand") bad_key("construction", "must be \"oberlin\" or \"marstrand\"");
    const bool planar = kind == "oberlin";
    const auto& as = require(c.rationals, "a");
    const auto& ss = require(c.rationals, "s");
    const auto ns = planar ? std::vector<std::int64_t>{2} : require(c.integers, "n");
    const auto ks = planar ? std::vector<std::int64_t>{1} : require(c.integers, "k");
    const auto& ps = require(c.integers, "p");
    for (const auto& ix : product({as.size(), ss.size(), ns.size(), ks.size(), ps.size()})) {
      const Rational a = as[ix[0]];
      const Rational s = ss[ix[1]];
      const int n = static_cast<int>(ns[ix[2]]);
      const int k = static_cast<int>(ks[ix[3]]);
      const std::int64_t p = ps[ix[4]];
      std::vector<std::string> prefix = {kind, to_string(a), to_string(s), std::to_string(n), std::to_string(k),
                                         std::to_string(p)};
      cases.push_back(guarded(prefix, width, [=](unsigned jobs) {
        const auto w = planar ? construct_oberlin_rectangle(a, s, p, jobs)
                              : construct_marstrand_witness(a, s, n, k, p, jobs);
        const bool sound = claims_sound(w);
        const bool disjoint = theta_families_disjoint(w);
        const bool bound = certify_lower_bound(w, lower);
        const bool pass = sound && disjoint && bound;
        CaseResult r;
        r.row.cells = {kind, to_string(a), to_string(s), std::to_string(n), std::to_string(k), std::to_string(p),
                       std::to_string(static_cast<int>(w.params.type)), w.branch, std::to_string(w.set_a.size()),
                       std::to_string(w.claimed_directions.size()), w.certified_count.str(),
                       w.params.index().to_string(), b(sound), b(disjoint), b(bound), b(pass), ""};
        r.row.pass = pass;
        return r;
      }));
    }
  }
  return cases;
}

std::vector<Case> count_cases(const ExperimentConfig& c) {
  const auto width = csv_header("count").size();
  const auto& ns = require(c.integers, "n");
  const auto& ks = require(c.integers, "k");
  const auto& ms = require(c.integers, "m");
  const auto& ls = require(c.integers, "l");
  const auto& ps = require(c.integers, "p");
  std::vector<Case> cases;
  for (const auto& ix : product({ns.size(), ks.size(), ms.size(), ls.size(), ps.size()})) {
    const int n = static_cast<int>(ns[ix[0]]);
    const int k = static_cast<int>(ks[ix[1]]);
    const int m = static_cast<int>(ms[ix[2]]);
    const int l = static_cast<int>(ls[ix[3]]);
    const std::int64_t p = ps[ix[4]];
    // The product is restricted to tuples meeting the counting hypotheses.
    if (k < 1 || k >= n || m < 0 || m > n || l < 0 || l > k || l > m || n - k < m - l) continue;
    std::vector<std::string> prefix = {std::to_string(n), std::to_string(k), std::to_string(m), std::to_string(l),
                                       std::to_string(p)};
    cases.push_back(guarded(prefix, width, [=](unsigned jobs) {
      std::vector<int> coords;
      for (int i = 0; i < m; ++i) coords.push_back(i);
      const auto w = LinearSubspace::coordinate(n, coords, p);
      const BigInt count = count_small_projection_subspaces(w, k, l, jobs);
      const int exponent = k * (n - k) - (k - l) * (m - l);
      const BigRational ratio(count, ipow(BigInt(p), static_cast<std::uint64_t>(exponent)));
      const bool within = ratio <= 4 && ratio * 4 >= 1;
      CaseResult r;
      r.row.cells = {std::to_string(n), std::to_string(k), std::to_string(m), std::to_string(l), std::to_string(p),
                     count.str(), std::to_string(exponent), to_string(ratio), b(within), b(within), ""};
      r.row.pass = within;
      return r;
    }));
  }
  return cases;
}

}  // namespace

Rational parse_rational_arg(std::string_view text, std::string_view key) {
  auto r = parse_rational(text);
  if (!r) bad_key(std::string(key), "rationals must be num/den, got \"" + std::string(text) + "\"");
  return *r;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig c;
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) bad_key("command", "expected a string");
    c.command = doc["command"].get<std::string>();
    if (!kCommandKeys.count(c.command)) bad_key("command", "unknown command \"" + c.command + "\"");
  }

  for (const auto& [key, value] : doc.items()) {
    if (key == "command") continue;
    if (!kCommonKeys.count(key)) {
      bool known = false;
      for (const auto& [cmd, keys] : kCommandKeys) {
        if ((c.command.empty() || cmd == c.command) && keys.count(key)) known = true;
      }
      if (!known) bad_key(key, "not recognised" + (c.command.empty() ? std::string() : " for command " + c.command));
    }

    if (key == "jobs") {
      const auto j = integer_from_json(value, key);
      if (j < 1) bad_key(key, "must be at least 1");
      c.jobs = static_cast<unsigned>(j);
    } else if (key == "out") {
      if (!value.is_string()) bad_key(key, "expected a string");
      c.out_dir = value.get<std::string>();
    } else if (key == "negative_control") {
      if (!value.is_boolean()) bad_key(key, "expected true or false");
      c.negative_control = value.get<bool>();
    } else if (key == "expected") {
      if (value.is_string() && value.get<std::string>() == "-inf") {
        c.expected = ExactExponent::negative_infinity();
      } else {
        c.expected = ExactExponent(rational_from_json(value, key));
      }
    } else if (key == "dims") {
      for (const auto& pair : as_list(value)) {
        if (!pair.is_array() || pair.size() != 2) bad_key(key, "expected a list of [n, k] pairs");
        c.dims.emplace_back(static_cast<int>(integer_from_json(pair[0], key)),
                            static_cast<int>(integer_from_json(pair[1], key)));
      }
    } else if (kRationalKeys.count(key)) {
      auto& list = c.rationals[key];
      for (const auto& v : as_list(value)) list.push_back(rational_from_json(v, key));
    } else if (kIntegerKeys.count(key)) {
      auto& list = c.integers[key];
      for (const auto& v : as_list(value)) {
        const auto x = integer_from_json(v, key);
        if (key == "p" && !is_prime(x)) bad_key(key, std::to_string(x) + " is not prime");
        list.push_back(x);
      }
    } else if (kLabelKeys.count(key)) {
      auto& list = c.labels[key];
      for (const auto& v : as_list(value)) {
        if (!v.is_string()) bad_key(key, "expected a string");
        list.push_back(v.get<std::string>());
      }
    }
  }

  for (const char* key : {"step", "grid_step"}) {
    if (auto it = c.rationals.find(key); it != c.rationals.end()) {
      if (it->second.size() != 1 || it->second[0] <= 0) bad_key(key, "expected one positive rational");
      c.grid_step = it->second[0];
    }
  }
  if (auto it = c.rationals.find("upper_constant"); it != c.rationals.end()) c.upper_constant = it->second.at(0);
  if (auto it = c.rationals.find("lower_constant"); it != c.rationals.end()) c.lower_constant = it->second.at(0);
  return c;
}

std::size_t RunReport::passes() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; }));
}

std::vector<std::string> csv_header(const std::string& command) {
  if (command == "index") return {"function", "x", "y", "n", "k", "value", "branch", "expected", "pass", "error"};
  if (command == "lemmas") return {"lemma", "n", "k", "step", "negative_control", "counterexamples", "pass", "error"};
  if (command == "construct") {
    return {"s",     "t",     "n",          "k",     "p",           "branch",       "lambda", "members",
            "e_size", "target", "ratio", "valid", "lower_sanity", "upper_bound", "pass",   "error"};
  }
  if (command == "exceptional") {
    return {"construction", "a",      "s",     "n",           "k",        "p",           "type",   "branch", "set_size",
            "claims",       "certified_count", "target", "claims_sound", "disjoint", "lower_bound", "pass", "error"};
  }
  if (command == "count") {
    return {"n", "k", "m", "l", "p", "count", "exponent", "ratio", "within_factor_4", "pass", "error"};
  }
  throw ConfigError("unknown command \"" + command + "\"");
}

RunReport run(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<Case> cases;
  if (config.command == "index") {
    cases = index_cases(config);
  } else if (config.command == "lemmas") {
    cases = lemma_cases(config);
  } else if (config.command == "construct") {
    cases = construct_cases(config);
  } else if (config.command == "exceptional") {
    cases = exceptional_cases(config);
  } else if (config.command == "count") {
    cases = count_cases(config);
  } else {
    throw ConfigError("key \"command\": unknown command \"" + config.command + "\"");
  }

  // One case: give it all threads. Many cases: one thread each.
  const unsigned inner = cases.size() == 1 ? config.jobs : 1;
  const unsigned outer = cases.size() == 1 ? 1 : config.jobs;
  auto results = parallel_map(cases.size(), [&](std::size_t i) { return cases[i](inner); }, outer);

  RunReport report;
  report.command = config.command;
  report.header = csv_header(config.command);
  for (auto& r : results) {
    report.rows.push_back(std::move(r.row));
    std::move(r.counterexamples.begin(), r.counterexamples.end(), std::back_inserter(report.counterexamples));
  }
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
                       .count();
  return report;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.header.size(); ++i) out << (i ? "," : "") << report.header[i];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) out << (i ? "," : "") << csv_escape(row.cells[i]);
    out << '\n';
  }
  return out.str();
}

std::string summary_json(const RunReport& report) {
  json j;
  j["cases"] = report.rows.size();
  j["passes"] = report.passes();
  j["fails"] = report.fails();
  j["wall_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream file(fs::path(out_dir) / name, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + (fs::path(out_dir) / name).string());
    file << body;
  };
  write(report.command + ".csv", to_csv(report));
  write("summary.json", summary_json(report));
  if (report.command == "lemmas") {
    std::ostringstream out;
    write_counterexamples_csv(out, report.counterexamples);
    write("counterexamples.csv", out.str());
  }
}

}  // namespace ffgeom
