// splitter: construct, verify, classify and search splitter sets.
//
// Exit codes: 0 success or valid, 1 a negative answer to a valid question,
// 2 malformed input or violated preconditions, 3 parameters no known
// criterion covers.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "criteria.hpp"
#include "json.hpp"
#include "splitter/cayley.hpp"
#include "splitter/core.hpp"
#include "splitter/error.hpp"
#include "splitter/io.hpp"
#include "splitter/perfect.hpp"
#include "splitter/quasi.hpp"

namespace {

using namespace splitter;
using nlohmann::json;

constexpr const char* kVersion = "0.3.0";

enum Exit { ok = 0, negative = 1, bad_input = 2, unsupported = 3 };

struct Report {
  json inputs = json::object();
  json result = json::object();
  json evidence = json::object();
  std::string text;
  std::string csv;
  int exit = ok;
};

std::string join(const std::vector<u64>& xs, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A set object, or a run report whose result carries one.
SplitterSet parse_set(const std::string& text) {
  const json j = json::parse(text);
  if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains("set")) {
    return io::set_from_json(j["result"]["set"]);
  }
  return io::set_from_json(j);
}

std::string classification_text(const Classification& c) {
  return std::string(to_string(c.kind)) + " (" + std::to_string(c.size) + " of bound " + std::to_string(c.bound) + ")";
}

// Every emitted set goes through the verifier first.
json emitted_set(const SplitterSet& s, Report& r) {
  const auto v = verify(s);
  if (!v.valid) throw std::logic_error("constructed set failed verification: " + v.violation->describe(s.instance().q()));
  const auto c = classify(s);
  r.result["set"] = io::to_json(s);
  r.result["classification"] = io::to_json(c);
  r.text += "q=" + std::to_string(s.instance().q()) + " k1=" + std::to_string(s.instance().k1()) +
            " k2=" + std::to_string(s.instance().k2()) + "  " + classification_text(c) + "\n" + join(s.elements()) + "\n";
  r.csv = "element\n" + join(s.elements(), "\n") + "\n";
  return r.result["set"];
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::string inline_set;
};

Report cmd_verify(const VerifyArgs& a) {
  Report r;
  if (a.input.empty() == a.inline_set.empty()) throw PreconditionError("verify: give exactly one of FILE or --set");
  const auto set = parse_set(a.inline_set.empty() ? read_source(a.input) : a.inline_set);
  r.inputs = {{"set", io::to_json(set)}};
  const auto v = verify(set);
  const auto c = classify(set);
  r.result = io::to_json(v, set.instance().q());
  r.result["classification"] = io::to_json(c);
  if (v.valid) {
    r.text = "valid: " + classification_text(c) + "\n";
  } else {
    r.text = "invalid: " + v.violation->describe(set.instance().q()) + "\n";
    r.exit = negative;
  }
  r.csv = "valid,kind,size,bound\n" + std::string(v.valid ? "true" : "false") + "," + std::string(to_string(c.kind)) +
          "," + std::to_string(c.size) + "," + std::to_string(c.bound) + "\n";
  return r;
}

// exists ------------------------------------------------------------------

struct ExistsArgs {
  u64 k1 = 0;
  u64 k2 = 0;
  std::optional<u64> p;
  std::optional<u64> scan;
  std::optional<u64> g;
};

Report cmd_exists(const ExistsArgs& a) {
  Report r;
  r.inputs = {{"k1", a.k1}, {"k2", a.k2}};
  if (a.p.has_value() == a.scan.has_value()) throw PreconditionError("exists: give exactly one of -p or --scan");
  if (a.p) {
    r.inputs["p"] = *a.p;
    const auto ctx = a.g ? nt::PrimeContext(*a.p, *a.g) : nt::PrimeContext(*a.p);
    r.inputs["g"] = ctx.g();
    const auto v = perfect::exists_perfect(ctx, a.k1, a.k2);
    r.result = {{"p", *a.p}, {"outcome", perfect::to_string(v.outcome)}, {"criterion", perfect::to_string(v.criterion)}};
    r.evidence = io::to_json(v.evidence);
    r.text = std::string(perfect::to_string(v.outcome)) + " (" + std::string(perfect::to_string(v.criterion)) + ")\n";
    for (const auto& item : v.evidence) r.text += "  " + item.name + " = " + io::to_json(item.value).dump() + "\n";
    r.csv = "p,outcome,criterion\n" + std::to_string(*a.p) + "," + std::string(perfect::to_string(v.outcome)) + "," +
            std::string(perfect::to_string(v.criterion)) + "\n";
    if (v.outcome == perfect::Existence::not_exists) r.exit = negative;
    if (v.outcome == perfect::Existence::no_criterion) r.exit = unsupported;
    return r;
  }
  r.inputs["scan"] = *a.scan;
  const auto entries = perfect::scan_primes(a.k1, a.k2, *a.scan);
  const auto primes = perfect::existing_primes(entries);
  json rows = json::array();
  r.csv = "p,outcome,criterion\n";
  bool uncovered = false;
  for (const auto& e : entries) {
    rows.push_back({{"p", e.p}, {"outcome", perfect::to_string(e.verdict.outcome)},
                    {"criterion", perfect::to_string(e.verdict.criterion)}});
    r.evidence[std::to_string(e.p)] = io::to_json(e.verdict.evidence);
    r.csv += std::to_string(e.p) + "," + std::string(perfect::to_string(e.verdict.outcome)) + "," +
             std::string(perfect::to_string(e.verdict.criterion)) + "\n";
    uncovered = uncovered || e.verdict.outcome == perfect::Existence::no_criterion;
  }
  r.result = {{"primes", primes}, {"entries", rows}};
  r.text = std::to_string(primes.size()) + " of " + std::to_string(entries.size()) + " candidate primes admit a perfect set\n" +
           join(primes) + "\n";
  if (uncovered) {
    r.text += "some primes are not covered by any known criterion\n";
    r.exit = unsupported;
  }
  return r;
}

// construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::optional<u64> p;
  std::optional<u64> g;
  std::optional<u64> k;
  std::optional<u64> m;
  std::string left;
  std::string right;
};

u64 need(const std::optional<u64>& v, const char* flag, const std::string& family) {
  if (!v) throw PreconditionError("construct " + family + ": " + flag + " is required");
  return *v;
}

Report cmd_construct(const ConstructArgs& a) {
  Report r;
  r.inputs = {{"family", a.family}};
  const auto& f = a.family;
  auto prime_ctx = [&](bool odd_root) {
    const u64 p = need(a.p, "-p", f);
    r.inputs["p"] = p;
    const auto ctx = a.g ? nt::PrimeContext(p, *a.g) : odd_root ? nt::PrimeContext::with_odd_root(p) : nt::PrimeContext(p);
    r.inputs["g"] = ctx.g();
    return ctx;
  };
  if (f == "perfect04" || f == "perfect24" || f == "perfect44") {
    const auto ctx = prime_ctx(false);
    const auto built = f == "perfect04" ? perfect::build_04(ctx) : f == "perfect24" ? perfect::build_24(ctx) : perfect::build_44(ctx);
    emitted_set(built.set, r);
    r.evidence = io::to_json(built.trace);
    r.evidence["coset_representatives"] = built.coset_reps;
    r.evidence["cofactor"] = built.witness.cofactor;
    r.evidence["subgroup_order"] = built.witness.subgroup.order();
  } else if (f == "dl5") {
    const u64 k = need(a.k, "-k", f), m = need(a.m, "-m", f);
    r.inputs["k"] = k;
    r.inputs["m"] = m;
    emitted_set(quasi::qp_0k(k, m), r);
  } else if (f == "dl6" || f == "dl8") {
    const u64 k = need(a.k, "-k", f), p = need(a.p, "-p", f);
    r.inputs["k"] = k;
    r.inputs["p"] = p;
    emitted_set(f == "dl6" ? quasi::qp_kk(k, p) : quasi::qp_k1k(k, p), r);
  } else if (f == "dl7") {
    const u64 k = need(a.k, "-k", f), m = need(a.m, "-m", f);
    r.inputs["k"] = k;
    r.inputs["m"] = m;
    const auto ctx = prime_ctx(true);
    const auto params = quasi::dl7_find_A(k, m, ctx);
    if (!params) {
      r.result = {{"found", false}};
      r.text = "no 2^m-subset A tiles both index-residue sets\n";
      r.csv = "element\n";
      r.exit = negative;
      return r;
    }
    emitted_set(quasi::qp_kk_2p(*params), r);
    r.evidence = {{"g", ctx.g()},
                  {"v", params->v},
                  {"n", params->n},
                  {"A", params->A},
                  {"residues_even", params->residues_even},
                  {"residues_odd", params->residues_odd}};
  } else if (f == "compose") {
    if (a.left.empty() || a.right.empty()) throw PreconditionError("construct compose: --left and --right are required");
    const auto b1 = parse_set(read_source(a.left));
    const auto b2 = parse_set(read_source(a.right));
    r.inputs["left"] = io::to_json(b1);
    r.inputs["right"] = io::to_json(b2);
    emitted_set(compose(b1, b2), r);
  } else {
    throw PreconditionError("construct: unknown family " + f);
  }
  return r;
}

// maxset ------------------------------------------------------------------

struct MaxsetArgs {
  std::optional<u64> q;
  u64 k1 = 0;
  u64 k2 = 0;
  bool exact = false;
  bool bound = false;
  std::optional<u64> budget;
  std::string table;
  u64 pmax = 37;
};

std::string table_row_csv(u64 p, u64 s, u64 bound, u64 alpha, const std::vector<u64>& w) {
  return std::to_string(p) + "," + std::to_string(s) + "," + std::to_string(bound) + "," + std::to_string(alpha) + "," +
         join(w) + "\n";
}

Report cmd_maxset(const MaxsetArgs& a) {
  Report r;
  cayley::ExactOptions opts;
  if (a.budget) opts.node_budget = *a.budget;
  if (!a.table.empty()) {
    // Rows run over primes p > k1+k2+2, where both forms of the lower bound
    // are defined.
    std::smatch mt;
    if (!std::regex_match(a.table, mt, std::regex("k(\\d+)k(\\d+)"))) throw PreconditionError("maxset: --table takes k<k1>k<k2>");
    const u64 k1 = std::stoull(mt[1]), k2 = std::stoull(mt[2]);
    r.inputs = {{"table", a.table}, {"pmax", a.pmax}};
    json rows = json::array();
    r.csv = "p,S,bound,alpha,witness\n";
    r.text = "p     |S|  bound  alpha  witness\n";
    for (u64 p = k1 + k2 + 3; p <= a.pmax; ++p) {
      if (!nt::is_prime(p)) continue;
      const SplitterInstance inst(p, k1, k2);
      const auto g = cayley::build_graph(inst);
      const auto lb = cayley::independence_lower_bound(g);
      const auto ex = cayley::max_splitter(inst, cayley::SearchMode::exact, opts);
      const auto& w = ex.witness.elements();
      rows.push_back({{"p", p}, {"S", g.quotient_set().size()}, {"bound", lb.value}, {"alpha", ex.size},
                      {"exact", ex.exact}, {"witness", w}});
      r.csv += table_row_csv(p, g.quotient_set().size(), lb.value, ex.size, w);
      std::ostringstream line;
      line << std::left << std::setw(6) << p << std::setw(5) << g.quotient_set().size() << std::setw(7) << lb.value
           << std::setw(7) << ex.size << join(w) << (ex.exact ? "" : "  (lower bound)") << "\n";
      r.text += line.str();
    }
    r.result = {{"rows", rows}};
    return r;
  }
  if (!a.q) throw PreconditionError("maxset: -q is required unless --table is given");
  if (a.exact == a.bound) throw PreconditionError("maxset: give exactly one of --exact or --bound");
  const SplitterInstance inst(*a.q, a.k1, a.k2);
  const auto mode = a.exact ? cayley::SearchMode::exact : cayley::SearchMode::bound;
  r.inputs = {{"q", *a.q}, {"k1", a.k1}, {"k2", a.k2}, {"mode", cayley::to_string(mode)}};
  if (a.budget) r.inputs["budget"] = *a.budget;
  const auto rep = cayley::max_splitter(inst, mode, opts);
  const auto& w = rep.witness.elements();
  r.result = {{"size", rep.size}, {"exact", rep.exact}, {"witness", w}, {"vertex_count", rep.vertex_count}};
  if (rep.quotient_size) r.result["quotient_size"] = *rep.quotient_size;
  r.result["classification"] = io::to_json(classify(rep.witness));
  if (rep.bound) {
    r.evidence = {{"strong_form", rep.bound->strong_form},
                  {"quotient_size", rep.bound->quotient_size},
                  {"subgroup_order", rep.bound->subgroup_order}};
  }
  r.evidence["nodes"] = rep.nodes;
  r.text = std::to_string(rep.size) + "\n";
  if (mode == cayley::SearchMode::exact) {
    r.text += (rep.exact ? "witness: " : "budget exhausted, best found: ") + join(w) + "\n";
  } else {
    r.text += std::string(rep.bound->strong_form ? "ceil((p-1)/|S|)" : "ceil((p-1)/(|S|+1))") + " with |S| = " +
              std::to_string(rep.bound->quotient_size) + ", |<M>| = " + std::to_string(rep.bound->subgroup_order) + "\n";
  }
  r.csv = "q,k1,k2,mode,size,exact,witness\n" + std::to_string(*a.q) + "," + std::to_string(a.k1) + "," + std::to_string(a.k2) +
          "," + std::string(cayley::to_string(mode)) + "," + std::to_string(rep.size) + "," + (rep.exact ? "true" : "false") +
          "," + join(w) + "\n";
  return r;
}

// forms -------------------------------------------------------------------

struct FormsArgs {
  int id = 1;
  i64 range = 100;
  std::size_t limit = 8;
};

Report cmd_forms(const FormsArgs& a) {
  Report r;
  r.inputs = {{"id", a.id}, {"range", a.range}, {"limit", a.limit}};
  const auto found = perfect::quadratic_form_family(a.id, -a.range, a.range, -a.range, a.range);
  json rows = json::array();
  r.csv = "p,k,l\n";
  r.text = "p       k     l\n";
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& f = found[i];
    if (i == 0 || found[i - 1].p != f.p) ++distinct;
    if (a.limit != 0 && distinct > a.limit) break;
    rows.push_back({{"p", f.p}, {"k", f.k}, {"l", f.l}});
    r.csv += std::to_string(f.p) + "," + std::to_string(f.k) + "," + std::to_string(f.l) + "\n";
    std::ostringstream line;
    line << std::left << std::setw(8) << f.p << std::setw(6) << f.k << f.l << "\n";
    r.text += line.str();
  }
  r.result = {{"rows", rows}};
  return r;
}

// repro -------------------------------------------------------------------

Report cmd_repro(const std::vector<int>& only) {
  Report r;
  r.inputs = {{"only", only}};
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int i = 1; i <= repro::kCriterionCount; ++i) ids.push_back(i);
  }
  json rows = json::array();
  r.csv = "id,title,pass,seconds,detail\n";
  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > repro::kCriterionCount) throw PreconditionError("repro: no criterion " + std::to_string(id));
    const auto c = repro::run_criterion(id);
    failed += c.pass ? 0 : 1;
    // Timings stay out of the result so reruns compare equal.
    rows.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
    r.evidence[std::to_string(c.id)] = {{"seconds", c.seconds}};
    std::ostringstream line;
    line << (c.pass ? "PASS " : "FAIL ") << std::setw(2) << c.id << "  " << std::left << std::setw(38) << c.title << " "
         << c.detail << "\n";
    r.text += line.str();
    std::string detail = c.detail;
    for (auto& ch : detail) {
      if (ch == ',') ch = ';';
    }
    r.csv += std::to_string(c.id) + "," + c.title + "," + (c.pass ? "true" : "false") + "," + std::to_string(c.seconds) +
             "," + detail + "\n";
  }
  r.result = {{"criteria", rows}, {"failed", failed}};
  r.text += std::to_string(ids.size() - failed) + "/" + std::to_string(ids.size()) + " passed\n";
  if (failed) r.exit = negative;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, verify and search splitter sets B[-k1,k2](q)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, as_csv = false;
  std::string out_path;
  app.add_flag("--json", as_json, "Print the full run report as JSON");
  app.add_flag("--csv", as_csv, "Print tabular output as CSV with a header row");
  app.add_option("-o,--output", out_path, "Write output to a file instead of stdout");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a set against the definition and classify it");
  verify_cmd->add_option("input", va.input, "Set or run-report JSON file ('-' for stdin)");
  verify_cmd->add_option("--set", va.inline_set, "Set JSON given inline");

  ExistsArgs ea;
  auto* exists_cmd = app.add_subcommand("exists", "Decide whether a perfect set exists");
  exists_cmd->add_option("--k1", ea.k1)->required();
  exists_cmd->add_option("--k2", ea.k2)->required();
  exists_cmd->add_option("-p", ea.p, "A single prime");
  exists_cmd->add_option("--scan", ea.scan, "All primes up to this bound");
  exists_cmd->add_option("-g", ea.g, "Pin the primitive root");

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a perfect or quasi-perfect set");
  construct_cmd->add_option("family", ca.family, "perfect04 perfect24 perfect44 dl5 dl6 dl7 dl8 compose")
      ->required()
      ->check(CLI::IsMember({"perfect04", "perfect24", "perfect44", "dl5", "dl6", "dl7", "dl8", "compose"}));
  construct_cmd->add_option("-p", ca.p, "Prime");
  construct_cmd->add_option("-g", ca.g, "Pin the primitive root");
  construct_cmd->add_option("-k", ca.k, "k");
  construct_cmd->add_option("-m", ca.m, "m");
  construct_cmd->add_option("--left", ca.left, "compose: first set JSON file");
  construct_cmd->add_option("--right", ca.right, "compose: second set JSON file");

  MaxsetArgs ma;
  auto* maxset_cmd = app.add_subcommand("maxset", "Largest splitter set by exact search, or the degree lower bound");
  maxset_cmd->add_option("-q", ma.q, "Modulus");
  maxset_cmd->add_option("--k1", ma.k1);
  maxset_cmd->add_option("--k2", ma.k2);
  maxset_cmd->add_flag("--exact", ma.exact, "Exact branch and bound");
  maxset_cmd->add_flag("--bound", ma.bound, "Lower bound from the graph degree (prime q)");
  maxset_cmd->add_option("--budget", ma.budget, "Node budget for the exact search");
  maxset_cmd->add_option("--table", ma.table, "Table over primes, e.g. k0k3");
  maxset_cmd->add_option("--pmax", ma.pmax, "Largest prime in --table");

  FormsArgs fa;
  auto* forms_cmd = app.add_subcommand("forms", "Prime values of the B[-2,4] quadratic forms");
  forms_cmd->add_option("--id", fa.id, "Form 1, 2 or 3")->check(CLI::Range(1, 3));
  forms_cmd->add_option("--range", fa.range, "k and l run over [-range, range]")->check(CLI::NonNegativeNumber);
  forms_cmd->add_option("--limit", fa.limit, "Number of smallest primes listed, 0 for all");

  u64 gq = 0, gk1 = 0, gk2 = 0;
  auto* graph_cmd = app.add_subcommand("graph", "Graph utilities");
  auto* export_cmd = graph_cmd->add_subcommand("export", "Adjacency list, one line per vertex");
  export_cmd->add_option("-q", gq)->required();
  export_cmd->add_option("--k1", gk1);
  export_cmd->add_option("--k2", gk2)->required();
  graph_cmd->require_subcommand(1);

  std::vector<int> only;
  auto* repro_cmd = app.add_subcommand("repro", "Run the reproduction suite and print a pass/fail matrix");
  repro_cmd->add_option("--only", only, "Criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : bad_input;
  }
  if (as_json && as_csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return bad_input;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  std::string raw;  // graph export writes its own format
  try {
    if (*verify_cmd) {
      r = cmd_verify(va);
    } else if (*exists_cmd) {
      r = cmd_exists(ea);
    } else if (*construct_cmd) {
      r = cmd_construct(ca);
    } else if (*maxset_cmd) {
      r = cmd_maxset(ma);
    } else if (*forms_cmd) {
      r = cmd_forms(fa);
    } else if (*graph_cmd) {
      const auto g = cayley::build_graph(SplitterInstance(gq, gk1, gk2));
      std::ostringstream out;
      cayley::write_adjacency(g, out);
      raw = out.str();
    } else if (*repro_cmd) {
      r = cmd_repro(only);
    }
  } catch (const NonexistenceError& e) {
    std::cerr << "no such set: " << e.what() << "\n";
    return negative;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return bad_input;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return unsupported;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return negative;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::string text;
  if (!raw.empty()) {
    text = raw;
  } else if (as_json) {
    const json report{{"command", command}, {"inputs", r.inputs}, {"result", r.result},
                      {"evidence", r.evidence}, {"duration_ms", ms}, {"version", kVersion}};
    text = report.dump(2) + "\n";
  } else if (as_csv) {
    text = r.csv;
  } else {
    text = r.text;
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return bad_input;
    }
    out << text;
  }
  return r.exit;
}
