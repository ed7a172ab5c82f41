// sdft: analyze supports, run transforms, benchmark families, generate inputs.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "sdft/bench.hpp"
#include "sdft/errors.hpp"
#include "sdft/io.hpp"
#include "sdft/sampling.hpp"

using namespace sdft;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(path, text);
  }
}

std::string bits(Index x, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b)
    if (x >> b & 1u) s[static_cast<std::size_t>(width - 1 - b)] = '1';
  return width ? s : "-";
}

std::string member_list(const std::vector<Index>& members, bool binary, int m) {
  constexpr std::size_t kShown = 8;
  std::string out = "{";
  for (std::size_t i = 0; i < members.size() && i < kShown; ++i) {
    if (i) out += ",";
    out += binary ? bits(members[i], m) : std::to_string(members[i]);
  }
  if (members.size() > kShown) out += ",...";
  return out + "}";
}

std::string render_ascii(const CongruenceTree& t, bool binary) {
  std::ostringstream os;
  const int m = t.levels();
  for (int l = 0; l <= t.depth(); ++l)
    for (const auto& node : t.level(l)) {
      os << std::string(static_cast<std::size_t>(2 * l), ' ') << "L" << l << " r="
         << (binary ? bits(node.id.residue, l) : std::to_string(node.id.residue)) << " mu=" << node.weight();
      if (l < t.depth() && t.splits(node.id)) os << " split";
      os << " " << member_list(node.members, binary, m) << "\n";
    }
  return os.str();
}

std::string render_dot(const CongruenceTree& t, bool binary) {
  std::ostringstream os;
  os << "digraph T {\n  node [shape=box];\n";
  const auto name = [](NodeId v) { return "n" + std::to_string(v.level) + "_" + std::to_string(v.residue); };
  for (int l = 0; l <= t.depth(); ++l)
    for (const auto& node : t.level(l)) {
      os << "  " << name(node.id) << " [label=\"" << (binary ? bits(node.id.residue, l) : std::to_string(node.id.residue))
         << " mod 2^" << l << "\\nmu=" << node.weight() << "\"];\n";
      if (l > 0) os << "  " << name(parent(node.id)) << " -> " << name(node.id) << ";\n";
    }
  os << "}\n";
  return os.str();
}

struct AnalyzeOpts {
  std::string input;
  std::string out;
  std::string tree = "none";
  int tree_depth = -1;
  bool binary = false;
  bool isolation = false;
  std::uint64_t budget = kDefaultIsolationBudget;
};

constexpr std::size_t kDoublingCap = 4096;

int run_analyze(const AnalyzeOpts& o) {
  const SupportSet j = support_from_json(read_json_file(o.input));
  const int m = j.levels();
  const Classification cls = classify(j);
  const CongruenceTree tree(j, m);

  Json rep = {{"N", j.modulus()}, {"M", m}, {"k", j.size()}, {"pivots", pivots_to_json(cls.pivots)},
              {"classification", to_string(cls.kind)}, {"homogeneous", cls.kind == SupportClass::kHomogeneous}};
  Json profile = Json::array();
  for (int l = 0; l <= m; ++l) profile.push_back(tree.max_weight_at_level(l));
  rep["mu_star_profile"] = profile;
  if (j.size() <= kDoublingCap) {
    const std::size_t d = doubling(j);
    rep["doubling"] = d;
    rep["doubling_ratio"] = static_cast<double>(d) / static_cast<double>(j.size());
  } else {
    rep["doubling"] = nullptr;
    rep["doubling_ratio"] = nullptr;
  }
  if (o.binary) {
    Json b = Json::array();
    for (Index x : j) b.push_back(bits(x, m));
    rep["indices_binary"] = b;
  }
  if (o.tree != "none") {
    const int depth = o.tree_depth < 0 ? m : std::min(o.tree_depth, m);
    const CongruenceTree shown(j, depth);
    if (o.tree == "ascii")
      rep["tree"] = render_ascii(shown, o.binary);
    else if (o.tree == "dot")
      rep["tree"] = render_dot(shown, o.binary);
    else
      throw InvalidInput("--tree must be none, ascii or dot");
  }
  bool over_budget = false;
  if (o.isolation) {
    const IsolatingSetResult iso = min_isolating_set(j, o.budget);
    rep["isolation"] = {{"min_size", iso.min_size}, {"exact", iso.exact}, {"witness", iso.witness},
                        {"visited", iso.visited}};
    over_budget = !iso.exact;
  }
  emit(o.out, canonical_dump(rep) + "\n");
  if (over_budget) throw BudgetExceeded("isolation search budget exhausted; min_size is a lower bound");
  return 0;
}

struct TransformOpts {
  std::string input;
  std::string out;
  std::string algo = "sas";
  std::string policy = "auto";
  std::optional<std::string> pivots;
  std::optional<std::string> base_pivots;
  std::optional<std::size_t> height;
  double tolerance = 1e-8;
};

int run_transform(const TransformOpts& o) {
  const BandlimitedSignal sig = signal_from_json(read_json_file(o.input));
  const SupportSet& j = sig.support();
  const SampleSource f = sample_source(sig);
  const Index n = j.modulus();

  Json rep = {{"algo", o.algo}, {"N", n}, {"k", j.size()}};
  ComplexVec coeffs;
  OpCounter counter;
  if (o.algo == "oracle") {
    const ComplexVec x = sig.synthesize();
    std::vector<Index> cols(n);
    std::iota(cols.begin(), cols.end(), Index{0});
    coeffs = submatrix_apply(n, j.indices(), cols, x, &counter);
  } else if (o.algo == "fft") {
    const ComplexVec full = fft_radix2(sig.synthesize(), &counter);
    for (Index i : j) coeffs.push_back(full[i]);
  } else if (o.algo == "submatrix") {
    const SubmatrixResult res = submatrix_method(f, j);
    coeffs = res.coeffs;
    rep["residual"] = res.residual;
    rep["ops"] = res.ops;
  } else if (o.algo == "hidft") {
    if (o.height) {
      const PivotVector r = o.pivots ? parse_pivot_list(*o.pivots) : pivots(j);
      const HiDftResult res = hidft(f, j, r, *o.height, 0, &counter);
      rep["ops"] = counter.total();
      rep["pivots"] = pivots_to_json(r);
      emit(o.out, canonical_dump(hidft_to_json(res)) + "\n");
      if (!o.out.empty() && o.out != "-") std::cout << canonical_dump(rep) << "\n";
      return 0;
    }
    coeffs = homogeneous_dft(f, j, &counter);
  } else if (o.algo == "sas") {
    FamilyMeta meta;
    if (o.base_pivots) meta.base_pivots = parse_pivot_list(*o.base_pivots);
    const PivotVector r = o.pivots ? parse_pivot_list(*o.pivots) : select_pivots(j, parse_policy(o.policy), meta);
    const SasResult res = sas_transform(f, j, r);
    coeffs = res.coeffs;
    rep["pivots"] = pivots_to_json(r);
    rep["mu_star"] = res.plan.mu_star;
    rep["cost"] = cost_to_json(res.cost);
    rep["ops"] = res.cost.total();
    Json systems = Json::array();
    for (const auto& s : res.systems)
      systems.push_back({{"level", s.node.level}, {"residue", s.node.residue}, {"members", s.members},
                         {"residual", s.residual}, {"dense_fallback", s.dense_fallback}});
    rep["systems"] = systems;
  } else {
    throw InvalidInput("unknown --algo '" + o.algo + "'");
  }
  if (!rep.contains("ops")) rep["ops"] = counter.total();
  const double err = max_rel_error(coeffs, sig.coeffs());
  rep["max_rel_err"] = err;
  rep["correct"] = err <= o.tolerance;

  const std::string spectrum = canonical_dump(spectrum_to_json(j, coeffs)) + "\n";
  if (o.out.empty() || o.out == "-") {
    rep["spectrum"] = spectrum_to_json(j, coeffs);
  } else {
    write_text_file(o.out, spectrum);
  }
  std::cout << canonical_dump(rep) << "\n";
  return 0;
}

struct BenchOpts {
  std::string input;
  std::string out;
  std::string summary;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::size_t threads = 0;
};

int run_bench_cmd(const BenchOpts& o) {
  Scenario s = scenario_from_json(read_json_file(o.input));
  if (o.seed) s.seed = *o.seed;
  if (o.tolerance) s.tolerance = *o.tolerance;
  if (o.format != "csv" && o.format != "json") throw InvalidInput("--format must be csv or json");
  const auto records = run_bench(s, o.threads);
  BenchSummary sum = summarize(records);
  if (s.antipodal) sum.antipodal = antipodal_statistic(*s.antipodal, s.seed);
  const std::string body = o.format == "csv" ? records_to_csv(records) : canonical_dump(records_to_json(records)) + "\n";
  const std::string summary = canonical_dump(summary_to_json(sum)) + "\n";
  if (o.out.empty() || o.out == "-") {
    std::cout << body;
    if (!o.summary.empty()) write_text_file(o.summary, summary);
  } else {
    write_text_file(o.out, body);
    emit(o.summary, summary);
  }
  return 0;
}

struct GenOpts {
  std::string kind;
  std::string spec_file;
  std::string out;
  std::string signal;
  int levels = -1;
  std::uint64_t seed = 0;
  std::optional<std::string> pivots;
  int size_exponent = 0;
  Index a = 0;
  Index s = 1;
  std::size_t k = 1;
  int top = 0;
  std::vector<std::size_t> eta;
  double alpha = 2.0;
  std::vector<Index> gap_steps;
  std::vector<Index> gap_lengths;
  bool nonzero = false;
};

int run_gen(const GenOpts& o) {
  FamilySpec spec;
  if (!o.spec_file.empty()) {
    spec = family_from_json(read_json_file(o.spec_file));
  } else {
    if (o.kind.empty()) throw InvalidInput("gen needs a family kind or --spec");
    if (o.levels < 0 || o.levels > 62) throw InvalidInput("--M must lie in [0, 62]");
    spec.kind = parse_family(o.kind);
    spec.levels = o.levels;
    spec.seed = o.seed;
    if (o.pivots) {
      const PivotVector r = parse_pivot_list(*o.pivots);
      spec.pivots.assign(r.begin(), r.end());
    }
    spec.size_exponent = o.size_exponent;
    spec.a = o.a;
    spec.step = o.s;
    spec.count = o.k;
    spec.top = o.top;
    spec.eta = o.eta;
    spec.alpha = o.alpha;
    spec.gap.a = o.a;
    spec.gap.steps = o.gap_steps;
    spec.gap.lengths = o.gap_lengths;
    spec.gap.modulus = Index{1} << spec.levels;
  }
  const GeneratedSet g = generate(spec);
  emit(o.out, canonical_dump(support_to_json(g.support)) + "\n");
  if (!o.signal.empty()) {
    // Coefficient stream is separate from the support stream.
    Rng rng = Rng(spec.seed).fork(0xC0EFF);
    const ComplexVec c = random_coeffs(g.support.size(), rng, o.nonzero);
    write_text_file(o.signal, canonical_dump(spectrum_to_json(g.support, c)) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured-support DFT toolkit"};
  app.require_subcommand(1);

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "pivots, classification, mu* profile, doubling, tree");
  analyze->add_option("support", ao.input, "support JSON file")->required();
  analyze->add_option("--out", ao.out, "report file (default stdout)");
  analyze->add_option("--tree", ao.tree, "none | ascii | dot");
  analyze->add_option("--tree-depth", ao.tree_depth, "levels to render");
  analyze->add_flag("--binary", ao.binary, "print indices as bit patterns");
  analyze->add_flag("--isolation", ao.isolation, "exhaustive minimum isolating set (small N)");
  analyze->add_option("--budget", ao.budget, "isolation search budget");

  TransformOpts to;
  auto* transform = app.add_subcommand("transform", "compute (F f)_J from a signal file");
  transform->add_option("signal", to.input, "signal JSON file")->required();
  transform->add_option("--algo", to.algo, "oracle | fft | submatrix | hidft | sas");
  transform->add_option("--policy", to.policy, "balanced | uoe | uoh | random_subset | auto");
  transform->add_option("--pivots", to.pivots, "explicit pivots, e.g. 0,1");
  transform->add_option("--base-pivots", to.base_pivots, "family base pivots for the policy");
  transform->add_option("--height", to.height, "Hi-DFT height (node values instead of a spectrum)");
  transform->add_option("--tolerance", to.tolerance, "relative error accepted as correct");
  transform->add_option("--out", to.out, "spectrum file (default: embedded in stdout report)");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Monte Carlo trials from a scenario file");
  bench->add_option("scenario", bo.input, "scenario JSON file")->required();
  bench->add_option("--out", bo.out, "records file (default stdout)");
  bench->add_option("--summary", bo.summary, "summary JSON file");
  bench->add_option("--format", bo.format, "csv | json");
  bench->add_option("--seed", bo.seed, "override the scenario seed");
  bench->add_option("--tolerance", bo.tolerance, "override the scenario tolerance");
  bench->add_option("--threads", bo.threads, "worker count (THREADS overrides)");

  GenOpts go;
  auto* gen = app.add_subcommand("gen", "generate a support (and optionally a signal)");
  gen->add_option("kind", go.kind, "elementary | homogeneous | consecutive | ap | gap | uoe | uoh | random_subset | jstar");
  gen->add_option("--spec", go.spec_file, "family spec JSON instead of flags");
  gen->add_option("--M", go.levels, "log2 N");
  gen->add_option("--seed", go.seed, "generator seed");
  gen->add_option("--pivots", go.pivots, "pivots, e.g. 1,3");
  gen->add_option("--size-exponent", go.size_exponent, "elementary: |J| = 2^r");
  gen->add_option("--a", go.a, "start / GAP offset");
  gen->add_option("--s", go.s, "AP difference");
  gen->add_option("--k", go.k, "size");
  gen->add_option("--top", go.top, "UoE / UoH largest constituent exponent");
  gen->add_option("--eta", go.eta, "UoE / UoH constituent counts")->delimiter(',');
  gen->add_option("--alpha", go.alpha, "UoE / UoH slack");
  gen->add_option("--gap-steps", go.gap_steps, "GAP steps")->delimiter(',');
  gen->add_option("--gap-lengths", go.gap_lengths, "GAP lengths")->delimiter(',');
  gen->add_option("--out", go.out, "support file (default stdout)");
  gen->add_option("--signal", go.signal, "also write a random signal file");
  gen->add_flag("--nonzero", go.nonzero, "keep every coefficient magnitude >= 1e-3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCode::kInvalidInput);
  }

  try {
    if (*analyze) return run_analyze(ao);
    if (*transform) return run_transform(to);
    if (*bench) return run_bench_cmd(bo);
    if (*gen) return run_gen(go);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorCode::kInvalidInput);
  }
  return 0;
}
