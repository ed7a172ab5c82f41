#include "sdft/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "sdft/errors.hpp"

namespace sdft {

namespace {

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InvalidInput(std::string("scenario field '") + key + "' has the wrong type");
  }
}

BenchGroup group_from_json(const Json& j, std::size_t pos) {
  if (!j.is_object()) throw InvalidInput("scenario groups must be objects");
  BenchGroup g;
  g.name = field_or<std::string>(j, "name", "group" + std::to_string(pos));
  if (!j.contains("family")) throw InvalidInput("group '" + g.name + "' has no family");
  g.family = family_from_json(j.at("family"));
  g.trials = field_or<std::size_t>(j, "trials", 1);
  g.policy = parse_policy(field_or<std::string>(j, "policy", "auto"));
  if (j.contains("pivots")) g.pivots = pivots_from_json(j.at("pivots"));
  if (j.contains("reference_policy")) g.reference_policy = parse_policy(j.at("reference_policy").get<std::string>());
  g.gap_dimension = field_or<std::size_t>(j, "gap_dimension", 0);
  g.gap_max_size = field_or<std::size_t>(j, "gap_max_size", 4096);
  if (g.gap_dimension > 0 && g.family.kind != FamilyKind::kGap)
    throw InvalidInput("gap_dimension needs a gap family");
  return g;
}

std::uint64_t as_u64(double x) { return static_cast<std::uint64_t>(x); }

}  // namespace

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("scenario must be an object");
  Scenario s;
  s.seed = field_or<std::uint64_t>(j, "seed", 1);
  s.tolerance = field_or<double>(j, "tolerance", 1e-8);
  if (!(s.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (j.contains("groups")) {
    if (!j.at("groups").is_array()) throw InvalidInput("groups must be an array");
    for (std::size_t i = 0; i < j.at("groups").size(); ++i) s.groups.push_back(group_from_json(j.at("groups")[i], i));
  }
  if (j.contains("antipodal")) {
    const Json& a = j.at("antipodal");
    AntipodalSpec spec;
    spec.levels = field_or<int>(a, "M", 16);
    spec.k = field_or<std::size_t>(a, "k", 0);
    spec.draws = field_or<std::size_t>(a, "draws", 500);
    if (spec.levels < 1 || spec.levels > 30) throw InvalidInput("antipodal M must lie in [1, 30]");
    s.antipodal = spec;
  }
  if (s.groups.empty() && !s.antipodal) throw InvalidInput("scenario has no groups and no antipodal block");
  return s;
}

double mu_star_threshold_constant() { return 4.0 + 3.0 * std::log(2.0); }

double nlogn_floor(std::size_t k) {
  const double kd = static_cast<double>(k);
  return k > 1 ? kd * std::log2(kd) : 0.0;
}

double envelope_bound(std::size_t k) {
  const double c = mu_star_threshold_constant();
  return c * (kC1 + kC2 * c) * nlogn_floor(k);
}

AntipodalResult antipodal_statistic(const AntipodalSpec& spec, std::uint64_t seed) {
  AntipodalResult out;
  out.n = Index{1} << spec.levels;
  out.k = spec.k ? spec.k : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(out.n)))) * 4;
  out.draws = spec.draws;
  const double p = std::min(1.0, static_cast<double>(out.k) / static_cast<double>(out.n));
  const Index half = out.n / 2;
  Rng root(seed);
  std::vector<char> in(out.n);
  for (std::size_t d = 0; d < spec.draws; ++d) {
    Rng rng = root.fork(d);
    for (Index i = 0; i < out.n; ++i) in[i] = rng.bernoulli(p);
    for (Index i = 0; i < half; ++i)
      if (in[i] && in[i + half]) {
        ++out.with_pair;
        break;
      }
  }
  return out;
}

TrialRecord run_trial(const BenchGroup& group, std::size_t trial, std::uint64_t seed, double tolerance) {
  Rng rng(seed);
  FamilySpec spec = group.family;
  spec.seed = rng.next();
  GeneratedSet gs{SupportSet(Index{1} << spec.levels, {0}), std::nullopt, true};
  if (group.gap_dimension > 0) {
    // Redraw until proper; improper draws would not be GAPs of dimension d.
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRegenerations) throw ContractViolation("no proper GAP after repeated draws");
      spec.gap = random_gap_spec(group.gap_dimension, group.gap_max_size, spec.levels, rng);
      gs = generate(spec);
      if (gs.proper) break;
    }
  } else {
    gs = generate(spec);
  }
  const SupportSet& j = gs.support;
  const FamilyMeta meta{gs.base_pivots};
  const PivotVector r = group.pivots ? *group.pivots : select_pivots(j, group.policy, meta);

  Rng coeff_rng = rng.fork(1);
  const BandlimitedSignal sig(j, random_coeffs(j.size(), coeff_rng, true));
  const SasResult res = sas_transform(sample_source(sig), j, r);

  TrialRecord rec;
  rec.trial = trial;
  rec.group = group.name;
  rec.family = to_string(spec.kind);
  rec.n = j.modulus();
  rec.k = j.size();
  rec.size_r = r.size();
  rec.mu_star = res.plan.mu_star;
  rec.reference_mu_star = rec.mu_star;
  if (group.reference_policy)
    rec.reference_mu_star = make_plan(j, select_pivots(j, *group.reference_policy, meta)).mu_star;
  rec.ops_hidft = res.cost.hidft_ops();
  rec.ops_solve = res.cost.solve_ops();
  rec.ops_total = res.cost.total();
  rec.bound_total = res.cost.bound_alg1bnd;
  rec.samples = res.cost.samples_touched;
  rec.max_rel_err = max_rel_error(res.coeffs, sig.coeffs());
  rec.correct = rec.max_rel_err <= tolerance;
  rec.homogeneous = is_homogeneous(j);
  const std::uint64_t a = std::uint64_t{1} << r.size();
  rec.hidft_exact = rec.ops_hidft == rec.mu_star * (3 * a * r.size() / 2);
  return rec;
}

std::size_t worker_count(std::size_t requested) {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_bench(const Scenario& s, std::size_t threads) {
  struct Job {
    const BenchGroup* group;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  const Rng root(s.seed);
  for (std::size_t gi = 0; gi < s.groups.size(); ++gi) {
    const Rng group_rng = root.fork(gi);
    for (std::size_t t = 0; t < s.groups[gi].trials; ++t) jobs.push_back({&s.groups[gi], group_rng.fork(t).next()});
  }

  std::vector<TrialRecord> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        out[i] = run_trial(*jobs[i].group, i, jobs[i].seed, s.tolerance);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nthreads = std::min(worker_count(threads), std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nthreads; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  // Report the lowest failing trial so reruns fail identically.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

BenchSummary summarize(const std::vector<TrialRecord>& records) {
  BenchSummary s;
  const double c = mu_star_threshold_constant();
  double num = 0.0;
  double den = 0.0;
  for (const auto& r : records) {
    ++s.trials;
    s.correct += r.correct;
    const double logk = r.k > 1 ? std::log2(static_cast<double>(r.k)) : 0.0;
    s.mu_tail += static_cast<double>(r.mu_star) >= c * logk;
    s.reference_mu_tail += static_cast<double>(r.reference_mu_star) >= c * logk;
    s.within_bound += static_cast<double>(r.ops_total) <= r.bound_total;
    s.above_floor += r.ops_total >= as_u64(std::ceil(nlogn_floor(r.k)));
    s.within_envelope += static_cast<double>(r.ops_total) <= envelope_bound(r.k);
    s.homogeneous_trials += r.homogeneous;
    s.hidft_exact += r.hidft_exact;
    const double x = nlogn_floor(r.k);
    if (x > 0.0) {
      num += x * static_cast<double>(r.ops_total);
      den += x * x;
      s.max_ratio = std::max(s.max_ratio, static_cast<double>(r.ops_total) / x);
    }
  }
  s.fitted_constant = den > 0.0 ? num / den : 0.0;
  return s;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = "trial,family,N,k,size_r,mu_star,ops_hidft,ops_solve,ops_total,bound_total,samples,correct,max_rel_err\n";
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%llu,%zu,%zu,%zu,%llu,%llu,%llu,%.17g,%llu,%s,%.17g\n", r.trial,
                  r.family.c_str(), static_cast<unsigned long long>(r.n), r.k, r.size_r, r.mu_star,
                  static_cast<unsigned long long>(r.ops_hidft), static_cast<unsigned long long>(r.ops_solve),
                  static_cast<unsigned long long>(r.ops_total), r.bound_total,
                  static_cast<unsigned long long>(r.samples), r.correct ? "true" : "false", r.max_rel_err);
    out += buf;
  }
  return out;
}

Json records_to_json(const std::vector<TrialRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records)
    arr.push_back({{"trial", r.trial}, {"group", r.group}, {"family", r.family}, {"N", r.n}, {"k", r.k},
                   {"size_r", r.size_r}, {"mu_star", r.mu_star}, {"reference_mu_star", r.reference_mu_star},
                   {"ops_hidft", r.ops_hidft}, {"ops_solve", r.ops_solve}, {"ops_total", r.ops_total},
                   {"bound_total", r.bound_total}, {"samples", r.samples}, {"correct", r.correct},
                   {"max_rel_err", r.max_rel_err}});
  return arr;
}

Json summary_to_json(const BenchSummary& s) {
  const auto frac = [&](std::size_t n) { return s.trials ? static_cast<double>(n) / static_cast<double>(s.trials) : 0.0; };
  Json j = {{"trials", s.trials},
            {"correct_fraction", frac(s.correct)},
            {"mu_star_threshold_c", mu_star_threshold_constant()},
            {"pr_mu_star_tail", frac(s.mu_tail)},
            {"pr_reference_mu_star_tail", frac(s.reference_mu_tail)},
            {"within_bound_fraction", frac(s.within_bound)},
            {"above_nlogn_fraction", frac(s.above_floor)},
            {"within_envelope_fraction", frac(s.within_envelope)},
            {"hidft_exact_fraction", frac(s.hidft_exact)},
            {"homogeneous_trials", s.homogeneous_trials},
            {"fitted_ops_per_klogk", s.fitted_constant},
            {"max_ops_per_klogk", s.max_ratio}};
  if (s.antipodal)
    j["antipodal"] = {{"N", s.antipodal->n}, {"k", s.antipodal->k}, {"draws", s.antipodal->draws},
                      {"with_pair", s.antipodal->with_pair}, {"fraction", s.antipodal->fraction()}};
  return j;
}

}  // namespace sdft
