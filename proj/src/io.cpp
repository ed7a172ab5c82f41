#include "sdft/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sdft/errors.hpp"

namespace sdft {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // nlohmann objects iterate in key order
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      break;
    }
    default:
      out += j.dump();
  }
}

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? get_field<T>(j, key) : fallback;
}

std::vector<Index> index_list(const Json& j, const char* key) {
  const Json& arr = j.contains(key) ? j.at(key) : throw InvalidInput(std::string("missing field '") + key + "'");
  if (!arr.is_array()) throw InvalidInput(std::string("field '") + key + "' must be an array");
  std::vector<Index> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InvalidInput("indices must be non-negative integers");
    out.push_back(v.get<Index>());
  }
  return out;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

Json support_to_json(const SupportSet& s) {
  return {{"N", s.modulus()}, {"indices", std::vector<Index>(s.begin(), s.end())}};
}

SupportSet support_from_json(const Json& j) {
  return SupportSet(get_field<Index>(j, "N"), index_list(j, "indices"));
}

Json spectrum_to_json(const SupportSet& s, std::span<const Complex> coeffs) {
  Json c = Json::array();
  for (const auto& v : coeffs) c.push_back({v.real(), v.imag()});
  return {{"N", s.modulus()}, {"support", std::vector<Index>(s.begin(), s.end())}, {"coeffs", c}};
}

BandlimitedSignal signal_from_json(const Json& j) {
  const std::vector<Index> raw = index_list(j, "support");
  const Json& c = j.contains("coeffs") ? j.at("coeffs") : throw InvalidInput("missing field 'coeffs'");
  if (!c.is_array() || c.size() != raw.size()) throw InvalidInput("coeffs must pair with support entries");
  // Files need not list the support sorted; keep each coefficient with its index.
  std::vector<std::pair<Index, Complex>> pairs;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Json& e = c[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw InvalidInput("each coefficient must be [re, im]");
    pairs.emplace_back(raw[i], Complex(e[0].get<double>(), e[1].get<double>()));
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Index> idx;
  ComplexVec coeffs;
  for (const auto& [i, v] : pairs) {
    idx.push_back(i);
    coeffs.push_back(v);
  }
  return BandlimitedSignal(SupportSet(get_field<Index>(j, "N"), std::move(idx)), std::move(coeffs));
}

Json family_to_json(const FamilySpec& spec) {
  Json j = {{"kind", to_string(spec.kind)}, {"M", spec.levels}, {"seed", spec.seed}};
  switch (spec.kind) {
    case FamilyKind::kElementary: j["size_exponent"] = spec.size_exponent; break;
    case FamilyKind::kHomogeneous: j["pivots"] = spec.pivots; break;
    case FamilyKind::kConsecutive: j["a"] = spec.a; j["k"] = spec.count; break;
    case FamilyKind::kAp: j["a"] = spec.a; j["s"] = spec.step; j["k"] = spec.count; break;
    case FamilyKind::kGap:
      j["gap"] = {{"a", spec.gap.a}, {"steps", spec.gap.steps}, {"lengths", spec.gap.lengths}};
      break;
    case FamilyKind::kUoh: j["pivots"] = spec.pivots; [[fallthrough]];
    case FamilyKind::kUoe: j["top"] = spec.top; j["eta"] = spec.eta; j["alpha"] = spec.alpha; break;
    case FamilyKind::kRandomSubset: j["pivots"] = spec.pivots; j["k"] = spec.count; break;
    case FamilyKind::kJstar: break;
  }
  return j;
}

FamilySpec family_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("family spec must be an object");
  FamilySpec s;
  s.kind = parse_family(get_field<std::string>(j, "kind"));
  s.levels = get_field<int>(j, "M");
  if (s.levels < 0 || s.levels > 62) throw InvalidInput("M must lie in [0, 62]");
  s.seed = get_or<std::uint64_t>(j, "seed", 0);
  s.size_exponent = get_or<int>(j, "size_exponent", 0);
  s.pivots = get_or<std::vector<int>>(j, "pivots", {});
  s.a = get_or<Index>(j, "a", 0);
  s.step = get_or<Index>(j, "s", 1);
  s.count = get_or<std::size_t>(j, "k", 1);
  s.top = get_or<int>(j, "top", 0);
  s.eta = get_or<std::vector<std::size_t>>(j, "eta", {});
  s.alpha = get_or<double>(j, "alpha", 2.0);
  if (j.contains("gap")) {
    const Json& g = j.at("gap");
    s.gap.a = get_or<Index>(g, "a", 0);
    s.gap.steps = get_field<std::vector<Index>>(g, "steps");
    s.gap.lengths = get_field<std::vector<Index>>(g, "lengths");
  }
  s.gap.modulus = Index{1} << s.levels;
  return s;
}

Json pivots_to_json(const PivotVector& r) { return std::vector<int>(r.begin(), r.end()); }

PivotVector pivots_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("pivots must be an array");
  try {
    return PivotVector(j.get<std::vector<int>>());
  } catch (const Json::exception&) {
    throw InvalidInput("pivots must be integers");
  }
}

PivotVector parse_pivot_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("bad pivot '" + item + "'");
    }
  }
  return PivotVector(out);
}

Json cost_to_json(const CostReport& c) {
  return {{"tree_build_bitops", c.tree_build_bitops},
          {"hidft_adds", c.hidft_adds},
          {"hidft_mults", c.hidft_mults},
          {"solve_adds", c.solve_adds},
          {"solve_mults", c.solve_mults},
          {"read_ops", c.read_ops},
          {"total", c.total()},
          {"bound_alg1bnd", c.bound_alg1bnd},
          {"bound_hidft", c.bound_hidft},
          {"samples_touched", c.samples_touched},
          {"systems_solved", c.systems_solved},
          {"dense_fallbacks", c.dense_fallbacks}};
}

Json hidft_to_json(const HiDftResult& res) {
  Json nodes = Json::array();
  for (std::size_t q = 0; q < res.nodes.size(); ++q)
    nodes.push_back({{"level", res.nodes[q].level},
                     {"residue", res.nodes[q].residue},
                     {"value", {res.values[q].real(), res.values[q].imag()}}});
  return {{"N", res.modulus}, {"pivots", pivots_to_json(res.pivots)}, {"height", res.height},
          {"shift", res.shift}, {"nodes", nodes}};
}

}  // namespace sdft
