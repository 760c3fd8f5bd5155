#include "ustat/kernel_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ustat {

namespace {

using nlohmann::json;

std::string join_counts_key(const std::vector<int>& sorted_tuple) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sorted_tuple.size(); ++i) {
    if (i) os << ',';
    os << sorted_tuple[i];
  }
  return os.str();
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw SpecError(path.empty() ? msg : path + ": " + msg);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Eigen::VectorXd require_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = require_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& prefix) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail(prefix.empty() ? item.key() : prefix + "." + item.key(), "unknown key");
}

FiniteDistribution parse_dist(const json& j) {
  if (!j.is_object()) fail("dist", "expected an object");
  reject_unknown_keys(j, {"values", "probs"}, "dist");
  if (!j.contains("values")) fail("dist.values", "missing key");
  if (!j.contains("probs")) fail("dist.probs", "missing key");
  try {
    return FiniteDistribution(require_number_array(j["values"], "dist.values"),
                              require_number_array(j["probs"], "dist.probs"));
  } catch (const std::invalid_argument& e) {
    fail("dist", e.what());
  }
}

std::vector<int> parse_entry_key(const std::string& key, int m, int alphabet) {
  const std::string path = "entries[" + key + "]";
  std::vector<int> tuple;
  std::istringstream is(key);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      fail(path, "malformed multiset key");
    }
    if (used != piece.size()) fail(path, "malformed multiset key");
    tuple.push_back(v);
  }
  if (static_cast<int>(tuple.size()) != m) fail(path, "key length does not match kernel order");
  if (!std::is_sorted(tuple.begin(), tuple.end())) fail(path, "indices must be sorted");
  for (int v : tuple)
    if (v < 0 || v >= alphabet) fail(path, "index outside alphabet");
  return tuple;
}

}  // namespace

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::table: return "table";
    case KernelKind::product: return "product";
    case KernelKind::sum_power: return "sum_power";
    case KernelKind::constant: return "constant";
    case KernelKind::remark_exponential: return "remark_exponential";
  }
  return "unknown";
}

bool KernelSpec::operator==(const KernelSpec& other) const {
  auto dist_equal = [](const std::optional<FiniteDistribution>& a,
                       const std::optional<FiniteDistribution>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->values() == b->values() && a->probs() == b->probs();
  };
  return kind == other.kind && m == other.m && dist_equal(dist, other.dist) &&
         entries == other.entries && r == other.r && c == other.c && k == other.k &&
         p == other.p;
}

KernelSpec parse_kernel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open kernel spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SpecError("kernel spec is not valid JSON: " + std::string(e.what()));
  }
  return parse_kernel_spec_json(j);
}

KernelSpec parse_kernel_spec_json(const json& j) {
  if (!j.is_object()) fail("", "kernel spec must be a JSON object");
  if (!j.contains("kind")) fail("kind", "missing key");
  if (!j["kind"].is_string()) fail("kind", "expected a string");
  const std::string kind_str = j["kind"].get<std::string>();

  KernelSpec spec;
  std::set<std::string> allowed = {"kind", "m"};
  if (kind_str == "table") {
    spec.kind = KernelKind::table;
    allowed.insert({"dist", "entries"});
  } else if (kind_str == "product") {
    spec.kind = KernelKind::product;
    allowed.insert("dist");
  } else if (kind_str == "sum_power") {
    spec.kind = KernelKind::sum_power;
    allowed.insert({"dist", "r"});
  } else if (kind_str == "constant") {
    spec.kind = KernelKind::constant;
    allowed.insert({"dist", "c"});
  } else if (kind_str == "remark_exponential") {
    spec.kind = KernelKind::remark_exponential;
    allowed.insert({"k", "p"});
  } else {
    fail("kind", "unknown kind: " + kind_str);
  }
  reject_unknown_keys(j, allowed, "");

  if (!j.contains("m")) fail("m", "missing key");
  spec.m = require_int(j["m"], "m");
  if (spec.m < 1) fail("m", "kernel order must be >= 1");

  if (spec.kind == KernelKind::remark_exponential) {
    if (!j.contains("k")) fail("k", "missing key");
    if (!j.contains("p")) fail("p", "missing key");
    spec.k = require_int(j["k"], "k");
    spec.p = require_number(j["p"], "p");
    if (spec.k < 0 || spec.k > spec.m) fail("k", "distinguished level must satisfy 0 <= k <= m");
    if (spec.p <= 2.0) fail("p", "moment order must exceed 2");
    return spec;
  }

  if (!j.contains("dist")) fail("dist", "missing key");
  spec.dist = parse_dist(j["dist"]);
  const int s = spec.dist->size();

  switch (spec.kind) {
    case KernelKind::table: {
      if (!j.contains("entries")) fail("entries", "missing key");
      if (!j["entries"].is_object()) fail("entries", "expected an object");
      for (const auto& item : j["entries"].items()) {
        std::vector<int> tuple = parse_entry_key(item.key(), spec.m, s);
        const double v = require_number(item.value(), "entries[" + item.key() + "]");
        if (!spec.entries.emplace(std::move(tuple), v).second)
          fail("entries[" + item.key() + "]", "duplicate multiset entry");
      }
      MultisetIndexer index(spec.m, s);
      if (static_cast<std::int64_t>(spec.entries.size()) != index.count()) {
        for (std::int64_t rnk = 0; rnk < index.count(); ++rnk) {
          std::vector<int> tuple = index.sorted_tuple_at(rnk);
          if (!spec.entries.count(tuple))
            fail("entries[" + join_counts_key(tuple) + "]", "missing multiset entry");
        }
      }
      break;
    }
    case KernelKind::sum_power:
      if (!j.contains("r")) fail("r", "missing key");
      spec.r = require_number(j["r"], "r");
      if (spec.r < 0.0) fail("r", "exponent must be >= 0");
      break;
    case KernelKind::constant:
      if (!j.contains("c")) fail("c", "missing key");
      spec.c = require_number(j["c"], "c");
      break;
    default:
      break;
  }
  return spec;
}

nlohmann::json kernel_spec_to_json(const KernelSpec& spec) {
  json j;
  j["kind"] = kernel_kind_name(spec.kind);
  j["m"] = spec.m;
  if (spec.kind == KernelKind::remark_exponential) {
    j["k"] = spec.k;
    j["p"] = spec.p;
    return j;
  }
  json d;
  d["values"] = std::vector<double>(spec.dist->values().begin(), spec.dist->values().end());
  d["probs"] = std::vector<double>(spec.dist->probs().begin(), spec.dist->probs().end());
  j["dist"] = std::move(d);
  switch (spec.kind) {
    case KernelKind::table: {
      json e = json::object();
      for (const auto& [tuple, v] : spec.entries) e[join_counts_key(tuple)] = v;
      j["entries"] = std::move(e);
      break;
    }
    case KernelKind::sum_power:
      j["r"] = spec.r;
      break;
    case KernelKind::constant:
      j["c"] = spec.c;
      break;
    default:
      break;
  }
  return j;
}

KernelTable build_kernel(const KernelSpec& spec, const FiniteDistribution& dist) {
  if (spec.kind == KernelKind::remark_exponential)
    throw std::invalid_argument(
        "build_kernel: remark_exponential is continuous; use the growth-study module");
  if (spec.dist && spec.dist->size() != dist.size())
    throw std::invalid_argument("build_kernel: alphabet size mismatch");
  const int s = dist.size();
  switch (spec.kind) {
    case KernelKind::table: {
      for (const auto& [tuple, v] : spec.entries) {
        (void)v;
        if (tuple.back() >= s) throw std::invalid_argument("build_kernel: alphabet size mismatch");
      }
      return KernelTable::from_function(spec.m, s, [&](const std::vector<int>& t) {
        auto it = spec.entries.find(t);
        if (it == spec.entries.end())
          throw SpecError("entries[" + [&] {
            std::string key;
            for (std::size_t i = 0; i < t.size(); ++i)
              key += (i ? "," : "") + std::to_string(t[i]);
            return key;
          }() + "]: missing multiset entry");
        return it->second;
      });
    }
    case KernelKind::product:
      return KernelTable::from_function(spec.m, s, [&](const std::vector<int>& t) {
        double prod = 1.0;
        for (int i : t) prod *= dist.value(i);
        return prod;
      });
    case KernelKind::sum_power:
      return KernelTable::from_function(spec.m, s, [&](const std::vector<int>& t) {
        double sum = 0.0;
        for (int i : t) sum += dist.value(i);
        if (sum < 0.0 && spec.r != std::floor(spec.r))
          throw std::domain_error("build_kernel: non-integer power of a negative sum");
        return std::pow(sum, spec.r);
      });
    case KernelKind::constant:
      return KernelTable::from_function(spec.m, s,
                                        [&](const std::vector<int>&) { return spec.c; });
    default:
      throw std::invalid_argument("build_kernel: unknown kind");
  }
}

}  // namespace ustat
