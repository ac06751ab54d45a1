#include "harness/problem_io.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <json.hpp>

#include "bils/error.hpp"

namespace bils::harness {

namespace {

using nlohmann::json;

template <typename Range, typename F>
std::string json_array(const Range& values, F&& format_one) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ',';
    out += format_one(v);
    first = false;
  }
  out += ']';
  return out;
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorCode::kParseError, fmt::format("missing key '{}'", key));
  return *it;
}

std::size_t read_count(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw Error(ErrorCode::kParseError, fmt::format("'{}' must be a positive integer", key));
  }
  return v.get<std::size_t>();
}

std::vector<double> read_reals(const json& doc, const char* key, std::size_t expected) {
  const json& v = require(doc, key);
  if (!v.is_array() || v.size() != expected) {
    throw Error(ErrorCode::kParseError,
                fmt::format("'{}' must be an array of {} numbers", key, expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& e : v) {
    if (!e.is_number()) throw Error(ErrorCode::kParseError, fmt::format("'{}' holds a non-number", key));
    out.push_back(e.get<double>());
  }
  return out;
}

IntVector read_ints(const json& doc, const char* key, std::size_t expected) {
  const json& v = require(doc, key);
  if (!v.is_array() || v.size() != expected) {
    throw Error(ErrorCode::kParseError,
                fmt::format("'{}' must be an array of {} integers", key, expected));
  }
  IntVector out;
  out.reserve(expected);
  for (const auto& e : v) {
    if (!e.is_number_integer()) {
      throw Error(ErrorCode::kParseError, fmt::format("'{}' holds a non-integer", key));
    }
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string problem_to_json(const BilsProblem& problem) {
  const auto real = [](double v) { return format_real(v); };
  const auto integer = [](std::int64_t v) { return fmt::format("{}", v); };
  return fmt::format(R"({{"m":{},"n":{},"H":{},"y":{},"l":{},"u":{}}})", problem.m(),
                     problem.n(), json_array(problem.h().data(), real),
                     json_array(problem.y(), real), json_array(problem.box().lowers(), integer),
                     json_array(problem.box().uppers(), integer)) +
         "\n";
}

BilsProblem problem_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "problem file must be an object");
  const std::size_t m = read_count(doc, "m");
  const std::size_t n = read_count(doc, "n");
  auto h = read_reals(doc, "H", m * n);
  auto y = read_reals(doc, "y", m);
  auto l = read_ints(doc, "l", n);
  auto u = read_ints(doc, "u", n);
  return BilsProblem(Mat(m, n, std::move(h)), std::move(y),
                     BoxConstraint(std::move(l), std::move(u)));
}

std::string solve_result_to_json(const SolveResult& result, Ordering ordering,
                                 const Permutation& perm) {
  const auto& s = result.stats;
  return fmt::format(
             R"({{"alg":"{}","n":{},"x":[{}],"residual":{},"nodes":{},"nodes_per_level":[{}],)"
             R"("leaves":{},"radius_updates":{},"prune_events":{},"perm":[{}]}})",
             to_string(ordering), result.x.size(), fmt::join(result.x, ","),
             format_real(result.residual), s.total_nodes(), fmt::join(s.nodes_per_level, ","),
             s.leaves_found, s.radius_updates, s.prune_events, fmt::join(perm.values(), ",")) +
         "\n";
}

}  // namespace bils::harness
