#include "natquant/io.hpp"

#include <fstream>
#include <sstream>

namespace natquant {

namespace {

Rational rational_field(const nlohmann::json& j, const std::string& field) {
  if (!j.is_string()) {
    throw ParseError("field '" + field + "' must be a rational string");
  }
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
}

std::vector<std::uint64_t> parse_permutation(const std::string& csv) {
  std::vector<std::uint64_t> perm;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      perm.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry '" + item + "'");
    }
  }
  if (perm.empty()) throw ParseError("empty permutation");
  return perm;
}

}  // namespace

DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("head")) {
    throw ParseError("distribution must be an object with a 'head' array");
  }
  std::vector<Rational> head;
  for (const auto& entry : j.at("head")) {
    head.push_back(rational_field(entry, "head"));
  }
  std::optional<GeometricTail> tail;
  if (j.contains("tail") && !j.at("tail").is_null()) {
    const auto& t = j.at("tail");
    GeometricTail g;
    if (!t.contains("start") || !t.at("start").is_number_unsigned()) {
      throw ParseError("tail.start must be a natural number");
    }
    g.start = t.at("start").get<std::uint64_t>();
    g.coeff = t.contains("coeff") ? rational_field(t.at("coeff"), "tail.coeff")
                                  : Rational(1);
    g.ratio = t.contains("ratio") ? rational_field(t.at("ratio"), "tail.ratio")
                                  : Rational(1, 2);
    tail = std::move(g);
  }
  DiscreteDistribution d(std::move(head), std::move(tail));
  validate(d);
  return d;
}

nlohmann::ordered_json distribution_to_json(const DiscreteDistribution& d) {
  nlohmann::ordered_json j;
  j["head"] = nlohmann::ordered_json::array();
  for (const auto& p : d.head()) j["head"].push_back(fraction_string(p));
  if (d.has_tail()) {
    const auto& t = *d.tail();
    j["tail"] = {{"start", t.start},
                 {"coeff", fraction_string(t.coeff)},
                 {"ratio", fraction_string(t.ratio)}};
  }
  return j;
}

DiscreteDistribution resolve_distribution(const std::string& spec) {
  if (spec == "distA" || spec == "distB" || spec == "distC" ||
      spec == "geometric") {
    return paper_fixture(spec).dist;
  }
  if (spec.rfind("defn:", 0) == 0) {
    return DiscreteDistribution::from_permutation(
        parse_permutation(spec.substr(5)));
  }
  if (!spec.empty() && spec.front() == '{') {
    nlohmann::json j = nlohmann::json::parse(spec, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed inline JSON");
    return distribution_from_json(j);
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open distribution file '" + spec + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("malformed JSON in file '" + spec + "'");
  }
  return distribution_from_json(j);
}

nlohmann::ordered_json solve_result_to_json(const DiscreteDistribution& d,
                                            const SolveResult& r,
                                            unsigned digits) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["vn"] = fraction_string(r.vn);
  j["vn_decimal"] = decimal_string(r.vn, digits);
  j["optima"] = nlohmann::ordered_json::array();
  for (const auto& [partition, quantizer] : r.optima) {
    nlohmann::ordered_json o;
    o["boundaries"] = partition.boundaries;
    o["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : partition.blocks(d)) {
      o["blocks"].push_back(block_string(b));
    }
    o["centroids"] = nlohmann::ordered_json::array();
    for (const auto& c : quantizer.points) {
      o["centroids"].push_back(fraction_string(c));
    }
    j["optima"].push_back(std::move(o));
  }
  j["truncation_used"] = r.truncation_used;
  return j;
}

nlohmann::ordered_json conjecture_report_to_json(const ConjectureReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["holds"] = r.holds;
  j["missing_points"] = r.missing_points;
  j["optima"] = nlohmann::ordered_json::array();
  for (const auto& [partition, quantizer] : r.witness) {
    nlohmann::ordered_json o;
    o["boundaries"] = partition.boundaries;
    o["centroids"] = nlohmann::ordered_json::array();
    for (const auto& c : quantizer.points) {
      o["centroids"].push_back(fraction_string(c));
    }
    j["optima"].push_back(std::move(o));
  }
  return j;
}

nlohmann::ordered_json dimension_sweep_to_json(const DimensionSweep& s,
                                               unsigned digits) {
  (void)digits;  // samples are rendered at sweep time
  nlohmann::ordered_json j;
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& sample : s.samples) {
    j["samples"].push_back({{"n", sample.n},
                            {"vn", fraction_string(sample.vn)},
                            {"dn", sample.dn_string}});
  }
  j["skipped"] = s.skipped;
  return j;
}

}  // namespace natquant
