#include "spectral/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spectral::io {

namespace {

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_array()) throw ValidationError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(std::string("missing numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

void dump_to(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_to(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_to(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

PerturbedJacobi jacobi_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("operator must be a JSON object");
  return PerturbedJacobi(numbers(j, "a"), numbers(j, "b"));
}

json to_json(const PerturbedJacobi& jacobi) {
  return {{"a", std::vector<double>(jacobi.a_values().begin(), jacobi.a_values().end())},
          {"b", std::vector<double>(jacobi.b_values().begin(), jacobi.b_values().end())}};
}

SequenceRule rule_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("rule must be a JSON object");
  if (!j.contains("kind")) return SequenceRule::finite(jacobi_from_json(j));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") return SequenceRule::finite(jacobi_from_json(j));
  if (kind == "power") {
    const std::string target = j.value("target", std::string("b"));
    if (target != "a" && target != "b") throw ValidationError("power rule target must be \"a\" or \"b\"");
    return SequenceRule::power(number(j, "c"), number(j, "gamma"), target == "a" ? RuleTarget::a : RuleTarget::b);
  }
  if (kind == "alternating") return SequenceRule::alternating(number(j, "c"), number(j, "gamma"));
  if (kind == "exponential") return SequenceRule::exponential(number(j, "c"), number(j, "r"));
  throw ValidationError("unknown rule kind \"" + kind + "\"");
}

RealPolynomial polynomial_from_json(const json& j) {
  if (j.is_object()) return RealPolynomial(numbers(j, "L"));
  if (!j.is_array()) throw ValidationError("polynomial must be an array or {\"L\": [...]}");
  return RealPolynomial(numbers(json{{"L", j}}, "L"));
}

json to_json(const RealPolynomial& p) {
  return std::vector<double>(p.coefficients().begin(), p.coefficients().end());
}

SpectralMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("measure must be a JSON object");
  std::vector<PointMass> points;
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2) throw ValidationError("points must be [E, w] pairs");
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  std::vector<double> density = numbers(j, "density");
  if (j.contains("grid") && j.at("grid").get<std::size_t>() != density.size()) {
    throw ValidationError("grid does not match the density length");
  }
  return SpectralMeasure(std::move(points), std::move(density));
}

json to_json(const SpectralMeasure& measure) {
  json pts = json::array();
  for (const auto& p : measure.points()) pts.push_back({p.energy, p.weight});
  return {{"points", pts},
          {"density", std::vector<double>(measure.density().begin(), measure.density().end())},
          {"grid", measure.grid()}};
}

ContinuumPotential potential_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("potential must be a JSON object");
  std::vector<double> samples = numbers(j, "samples");
  const double h = number(j, "h");
  ContinuumPotential v(std::move(samples), h);
  if (j.contains("X") && std::abs(number(j, "X") - v.X()) > 1e-9 * std::max(1.0, v.X())) {
    throw ValidationError("X does not equal h (len(samples) - 1)");
  }
  return v;
}

json to_json(const ConditionReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries()) {
    entries.push_back({{"label", e.label},
                       {"value", e.value},
                       {"trace", e.trace},
                       {"verdict", std::string(to_string(e.verdict))},
                       {"note", e.note}});
  }
  return {{"title", report.title()}, {"entries", entries}, {"all_hold", report.all_hold()}};
}

std::string dump(const json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace spectral::io
