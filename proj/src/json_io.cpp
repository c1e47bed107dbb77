#include "json_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace apfire {

namespace {

using nlohmann::json;

DyadicKind dyadic_kind_from_name(const std::string &name) {
  if (name == "mu_no_mu") return DyadicKind::MuNoMu;
  if (name == "meanless_series") return DyadicKind::MeanlessSeries;
  if (name == "unbounded_mean_series") return DyadicKind::UnboundedMeanSeries;
  if (name == "alternating_offsets") return DyadicKind::AlternatingOffsets;
  throw std::invalid_argument("signal json: unknown dyadic name '" + name + "'");
}

const char *dyadic_name(DyadicKind kind) {
  switch (kind) {
    case DyadicKind::MuNoMu: return "mu_no_mu";
    case DyadicKind::MeanlessSeries: return "meanless_series";
    case DyadicKind::UnboundedMeanSeries: return "unbounded_mean_series";
    case DyadicKind::AlternatingOffsets: return "alternating_offsets";
  }
  return "?";
}

double require_number(const json &j, const char *field) {
  if (!j.contains(field) || !j[field].is_number())
    throw std::invalid_argument(std::string("signal json: missing numeric '") + field +
                                "'");
  return j[field].get<double>();
}

SignalPtr parse(const json &j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("signal json: node must be an object with a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "const") {
    return Signal::constant(require_number(j, "value"));
  }
  if (kind == "trig") {
    if (!j.contains("terms") || !j["terms"].is_array())
      throw std::invalid_argument("signal json: trig needs a 'terms' array");
    std::vector<TrigTerm> terms;
    for (const auto &t : j["terms"]) {
      if (!t.is_array() || t.size() != 3)
        throw std::invalid_argument("signal json: trig term must be [a, b, lambda]");
      terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
    return Signal::trig(std::move(terms));
  }
  if (kind == "piecewise_periodic") {
    double period = require_number(j, "period");
    if (!j.contains("pieces") || !j["pieces"].is_array())
      throw std::invalid_argument("signal json: piecewise_periodic needs 'pieces'");
    std::vector<std::pair<double, double>> pieces;
    for (const auto &p : j["pieces"]) {
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument("signal json: piece must be [breakpoint, value]");
      pieces.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return Signal::piecewise_periodic(period, std::move(pieces));
  }
  if (kind == "dyadic") {
    if (!j.contains("name") || !j["name"].is_string())
      throw std::invalid_argument("signal json: dyadic needs a 'name'");
    int terms = Signal::kAllTerms;
    if (j.contains("terms")) terms = j["terms"].get<int>();
    return Signal::dyadic(dyadic_kind_from_name(j["name"].get<std::string>()), terms);
  }
  if (kind == "exp") {
    return Signal::exponential(require_number(j, "coeff"), require_number(j, "rate"));
  }
  if (kind == "sum") {
    if (!j.contains("children") || !j["children"].is_array())
      throw std::invalid_argument("signal json: sum needs 'children'");
    std::vector<SignalPtr> children;
    for (const auto &c : j["children"]) children.push_back(parse(c));
    return Signal::sum(std::move(children));
  }
  if (kind == "scale") {
    if (!j.contains("child"))
      throw std::invalid_argument("signal json: scale needs a 'child'");
    return Signal::scale(require_number(j, "factor"), parse(j["child"]));
  }
  if (kind == "shift") {
    if (!j.contains("child"))
      throw std::invalid_argument("signal json: shift needs a 'child'");
    return Signal::shift(require_number(j, "tau"), parse(j["child"]));
  }
  if (kind == "clamp") {
    if (!j.contains("child"))
      throw std::invalid_argument("signal json: clamp needs a 'child'");
    return Signal::clamp(require_number(j, "limit"), parse(j["child"]));
  }
  throw std::invalid_argument("signal json: unknown kind '" + kind + "'");
}

json render(const Signal &sig) {
  return std::visit(
      [&](const auto &n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return json{{"kind", "const"}, {"value", n.value}};
        } else if constexpr (std::is_same_v<T, TrigPolyNode>) {
          json terms = json::array();
          for (const auto &t : n.terms)
            terms.push_back(json::array({t.sin_coeff, t.cos_coeff, t.freq}));
          return json{{"kind", "trig"}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, PiecewisePeriodicNode>) {
          json pieces = json::array();
          for (std::size_t i = 0; i < n.breaks.size(); ++i)
            pieces.push_back(json::array({n.breaks[i], n.values[i]}));
          return json{{"kind", "piecewise_periodic"}, {"period", n.period},
                      {"pieces", pieces}};
        } else if constexpr (std::is_same_v<T, DyadicNode>) {
          json out{{"kind", "dyadic"}, {"name", dyadic_name(n.kind)}};
          if (n.max_terms != Signal::kAllTerms) out["terms"] = n.max_terms;
          return out;
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          return json{{"kind", "exp"}, {"coeff", n.coeff}, {"rate", n.rate}};
        } else if constexpr (std::is_same_v<T, SumNode>) {
          json children = json::array();
          for (const auto &c : n.children) children.push_back(render(*c));
          return json{{"kind", "sum"}, {"children", children}};
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return json{{"kind", "scale"}, {"factor", n.factor},
                      {"child", render(*n.child)}};
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return json{{"kind", "shift"}, {"tau", n.tau}, {"child", render(*n.child)}};
        } else {  // ClampNode
          return json{{"kind", "clamp"}, {"limit", n.limit},
                      {"child", render(*n.child)}};
        }
      },
      sig.node());
}

}  // namespace

SignalPtr signal_from_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw std::invalid_argument(std::string("signal json: ") + e.what());
  }
  return parse(doc);
}

std::string signal_to_json(const Signal &sig) { return render(sig).dump(); }

SignalPtr signal_preset(const std::string &name) {
  if (name == "ex4_3")
    return Signal::piecewise_periodic(2.0, {{0.0, 2.0}, {1.0, 1.0}});
  if (name == "ex3_3") return Signal::dyadic(DyadicKind::MeanlessSeries);
  if (name == "ex3_4") return Signal::dyadic(DyadicKind::UnboundedMeanSeries);
  if (name == "ex4_12" || name == "mu_no_mu")
    return Signal::dyadic(DyadicKind::MuNoMu);
  if (name == "ex4_13") return Signal::dyadic(DyadicKind::AlternatingOffsets);
  if (name == "ex6_4")
    return Signal::trig({{0.0, 2.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, std::sqrt(2.0)}});
  if (name == "ex6_13_f")
    return Signal::piecewise_periodic(std::log(3.0), {{0.0, 2.0}, {std::log(2.0), 3.0}});
  if (name == "ex6_13_g")
    return Signal::constant(3.0 - std::log(2.0) / std::log(3.0));
  return nullptr;
}

}  // namespace apfire
