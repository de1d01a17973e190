#pragma once

// JSON set / matrix / gauge / path descriptions and result serialisation.
// Rationals always travel as strings "p/q" or "n".

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/gauge.hpp"
#include "cantorkit/highdim.hpp"
#include "cantorkit/intersect.hpp"
#include "cantorkit/thickness.hpp"

namespace cantorkit::io {

using json = nlohmann::json;

/// Malformed or invalid input document; the message names the offending field.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using SetDescription = std::variant<CantorPresentation, IFSdD>;

namespace detail {

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("syntax error: ") + e.what());
  }
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + (where.empty() ? "" : ".") + key + ": missing field");
  return *it;
}

inline Rational rational(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a rational string \"p/q\"");
}

inline int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<Rational> rational_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename F>
auto checked(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(where.empty() ? std::string(e.what()) : where + "." + e.what());
  }
}

inline json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

}  // namespace detail

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const Interval& iv) { return json::array({iv.lo.str(), iv.hi.str()}); }
inline json to_json(const IntervalUnion& u) {
  json a = json::array();
  for (const auto& iv : u.intervals()) a.push_back(to_json(iv));
  return a;
}
inline json to_json(const AffineMap1D& m) { return {{"t", m.t.str()}, {"lambda", m.lambda.str()}}; }

inline CantorPresentation parse_presentation(const json& doc) {
  using namespace detail;
  const std::string type = field(doc, "type", "").is_string() ? doc["type"].get<std::string>() : "";
  std::optional<AffineMap1D> post;
  if (doc.contains("post_map")) {
    const json& pm = doc["post_map"];
    Rational t = rational(field(pm, "t", "post_map"), "post_map.t");
    Rational l = rational(field(pm, "lambda", "post_map"), "post_map.lambda");
    if (l.is_zero()) throw InputError("post_map.lambda: lambda = 0");
    post = AffineMap1D(t, l);
  }
  if (type == "ifs1d") {
    const json& maps = field(doc, "maps", "");
    if (!maps.is_array()) throw InputError("maps: expected an array");
    std::vector<ContractionMap> out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const std::string w = "maps[" + std::to_string(i) + "]";
      out.push_back({rational(field(maps[i], "rho", w), w + ".rho"), rational(field(maps[i], "b", w), w + ".b")});
    }
    return checked("", [&] { return CantorPresentation(IFS1D(std::move(out)), post); });
  }
  if (type == "digits") {
    std::vector<DigitLevel> levels;
    if (doc.contains("levels")) {
      const json& lv = doc["levels"];
      if (!lv.is_array()) throw InputError("levels: expected an array");
      for (std::size_t i = 0; i < lv.size(); ++i) {
        const std::string w = "levels[" + std::to_string(i) + "]";
        levels.push_back({integer(field(lv[i], "base", w), w + ".base"),
                          int_list(field(lv[i], "digits", w), w + ".digits")});
      }
    } else {
      const int base = integer(field(doc, "base", ""), "base");
      if (doc.contains("omit")) {
        const int omit = integer(doc["omit"], "omit");
        return checked("omit", [&] {
          auto ds = DigitSetPresentation::omitting(base, omit);
          return CantorPresentation(std::move(ds), post);
        });
      }
      levels.push_back({base, int_list(field(doc, "digits", ""), "digits")});
    }
    return checked("", [&] { return CantorPresentation(DigitSetPresentation(std::move(levels)), post); });
  }
  throw InputError("type: expected \"ifs1d\" or \"digits\", got \"" + type + "\"");
}

inline IFSdD parse_ifsdd(const json& doc) {
  using namespace detail;
  const int dim = integer(field(doc, "dim", ""), "dim");
  if (dim < 2) throw InputError("dim: must be >= 2");
  const json& maps = field(doc, "maps", "");
  if (!maps.is_array()) throw InputError("maps: expected an array");
  std::vector<ContractionMapD> out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string w = "maps[" + std::to_string(i) + "]";
    out.push_back({rational(field(maps[i], "rho", w), w + ".rho"), rational_list(field(maps[i], "b", w), w + ".b")});
  }
  return checked("", [&] { return IFSdD(static_cast<std::size_t>(dim), std::move(out)); });
}

/// Parses a set description: {"type": "ifs1d" | "digits" | "ifsdd", ...}.
inline SetDescription parse_setfile(std::string_view text) {
  json doc = detail::parse_document(text);
  if (!doc.is_object()) throw InputError("expected a JSON object");
  const json& type = detail::field(doc, "type", "");
  if (type.is_string() && type.get<std::string>() == "ifsdd") return parse_ifsdd(doc);
  return parse_presentation(doc);
}

inline json serialize(const CantorPresentation& set) {
  json out;
  if (const auto* ifs = std::get_if<IFS1D>(&set.generator())) {
    out["type"] = "ifs1d";
    json maps = json::array();
    for (const auto& m : ifs->maps()) maps.push_back({{"rho", m.rho.str()}, {"b", m.b.str()}});
    out["maps"] = maps;
  } else {
    const auto& ds = std::get<DigitSetPresentation>(set.generator());
    out["type"] = "digits";
    if (ds.is_fixed_base()) {
      out["base"] = ds.levels()[0].base;
      out["digits"] = ds.levels()[0].digits;
    } else {
      json lv = json::array();
      for (const auto& l : ds.levels()) lv.push_back({{"base", l.base}, {"digits", l.digits}});
      out["levels"] = lv;
    }
  }
  if (set.post_map()) out["post_map"] = to_json(*set.post_map());
  return out;
}

inline json serialize(const IFSdD& ifs) {
  json maps = json::array();
  for (const auto& m : ifs.maps()) maps.push_back({{"rho", m.rho.str()}, {"b", detail::rationals(m.b)}});
  return {{"type", "ifsdd"}, {"dim", ifs.dim()}, {"maps", maps}};
}

inline json serialize(const SetDescription& d) {
  return std::visit([](const auto& s) { return serialize(s); }, d);
}

/// {"matrix": [[...], ...]} or a bare row-major array of rows.
inline LinearMapD parse_matrix(std::string_view text) {
  json doc = detail::parse_document(text);
  const json& rows = doc.is_object() ? detail::field(doc, "matrix", "") : doc;
  if (!rows.is_array() || rows.empty()) throw InputError("matrix: expected a non-empty array of rows");
  std::vector<Rational> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto row = detail::rational_list(rows[r], "matrix[" + std::to_string(r) + "]");
    if (row.size() != rows.size())
      throw InputError("matrix[" + std::to_string(r) + "]: expected " + std::to_string(rows.size()) + " entries");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return detail::checked("matrix", [&] { return LinearMapD(rows.size(), std::move(entries)); });
}

inline json serialize(const LinearMapD& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

/// {"breakpoints": [["x","y"], ...]}
inline GaugeFn parse_gauge(std::string_view text) {
  json doc = detail::parse_document(text);
  const json& pts = detail::field(doc, "breakpoints", "");
  if (!pts.is_array()) throw InputError("breakpoints: expected an array");
  std::vector<Breakpoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto xy = detail::rational_list(pts[i], "breakpoints[" + std::to_string(i) + "]");
    if (xy.size() != 2) throw InputError("breakpoints[" + std::to_string(i) + "]: expected [x, y]");
    out.push_back({xy[0], xy[1]});
  }
  return detail::checked("", [&] { return GaugeFn(std::move(out)); });
}

inline json serialize(const GaugeFn& h) {
  json pts = json::array();
  for (const auto& p : h.breakpoints()) pts.push_back({p.x.str(), p.y.str()});
  return {{"breakpoints", pts}};
}

/// {"diameters": ["p/q", ...]}
inline std::vector<Rational> parse_cover(std::string_view text) {
  json doc = detail::parse_document(text);
  return detail::rational_list(detail::field(doc, "diameters", ""), "diameters");
}

/// {"vertices": [["x1","x2",...], ...]}
inline PolylinePath parse_path(std::string_view text) {
  json doc = detail::parse_document(text);
  const json& v = detail::field(doc, "vertices", "");
  if (!v.is_array()) throw InputError("vertices: expected an array");
  PolylinePath path;
  for (std::size_t i = 0; i < v.size(); ++i) path.push_back(detail::rational_list(v[i], "vertices[" + std::to_string(i) + "]"));
  return path;
}

inline json serialize(const PolylinePath& path) {
  json v = json::array();
  for (const auto& p : path) v.push_back(detail::rationals(p));
  return {{"vertices", v}};
}

// ---- results --------------------------------------------------------------------------------

inline json to_json(const GapRecord& g) {
  return {{"lo", g.lo.str()}, {"hi", g.hi.str()}, {"length", g.length().str()}, {"birth_depth", g.birth_depth}};
}

inline json to_json(const BridgeRecord& b) {
  return {{"gap", to_json(b.gap)},
          {"boundary_point", b.boundary_point.str()},
          {"side", to_string(b.side)},
          {"bridge", to_json(b.bridge)},
          {"ratio", b.ratio().str()}};
}

inline json to_json(const ThicknessValue& t) { return t.str(); }

inline json to_json(const ThicknessReport& r) {
  json out{{"tau", r.tau.str()},
           {"exact", r.exact},
           {"certificate", to_string(r.certificate)},
           {"depth_used", r.depth_used}};
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

inline json to_json(const FengWuReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    json pj{{"x", p.x.str()}, {"r", p.r.str()}, {"value", p.value.str()}, {"exact", p.exact},
            {"kind", to_string(p.kind)}, {"claim_holds", p.claim_holds}};
    if (p.bridge) pj["newhouse_ratio"] = p.bridge->ratio().str();
    probes.push_back(pj);
  }
  return {{"tau_fw_upper", r.tau_upper.str()},
          {"witness_probe", r.witness ? json(*r.witness) : json(nullptr)},
          {"newhouse_infinite", r.newhouse_infinite},
          {"claim_holds", r.claim_holds()},
          {"depth_used", r.depth_used},
          {"probes", probes}};
}

inline json to_json(const LinkingCheck& l) {
  return {{"hull1", to_json(l.hull1)}, {"hull2", to_json(l.hull2)}, {"hulls_overlap", l.hulls_overlap},
          {"o1", l.o1.str()},          {"o2", l.o2.str()},          {"i1", l.i1.str()},
          {"i2", l.i2.str()},          {"o1_le_i2", l.o1_le_i2},    {"o2_le_i1", l.o2_le_i1},
          {"linked", l.linked()}};
}

inline json to_json(const IntersectionVerdict& v) {
  json out{{"verdict", to_string(v.kind)}, {"depth", v.depth}};
  if (v.tau1) out["tau1"] = to_json(*v.tau1);
  if (v.tau2) out["tau2"] = to_json(*v.tau2);
  if (v.tau_product) out["tau_product"] = to_json(*v.tau_product);
  if (v.linking) out["linking"] = to_json(*v.linking);
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (v.witness) out["witness"] = {{"cylinder1", to_json(v.witness->first)}, {"cylinder2", to_json(v.witness->second)}};
  return out;
}

/// Everything needed to re-check the certificate without rerunning the construction.
inline json to_json(const AvoidWitness& w) {
  json out{{"N", w.base.N},
           {"j", w.base.j},
           {"epsilon0", w.base.epsilon0.str()},
           {"tau_K", w.base.tau_K.str()},
           {"tau_J", w.tau_J.tau.str()},
           {"n", w.n},
           {"ell", w.ell.get_str()},
           {"copy", to_json(w.copy)},
           {"K1", serialize(w.K1)},
           {"K2", serialize(w.K2)},
           {"hull_K1", to_json(convex_hull(w.K1))},
           {"hull_K2", to_json(convex_hull(w.K2))},
           {"verdict", to_json(w.verdict)},
           {"oracle", to_json(w.oracle)},
           {"oracle_depth", w.oracle_depth},
           {"valid", w.valid()}};
  if (w.verdict.linking) {
    out["o1"] = w.verdict.linking->o1.str();
    out["o2"] = w.verdict.linking->o2.str();
    out["i1"] = w.verdict.linking->i1.str();
    out["i2"] = w.verdict.linking->i2.str();
  }
  if (w.verdict.tau_product) out["tau_product"] = to_json(*w.verdict.tau_product);
  return out;
}

inline json to_json(const ProjectedIFS& p) {
  json maps = json::array();
  for (std::size_t i = 0; i < p.maps.size(); ++i)
    maps.push_back({{"rho", p.maps[i].rho.str()}, {"b", p.maps[i].b.str()}, {"multiplicity", p.multiplicity[i]}});
  return {{"maps", maps}, {"degenerate", p.degenerate}};
}

inline json to_json(const HyperplaneHit& h) {
  return {{"axis", h.axis}, {"r", h.r.str()}, {"point", detail::rationals(h.point)}, {"segment", h.segment}};
}

inline json to_json(const CoverSumResult& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"s", t.s.str()}, {"W", t.W.str()}, {"h_of_W", t.h_of_W.str()}});
  return {{"sum", r.sum.str()}, {"dimension", r.dimension}, {"cube_side", "W/sqrt(" + std::to_string(r.dimension) + ")"},
          {"terms", terms}};
}

}  // namespace cantorkit::io
