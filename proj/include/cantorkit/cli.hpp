#pragma once

// Command-line front end. run() is pure apart from reading input files and writing --out.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cantorkit/gauge.hpp"
#include "cantorkit/highdim.hpp"
#include "cantorkit/intersect.hpp"
#include "cantorkit/io.hpp"
#include "cantorkit/svg.hpp"
#include "cantorkit/thickness.hpp"

namespace cantorkit::cli {

using json = nlohmann::json;

enum ExitCode : int { Success = 0, NotCertified = 1, InputFailure = 2 };

struct RunResult {
  int exit_code = Success;
  json document;        // the ResultDocument (null on input errors)
  std::string out;      // text for stdout
  std::string err;      // text for stderr
};

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

namespace detail {

class Inputs {
 public:
  std::string read(const std::string& role, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io::InputError("--" + role + ": cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    digest_[role] = {{"path", path}, {"sha256", sha256_hex(bytes)}};
    return bytes;
  }

  template <typename F>
  auto parse(const std::string& role, const std::string& path, F&& parser) {
    const std::string bytes = read(role, path);
    try {
      return parser(bytes);
    } catch (const std::exception& e) {
      throw io::InputError(path + ": " + e.what());
    }
  }

  [[nodiscard]] const json& digest() const { return digest_; }

 private:
  json digest_ = json::object();
};

inline Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw io::InputError("--" + flag + ": " + e.what());
  }
}

inline VectorD flag_vector(const std::string& flag, const std::string& text) {
  VectorD v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(flag_rational(flag, part));
  if (v.empty()) throw io::InputError("--" + flag + ": empty vector");
  return v;
}

inline CantorPresentation one_dimensional(const io::SetDescription& d, const std::string& flag) {
  if (const auto* p = std::get_if<CantorPresentation>(&d)) return *p;
  throw io::InputError("--" + flag + ": expected a 1-D set (ifs1d or digits)");
}

inline json gaps_document(const CantorPresentation& set, std::size_t k) {
  json gaps = json::array();
  for (const auto& g : extract_gaps(set, k)) {
    json gj = io::to_json(g);
    gj["left_bridge"] = io::to_json(bridge_at(set, g, Side::Left, k).bridge);
    gj["right_bridge"] = io::to_json(bridge_at(set, g, Side::Right, k).bridge);
    gaps.push_back(gj);
  }
  return {{"depth", k}, {"hull", io::to_json(convex_hull(set))}, {"cover", io::to_json(depth_cover(set, k))},
          {"gaps", gaps}};
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::InputError("--out: cannot write " + path);
  out << bytes;
}

}  // namespace detail

/// args excludes the program name.
inline RunResult run(const std::vector<std::string>& args) {
  RunResult res;
  CLI::App app{"exact thickness, gap-lemma and avoidance toolkit", "cantorkit"};
  app.require_subcommand(1);

  std::string set_path, set2_path, matrix_path, gauge_path, path_path, out_path, annotate = "gaps";
  std::string epsilon_s, t_s, lambda_s = "1";
  std::size_t depth = 0;
  std::size_t thickness_depth = 2;
  long k = 1, imax = 20;
  std::size_t dim = 1;
  bool feng_wu = false;

  auto* thickness = app.add_subcommand("thickness", "Newhouse thickness at a depth");
  thickness->add_option("--set", set_path, "set description")->required();
  thickness->add_option("--depth", depth, "working depth")->default_val(3);
  thickness->add_flag("--feng-wu", feng_wu, "also report the Feng-Wu probes");

  auto* gaps = app.add_subcommand("gaps", "gaps and their bridges at a depth");
  gaps->add_option("--set", set_path)->required();
  gaps->add_option("--depth", depth)->default_val(3);

  auto* intersect = app.add_subcommand("intersect", "gap-lemma certificate plus refinement oracle");
  intersect->add_option("--set", set_path)->required();
  intersect->add_option("--set2", set2_path)->required();
  intersect->add_option("--depth", depth, "oracle depth")->default_val(12);
  intersect->add_option("--thickness-depth", thickness_depth)->default_val(2);

  auto* avoid = app.add_subcommand("avoid", "certify that t + lambda*J meets the avoiding set");
  avoid->add_option("--set", set_path)->required();
  avoid->add_option("--epsilon", epsilon_s)->required();
  avoid->add_option("--t", t_s)->required();
  avoid->add_option("--lambda", lambda_s)->required();
  avoid->add_option("--depth", depth, "oracle depth")->default_val(12);
  avoid->add_option("--thickness-depth", thickness_depth)->default_val(2);

  auto* project = app.add_subcommand("project", "first-coordinate projection of T(attractor)");
  project->add_option("--set", set_path)->required();
  project->add_option("--matrix", matrix_path)->required();
  project->add_option("--epsilon", epsilon_s, "build a witness for this epsilon0");
  project->add_option("--t", t_s, "translation vector, comma separated");
  project->add_option("--depth", depth, "oracle depth")->default_val(12);
  project->add_option("--thickness-depth", thickness_depth)->default_val(2);

  auto* gauge_sum = app.add_subcommand("gauge-sum", "cover budget sum of h(W(2^-(i+k)))");
  gauge_sum->add_option("--gauge", gauge_path, "gauge file (default: identity)");
  gauge_sum->add_option("--k", k)->default_val(1);
  gauge_sum->add_option("--imax", imax)->default_val(20);
  gauge_sum->add_option("--dim", dim)->default_val(1);

  auto* hyperplane = app.add_subcommand("hyperplane", "coordinate hyperplane hit by a polygonal path");
  hyperplane->add_option("--path", path_path)->required();

  auto* svg = app.add_subcommand("svg", "gap / bridge diagram");
  svg->add_option("--set", set_path)->required();
  svg->add_option("--depth", depth)->default_val(2);
  svg->add_option("--annotate", annotate)->check(CLI::IsMember({"gaps", "bridges"}))->default_val("gaps");

  for (auto* sub : app.get_subcommands({}))
    if (sub != svg) sub->add_option("--out", out_path, "write the result document here");
  svg->add_option("--out", out_path, "write the SVG here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    res.out = o.str();
    res.err = er.str();
    res.exit_code = code == 0 ? Success : InputFailure;
    return res;
  }

  detail::Inputs inputs;
  json doc;
  std::string payload;  // svg bytes when rendering
  try {
    auto set_of = [&](const std::string& role, const std::string& path) {
      return inputs.parse(role, path, [](const std::string& b) { return io::parse_setfile(b); });
    };

    if (thickness->parsed()) {
      const auto set = detail::one_dimensional(set_of("set", set_path), "set");
      doc = io::to_json(newhouse_thickness(set, depth));
      if (feng_wu) doc["feng_wu"] = io::to_json(feng_wu_thickness(set, depth));
    } else if (gaps->parsed()) {
      doc = detail::gaps_document(detail::one_dimensional(set_of("set", set_path), "set"), depth);
    } else if (intersect->parsed()) {
      const auto a = detail::one_dimensional(set_of("set", set_path), "set");
      const auto b = detail::one_dimensional(set_of("set2", set2_path), "set2");
      const auto oracle = refine_refute(a, b, depth);
      if (oracle.refuted()) {
        doc = io::to_json(oracle);
        res.exit_code = NotCertified;
      } else {
        const auto verdict = gap_lemma_certify(a, b, thickness_depth);
        doc = io::to_json(verdict);
        doc["oracle"] = io::to_json(oracle);
        if (!verdict.certified()) res.exit_code = NotCertified;
      }
    } else if (avoid->parsed()) {
      const auto J = detail::one_dimensional(set_of("set", set_path), "set");
      const Rational eps = detail::flag_rational("epsilon", epsilon_s);
      const Rational t = detail::flag_rational("t", t_s);
      const Rational lambda = detail::flag_rational("lambda", lambda_s);
      if (lambda.is_zero()) throw io::InputError("--lambda: lambda = 0");
      const auto w = avoid_witness(J, AffineMap1D(t, lambda), eps, depth, thickness_depth);
      doc = io::to_json(w);
      if (!w.valid()) res.exit_code = NotCertified;
    } else if (project->parsed()) {
      const auto d = set_of("set", set_path);
      const auto* ifs = std::get_if<IFSdD>(&d);
      if (!ifs) throw io::InputError("--set: expected an ifsdd set");
      const auto T = inputs.parse("matrix", matrix_path, [](const std::string& b) { return io::parse_matrix(b); });
      const auto proj = project_ifs(*ifs, T);
      doc["projection"] = io::to_json(proj);
      doc["nondegenerate"] = nondegenerate_check(*ifs).nondegenerate;
      if (proj.ifs) {
        const CantorPresentation p(*proj.ifs);
        doc["hull"] = io::to_json(convex_hull(p));
        doc["thickness"] = io::to_json(newhouse_thickness(p, thickness_depth));
      }
      if (!epsilon_s.empty()) {
        const Rational eps = detail::flag_rational("epsilon", epsilon_s);
        VectorD t = t_s.empty() ? VectorD(ifs->dim()) : detail::flag_vector("t", t_s);
        const auto w = projective_witness(*ifs, T, t, eps, depth, thickness_depth);
        doc["witness"] = io::to_json(w);
        if (!w.valid()) res.exit_code = NotCertified;
      }
    } else if (gauge_sum->parsed()) {
      const GaugeFn h = gauge_path.empty()
                            ? GaugeFn::identity()
                            : inputs.parse("gauge", gauge_path, [](const std::string& b) { return io::parse_gauge(b); });
      doc = io::to_json(gdelta_cover_sum(h, k, imax, dim));
      doc["expected"] = (pow(Rational(2), -k) * (Rational(1) - pow(Rational(2), -imax))).str();
    } else if (hyperplane->parsed()) {
      const auto path = inputs.parse("path", path_path, [](const std::string& b) { return io::parse_path(b); });
      doc = io::to_json(hyperplane_hit(path));
    } else if (svg->parsed()) {
      const auto set = detail::one_dimensional(set_of("set", set_path), "set");
      if (depth == 0) throw io::InputError("--depth: svg needs depth >= 1");
      payload = render_svg(set, depth, parse_annotation(annotate));
      doc = {{"depth", depth}, {"annotate", annotate}, {"svg_sha256", sha256_hex(payload)}};
    }
  } catch (const std::exception& e) {
    res.exit_code = InputFailure;
    res.err = std::string("error: ") + e.what() + "\n";
    res.document = nullptr;
    return res;
  }

  doc["command"] = {{"subcommand", app.get_subcommands().front()->get_name()}, {"argv", args}};
  doc["inputs"] = inputs.digest();
  res.document = doc;
  const std::string text = doc.dump(2) + "\n";
  try {
    if (svg->parsed()) {
      if (out_path.empty()) {
        res.out = payload;
      } else {
        detail::write_file(out_path, payload);
        res.out = text;
      }
    } else if (out_path.empty()) {
      res.out = text;
    } else {
      detail::write_file(out_path, text);
    }
  } catch (const std::exception& e) {
    res.exit_code = InputFailure;
    res.err = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace cantorkit::cli
