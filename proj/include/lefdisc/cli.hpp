#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lefdisc/catalog.hpp"
#include "lefdisc/geometry.hpp"
#include "lefdisc/lefschetz.hpp"
#include "lefdisc/ring_io.hpp"

namespace lefdisc::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kBadInput = 2 };

// Machine-readable result of one invocation. Serialization has a fixed key
// order and carries rationals as "p/q" strings.
struct Report {
  Report() = default;
  explicit Report(std::string cmd, Json in = Json::object()) : command(std::move(cmd)), inputs(std::move(in)) {}

  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> violations;

  Json to_json() const {
    return Json{{"command", command}, {"inputs", inputs}, {"results", results}, {"violations", violations}};
  }

  static Report from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.violations = j.at("violations").get<std::vector<std::string>>();
    return r;
  }

  int exit_code() const { return violations.empty() ? kOk : kViolation; }

  friend bool operator==(const Report&, const Report&) = default;
};

// Malformed arguments or unreadable input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

inline Json betti_json(const CohomologyRing& ring) {
  Json a = Json::array();
  for (auto b : ring.betti_numbers()) a.push_back(b);
  return a;
}

inline std::string betti_text(const CohomologyRing& ring) {
  std::string s = "[";
  auto b = ring.betti_numbers();
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + std::to_string(b[i]);
  return s + "]";
}

inline Json ray_json(const RayForm& ray) {
  Json support = Json::array();
  for (const auto& s : ray.support) support.push_back(Json{{"k", s.k}, {"multiplicity", s.multiplicity}});
  return Json{{"form", rationals_json(ray.form.coeffs())},
              {"support", support},
              {"void_levels", ray.void_levels},
              {"l_supported", ray.l_supported()}};
}

inline std::string support_text(const RayForm& ray) {
  std::string s = "[";
  for (std::size_t i = 0; i < ray.support.size(); ++i)
    s += (i ? ", " : "") + std::string("(") + std::to_string(ray.support[i].k) + "," +
         std::to_string(ray.support[i].multiplicity) + ")";
  return s + "]";
}

inline std::string void_text(const std::vector<int>& levels) {
  std::string s;
  for (std::size_t i = 0; i < levels.size(); ++i) s += (i ? ", " : "") + std::to_string(levels[i]);
  return s;
}

// A ring argument: a file path, or catalog:<key>.
inline CohomologyRing load_ring_arg(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) return catalog_entry(arg.substr(8)).ring;
  std::string text;
  try {
    text = read_file(arg);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  return load_ring(text);
}

inline std::vector<Rational> parse_vector(const std::string& text, std::size_t expected, const char* what) {
  std::vector<Rational> v = parse_rational_list(text);
  if (v.size() != expected)
    throw InputError(std::string(what) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                     std::to_string(expected));
  return v;
}

inline std::vector<Stratum> parse_strata(const std::string& text) {
  std::vector<Stratum> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("stratum '" + item + "' must look like k:dim");
    try {
      out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw InputError("stratum '" + item + "' must look like k:dim");
    }
  }
  return out;
}

inline std::string level_name(int k) { return "δ_" + std::to_string(k); }

}  // namespace detail

struct Options {
  std::string ring;
  std::string format = "text";
  std::optional<int> k;
  bool all = false;
  std::string eta;
  std::string alpha;
  int height = 3;
  std::optional<int> n, dim_s, dim_phi_s, length, observed;
  std::string strata;
  std::string ray;
  std::string key;
  std::string output;
};

inline Report cmd_validate(const Options& o, std::ostream& out) {
  Report r{"validate", Json{{"ring", o.ring}}};
  CohomologyRing ring;
  if (o.ring.rfind("catalog:", 0) == 0) {
    ring = detail::load_ring_arg(o.ring);
  } else {
    std::string text;
    try {
      text = read_file(o.ring);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
    ring = CohomologyRing::from_document(parse_ring_document(text));
  }
  for (const auto& v : validate(ring)) r.violations.push_back(v.message);
  r.results = Json{{"name", ring.name()},
                   {"complex_dim", ring.complex_dim()},
                   {"betti", detail::betti_json(ring)},
                   {"valid", r.violations.empty()}};
  if (r.violations.empty()) {
    out << "valid: " << ring.name() << " (n = " << ring.complex_dim() << ", betti " << detail::betti_text(ring) << ")\n";
  } else {
    out << "invalid: " << ring.name() << " violates " << r.violations.size() << " identit"
        << (r.violations.size() == 1 ? "y" : "ies") << "\n";
    for (const auto& v : r.violations) out << "  " << v << "\n";
  }
  return r;
}

inline Report cmd_info(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  Report r{"info", Json{{"ring", o.ring}}};
  r.results = Json{{"name", ring.name()},
                   {"complex_dim", ring.complex_dim()},
                   {"betti", detail::betti_json(ring)},
                   {"picard_rank", ring.picard_rank()},
                   {"basis", ring.basis()},
                   {"fundamental", ring.fundamental_name()}};
  out << "ring " << ring.name() << "\n";
  out << "  complex dimension " << ring.complex_dim() << "\n";
  out << "  betti " << detail::betti_text(ring) << "\n";
  out << "  H^2 basis (variables):";
  for (std::size_t s = 0; s < ring.picard_rank(); ++s) out << " t" << s << "=" << ring.basis_name({2, s});
  out << "\n  fundamental " << ring.fundamental_name() << "\n";
  return r;
}

inline Report cmd_disc(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  Report r{"disc", Json{{"ring", o.ring}}};
  std::vector<int> levels;
  if (o.all || !o.k) {
    for (int k = 1; k <= ring.complex_dim(); ++k) levels.push_back(k);
    r.inputs["all"] = true;
  } else {
    if (*o.k < 1 || *o.k > ring.complex_dim())
      throw InputError("--k must lie in 1.." + std::to_string(ring.complex_dim()));
    levels.push_back(*o.k);
    r.inputs["k"] = *o.k;
  }
  Json items = Json::array();
  out << "ring " << ring.name() << " (n = " << ring.complex_dim() << ", betti " << detail::betti_text(ring) << ")\n";
  for (int k : levels) {
    LefschetzMatrix lm = lefschetz_matrix(ring, k);
    Discriminant d = discriminant_from_matrix(lm);
    std::string b = "b_" + std::to_string(d.space_degree);
    items.push_back(Json{{"k", d.k},
                         {"space_degree", d.space_degree},
                         {"space_dim", d.space_dim},
                         {"symmetry", to_string(lm.symmetry)},
                         {"expected_degree", d.expected_degree},
                         {"degree", d.delta.degree()},
                         {"delta", d.delta.to_string()},
                         {"scale", d.scale.to_string()},
                         {"is_zero", d.is_zero},
                         {"vacuous", d.vacuous()},
                         {"pfaffian", d.pfaffian_part ? Json(d.pfaffian_part->to_string()) : Json(nullptr)}});
    if (d.vacuous()) {
      out << detail::level_name(k) << " = 1 (vacuous)\n";
      out << "    " << b << " = 0\n";
    } else if (d.is_zero) {
      out << detail::level_name(k) << " = 0 (void)\n";
      out << "    degenerate for every eta; expected degree " << d.expected_degree << " = " << k << "·" << b << "\n";
    } else {
      out << detail::level_name(k) << " = " << d.delta.to_string() << "\n";
      out << "    degree " << d.delta.degree() << " = " << k << "·" << b << " (" << b << " = " << d.space_dim << "), "
          << to_string(lm.symmetry) << "\n";
    }
    if (d.pfaffian_part) out << "    pfaffian = " << d.pfaffian_part->to_string() << "\n";
  }
  r.results = Json{{"name", ring.name()}, {"levels", items}};
  return r;
}

inline Report cmd_check(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  auto eta = detail::parse_vector(o.eta, ring.picard_rank(), "--eta");
  Report r{"check", Json{{"ring", o.ring}, {"eta", detail::rationals_json(eta)}}};
  LefschetzCheck c = check_lefschetz_at(ring, eta);
  Json levels = Json::array();
  out << "Lefschetz condition at eta = " << format_rational_list(eta) << " on " << ring.name() << "\n";
  for (const auto& v : c.levels) {
    levels.push_back(Json{{"k", v.k}, {"space_dim", v.space_dim}, {"rank", v.rank}, {"vacuous", v.vacuous()}, {"pass", v.pass}});
    out << "  k = " << v.k << ": ";
    if (v.vacuous()) {
      out << "pass (vacuous)\n";
    } else {
      out << (v.pass ? "pass" : "FAIL") << " (rank " << v.rank << " of " << v.space_dim << ")\n";
    }
    if (!v.pass)
      r.violations.push_back("L_" + std::to_string(v.k) + "(eta) is not an isomorphism (rank " + std::to_string(v.rank) +
                             " < " + std::to_string(v.space_dim) + ")");
  }
  out << (c.pass ? "satisfies" : "does not satisfy") << " the Lefschetz condition\n";
  r.results = Json{{"levels", levels}, {"pass", c.pass}};
  return r;
}

inline Report cmd_ray(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  LinearForm alpha(detail::parse_vector(o.alpha, ring.picard_rank(), "--alpha"));
  if (alpha.is_zero()) throw InputError("--alpha must be a nonzero form");
  Report r{"ray", Json{{"ring", o.ring}, {"alpha", detail::rationals_json(alpha.coeffs())}}};
  RayForm ray = is_l_supported(ring, alpha);
  r.results = detail::ray_json(ray);
  out << "form " << ray.form.to_string() << " on " << ring.name() << "\n";
  out << "  support " << detail::support_text(ray) << "\n";
  out << "  " << (ray.l_supported() ? "L-supported" : "not L-supported") << "\n";
  if (!ray.void_levels.empty()) out << "  void levels: " << detail::void_text(ray.void_levels) << "\n";
  return r;
}

inline Report cmd_search(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  if (o.height < 1) throw InputError("--height must be at least 1");
  Report r{"search", Json{{"ring", o.ring}, {"height", o.height}}};
  SearchResult s = search_l_supported(ring, o.height);
  auto bound = verify_count_bound(ring, s.rays);
  Json rays = Json::array();
  for (const auto& ray : s.rays) rays.push_back(detail::ray_json(ray));
  Json bounds = Json::array();
  out << "L-supported forms on " << ring.name() << " with coefficients in [-" << o.height << ", " << o.height << "]\n";
  for (const auto& ray : s.rays) out << "  " << ray.form.to_string() << " support " << detail::support_text(ray) << "\n";
  if (s.rays.empty()) out << "  (none)\n";
  if (!s.void_levels.empty()) out << "  void levels: " << detail::void_text(s.void_levels) << "\n";
  out << "count bound:\n";
  for (const auto& b : bound) {
    bounds.push_back(Json{{"k", b.k}, {"sum", b.sum}, {"bound", b.bound}, {"ok", b.ok}});
    out << "  k = " << b.k << ": " << b.sum << " <= " << b.bound << (b.ok ? " ok" : " VIOLATED") << "\n";
    if (!b.ok)
      r.violations.push_back("count bound violated at k = " + std::to_string(b.k) + ": " + std::to_string(b.sum) +
                             " > " + std::to_string(b.bound));
  }
  r.results = Json{{"candidates", s.candidates}, {"rays", rays}, {"void_levels", s.void_levels}, {"bound", bounds}};
  return r;
}

inline ContractionRecord record_from(const Options& o) {
  if (!o.n || !o.dim_s || !o.dim_phi_s) throw InputError("--n, --dim-s and --dim-phi-s are required");
  ContractionRecord rec;
  rec.n = *o.n;
  rec.dim_S = *o.dim_s;
  rec.dim_phi_S = *o.dim_phi_s;
  rec.length = o.length;
  if (!o.strata.empty()) rec.strata = detail::parse_strata(o.strata);
  try {
    rec.check();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return rec;
}

inline Json record_json(const ContractionRecord& rec) {
  Json j{{"n", rec.n}, {"dim_s", rec.dim_S}, {"dim_phi_s", rec.dim_phi_S}};
  j["length"] = rec.length ? Json(*rec.length) : Json(nullptr);
  return j;
}

inline Json predicted_json(const std::optional<PredictedSupport>& p) {
  if (!p) return nullptr;
  return Json{{"k", p->k}, {"min_multiplicity", p->min_multiplicity}};
}

inline Report cmd_geom(const Options& o, std::ostream& out) {
  ContractionRecord rec = record_from(o);
  Report r{"geom", record_json(rec)};
  if (o.observed) r.inputs["observed"] = *o.observed;
  if (rec.strata) r.inputs["strata"] = o.strata;

  auto predicted = predicted_support(rec);
  r.results["predicted"] = predicted_json(predicted);
  const int lhs = 2 * rec.dim_S - rec.dim_phi_S;
  out << "contraction data: n = " << rec.n << ", dim S = " << rec.dim_S << ", dim phi(S) = " << rec.dim_phi_S << "\n";
  if (predicted)
    out << "  predicted L-support: type " << predicted->k << ", multiplicity >= " << predicted->min_multiplicity << "\n";
  else
    out << "  predicted L-support: none (2 dim S - dim phi(S) = " << lhs << " <= n)\n";

  if (rec.length) {
    bool ok = fiber_locus_check(rec);
    r.results["fiber_locus"] = Json{{"lhs", lhs}, {"rhs", rec.n + *rec.length - 1}, {"ok", ok}};
    out << "  fiber-locus inequality: " << lhs << " >= " << rec.n + *rec.length - 1 << (ok ? " ok" : " VIOLATED") << "\n";
    if (!ok) r.violations.push_back("fiber-locus inequality violated: " + std::to_string(lhs) + " < " +
                                    std::to_string(rec.n + *rec.length - 1));
    if (o.observed) {
      bool lb = length_bound(rec, *o.observed);
      r.results["length_bound"] = Json{{"observed", *o.observed}, {"required", *rec.length - 1}, {"ok", lb}};
      out << "  multiplicity vs length: " << *o.observed << " >= " << *rec.length - 1 << (lb ? " ok" : " VIOLATED") << "\n";
      if (!lb) r.violations.push_back("multiplicity " + std::to_string(*o.observed) + " < length - 1 = " +
                                      std::to_string(*rec.length - 1));
    }
  } else if (o.observed) {
    throw InputError("--observed needs --length");
  }

  if (rec.strata) {
    Json strata = Json::array();
    for (const auto& s : strata_check(rec)) {
      strata.push_back(Json{{"k", s.k}, {"dim", s.dim}, {"bound", s.bound}, {"ok", s.ok}});
      out << "  stratum k = " << s.k << ": dim " << s.dim << " <= " << s.bound << (s.ok ? " ok" : " VIOLATED") << "\n";
      if (!s.ok) r.violations.push_back("stratum k = " + std::to_string(s.k) + " has dimension " + std::to_string(s.dim) +
                                        " > " + std::to_string(s.bound));
    }
    r.results["strata"] = strata;
  }
  return r;
}

inline Report cmd_cross(const Options& o, std::ostream& out) {
  CohomologyRing ring = detail::load_ring_arg(o.ring);
  ContractionRecord rec = record_from(o);
  LinearForm ray(detail::parse_vector(o.ray, ring.picard_rank(), "--ray"));
  if (ray.is_zero()) throw InputError("--ray must be a nonzero form");
  rec.ray = ray;
  if (rec.n != ring.complex_dim()) throw InputError("--n does not match the ring's complex dimension");
  Report r{"cross", record_json(rec)};
  r.inputs["ring"] = o.ring;
  r.inputs["ray"] = detail::rationals_json(ray.coeffs());

  CrossCheck c = cross_check(ring, rec);
  r.results = Json{{"predicted", predicted_json(c.predicted)},
                   {"observed", c.observed ? Json(*c.observed) : Json(nullptr)},
                   {"support", detail::ray_json(c.observed_support)},
                   {"ok", c.ok}};
  out << "ray " << c.observed_support.form.to_string() << " on " << ring.name() << "\n";
  if (c.predicted) {
    out << "  predicted: type " << c.predicted->k << ", multiplicity >= " << c.predicted->min_multiplicity << "\n";
    out << "  observed: multiplicity " << (c.observed ? std::to_string(*c.observed) : std::string("inf (void level)"))
        << (c.ok ? " ok" : " VIOLATED") << "\n";
    if (!c.ok)
      r.violations.push_back("observed multiplicity " + std::to_string(*c.observed) + " below predicted " +
                             std::to_string(c.predicted->min_multiplicity) + " at k = " + std::to_string(c.predicted->k));
  } else {
    out << "  predicted: none\n";
    out << "  observed support (informational): " << detail::support_text(c.observed_support) << "\n";
  }
  return r;
}

inline Report cmd_catalog_list(std::ostream& out) {
  Report r{"catalog list"};
  Json entries = Json::array();
  for (const auto& key : catalog_keys()) {
    CatalogEntry e = catalog_entry(key);
    entries.push_back(Json{{"key", e.key}, {"name", e.ring.name()}, {"betti", detail::betti_json(e.ring)}, {"description", e.description}});
    out << e.key << "\t" << detail::betti_text(e.ring) << "\t" << e.description << "\n";
  }
  r.results = Json{{"entries", entries}};
  return r;
}

inline Report cmd_catalog_emit(const Options& o, std::ostream& out) {
  CatalogEntry e;
  try {
    e = catalog_entry(o.key);
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
  std::string text = emit_ring(e.ring);
  Report r{"catalog emit", Json{{"key", o.key}}};
  if (o.output.empty()) {
    if (o.format == "text") out << text;
    r.results = Json{{"key", e.key}, {"document", Json::parse(text)}};
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.output + "'");
    f << text;
    r.inputs["output"] = o.output;
    r.results = Json{{"key", e.key}, {"path", o.output}};
    if (o.format == "text") out << "wrote " << e.key << " to " << o.output << "\n";
  }
  return r;
}

// Entry point shared by the executable and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lefschetz discriminants of graded-commutative Poincare duality algebras", "lefdisc"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_record = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "complex dimension");
    sub->add_option("--dim-s", o.dim_s, "dimension of the exceptional component S");
    sub->add_option("--dim-phi-s", o.dim_phi_s, "dimension of its image");
    sub->add_option("--length", o.length, "length l_S(R)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the ring axioms of a ring file");
  validate_cmd->add_option("ring", o.ring, "ring file or catalog:<key>")->required();
  add_format(validate_cmd);

  auto* info_cmd = app.add_subcommand("info", "summarize a ring");
  info_cmd->add_option("ring", o.ring)->required();
  add_format(info_cmd);

  auto* disc_cmd = app.add_subcommand("disc", "compute discriminants");
  disc_cmd->add_option("ring", o.ring)->required();
  auto* k_opt = disc_cmd->add_option("--k", o.k, "single level");
  disc_cmd->add_flag("--all", o.all, "all levels")->excludes(k_opt);
  add_format(disc_cmd);

  auto* check_cmd = app.add_subcommand("check", "test the Lefschetz condition at a class");
  check_cmd->add_option("ring", o.ring)->required();
  check_cmd->add_option("--eta", o.eta, "coordinates a0,a1,... on the H^2 basis")->required();
  add_format(check_cmd);

  auto* ray_cmd = app.add_subcommand("ray", "support of a linear form");
  ray_cmd->add_option("ring", o.ring)->required();
  ray_cmd->add_option("--alpha", o.alpha, "coefficients c0,c1,...")->required();
  add_format(ray_cmd);

  auto* search_cmd = app.add_subcommand("search", "enumerate L-supported forms of bounded height");
  search_cmd->add_option("ring", o.ring)->required();
  search_cmd->add_option("--height", o.height, "coefficient bound")->required();
  add_format(search_cmd);

  auto* geom_cmd = app.add_subcommand("geom", "check contraction inequalities");
  add_record(geom_cmd);
  geom_cmd->add_option("--strata", o.strata, "k:dim,... for the loci Z_k");
  geom_cmd->add_option("--observed", o.observed, "observed multiplicity, compared with length - 1");
  add_format(geom_cmd);

  auto* cross_cmd = app.add_subcommand("cross", "compare predicted and observed L-support of a ray");
  cross_cmd->add_option("ring", o.ring)->required();
  cross_cmd->add_option("--ray", o.ray, "pairing of the ray with the H^2 basis")->required();
  add_record(cross_cmd);
  add_format(cross_cmd);

  auto* catalog_cmd = app.add_subcommand("catalog", "built-in example rings");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog keys");
  add_format(list_cmd);
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "write the ring document of an entry");
  emit_cmd->add_option("key", o.key)->required();
  emit_cmd->add_option("-o,--output", o.output, "output file (default: standard output)");
  add_format(emit_cmd);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  std::ostringstream text;
  Report report;
  try {
    if (validate_cmd->parsed()) report = cmd_validate(o, text);
    else if (info_cmd->parsed()) report = cmd_info(o, text);
    else if (disc_cmd->parsed()) report = cmd_disc(o, text);
    else if (check_cmd->parsed()) report = cmd_check(o, text);
    else if (ray_cmd->parsed()) report = cmd_ray(o, text);
    else if (search_cmd->parsed()) report = cmd_search(o, text);
    else if (geom_cmd->parsed()) report = cmd_geom(o, text);
    else if (cross_cmd->parsed()) report = cmd_cross(o, text);
    else if (list_cmd->parsed()) report = cmd_catalog_list(text);
    else if (emit_cmd->parsed()) report = cmd_catalog_emit(o, text);
  } catch (const RingValidationError& e) {
    err << "lefdisc: invalid ring: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v.message << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "lefdisc: " << e.what() << "\n";
    return kBadInput;
  }

  if (o.format == "json") out << report.to_json().dump(2) << "\n";
  else out << text.str();
  return report.exit_code();
}

}  // namespace lefdisc::cli
