// dualcx: command-line front end. Every command prints one JSON report (or a
// flattened text rendering) to stdout; failures print {"error", "detail"} to
// stderr and exit non-zero.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "dualcx/dualcx.hpp"

namespace {

using namespace dualcx;

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kValidation = 3, kDomain = 4, kInternal = 5 };

struct Input {
  std::string name;
  std::string bytes;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

Input read_input(const std::string& path) {
  if (path == "-") return {path, std::string(std::istreambuf_iterator<char>(std::cin), {})};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return {path, std::string(std::istreambuf_iterator<char>(in), {})};
}

bool verbose() {
  const char* v = std::getenv("DUALCX_VERBOSE");
  return v && *v && std::string(v) != "0";
}

struct Context {
  std::vector<std::string> command;
  std::vector<Input> inputs;
  std::string output = "json";
};

// Accepts a bare complex or a report whose results carry one.
DeltaComplex load_complex(Context& ctx, const std::string& path) {
  ctx.inputs.push_back(read_input(path));
  const auto j = parse_json_text(ctx.inputs.back().bytes);
  if (j.is_object() && !j.contains("cells") && j.contains("results") && j["results"].contains("complex"))
    return complex_from_json(j["results"]["complex"]);
  return complex_from_json(j);
}

ActionSpec load_action(Context& ctx, const std::string& path) {
  ctx.inputs.push_back(read_input(path));
  return action_from_json(parse_json_text(ctx.inputs.back().bytes));
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Context& ctx, Json results) {
  Json report{{"tool", "dualcx"}, {"version", kVersion}, {"deterministic", true}, {"command", ctx.command}};
  Json inputs = Json::array();
  for (const auto& in : ctx.inputs) inputs.push_back(Json{{"name", in.name}, {"sha256", sha256_hex(in.bytes)}});
  report["inputs"] = std::move(inputs);
  report["results"] = std::move(results);
  if (ctx.output == "text")
    flatten(report, "", std::cout);
  else
    std::cout << report.dump(2) << "\n";
}

Json f_vector_json(const DeltaComplex& x) { return f_vector(x); }

Json homology_json(const DeltaComplex& x, const Coefficients& coeffs) {
  Json out = Json::array();
  for (const auto& g : homology_table(x, coeffs)) out.push_back(to_json(g));
  return out;
}

Json cohomology_json(const DeltaComplex& x, const Coefficients& coeffs) {
  Json out = Json::array();
  for (int k = 0; k <= x.dimension(); ++k) out.push_back(to_json(cohomology(x, k, coeffs)));
  return out;
}

Json complex_summary(const DeltaComplex& x) {
  return Json{{"dimension", x.dimension()},
              {"f_vector", f_vector_json(x)},
              {"euler_characteristic", euler_characteristic(x)},
              {"regular", x.regular()}};
}

// Classification of one connected piece, with index and orientation data.
Json classify_connected(const DeltaComplex& x) {
  const auto c = classify(x);
  Json j = to_json(x, c);
  if (verbose() && c.is_pseudo_manifold()) {
    if (const auto a = orientation_assignment(x)) j["orientation_signs"] = a->signs;
    if (c.is_closed()) {
      const auto crit = orientability_criteria(x);
      j["criteria"] = Json{{"integral_top_homology", crit.integral_top_homology},
                           {"rational_top_cohomology", crit.rational_top_cohomology},
                           {"sign_propagation", crit.sign_propagation}};
    }
  }
  return j;
}

// construct

Json construct(const std::string& name, const std::vector<std::string>& params, Context& ctx) {
  auto int_param = [&](int lo) {
    if (params.size() != 1) throw Error(ErrorKind::BadParams, name + " takes exactly one integer parameter");
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(params[0], &used);
      if (used != params[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParams, "'" + params[0] + "' is not an integer");
    }
    if (v < lo) throw Error(ErrorKind::BadParams, name + " needs a parameter >= " + std::to_string(lo));
    return v;
  };
  auto no_params = [&] {
    if (!params.empty()) throw Error(ErrorKind::BadParams, name + " takes no parameters");
  };
  auto with_summary = [](const DeltaComplex& x) {
    Json j = to_json(x);
    j["f_vector"] = f_vector_json(x);
    j["euler_characteristic"] = euler_characteristic(x);
    return j;
  };

  if (name == "hyperoctahedron") return with_summary(hyperoctahedron(int_param(1)));
  if (name == "simplex-boundary") return with_summary(simplex_boundary(int_param(2)));
  if (name == "rp2") {
    no_params();
    return with_summary(rp2());
  }
  if (name == "circle") {
    no_params();
    return with_summary(minimal_circle());
  }
  if (name == "suspension" || name == "cone") {
    if (params.size() > 1) throw Error(ErrorKind::BadParams, name + " takes one input file (or -)");
    const auto x = load_complex(ctx, params.empty() ? "-" : params[0]);
    return with_summary(name == "cone" ? cone(x) : suspension(x));
  }
  if (name == "antipodal-action") return to_json(antipodal_action(int_param(2)).spec());
  if (name == "cyclic-action") return to_json(cyclic_permutation_action(int_param(3)).spec());
  throw Error(ErrorKind::UnknownConstructor, "unknown constructor '" + name + "'");
}

// classify

Json cmd_classify(const DeltaComplex& x, std::optional<int> ambient_dim) {
  if (x.empty()) throw Error(ErrorKind::EmptyComplex, "cannot classify the empty complex");
  Json r = complex_summary(x);
  r["homology"] = Json{{"Z", homology_json(x, Coefficients::integers())}, {"Q", homology_json(x, Coefficients::rationals())}};
  if (verbose()) r["cohomology"] = Json{{"Q", cohomology_json(x, Coefficients::rationals())}};
  const auto components = connected_components(x);
  if (components.size() == 1) {
    const auto verdict = classify_connected(x);
    for (const auto& [k, v] : verdict.items()) r[k] = v;
  } else {
    Json parts = Json::array();
    for (const auto& comp : components) {
      const auto sub = subcomplex(x, comp);
      Json part = classify_connected(sub);
      Json vertices = Json::array();
      for (const auto& c : comp)
        if (c.dim == 0) vertices.push_back(x.id(c));
      part["vertices"] = std::move(vertices);
      parts.push_back(std::move(part));
    }
    r["components"] = std::move(parts);
  }
  if (ambient_dim) r["coregularity_zero"] = coregularity_zero_check(x, *ambient_dim);
  return r;
}

// quotient / double-cover / character

Json cmd_quotient(const DeltaComplex& x, const ActionSpec& spec, bool regularize_action) {
  const auto action = SimplicialAction::create(x, spec);
  const auto q = quotient(action, {regularize_action});
  Json r{{"group_order", action.order()},
         {"regular", action.is_regular()},
         {"free", is_free(action)},
         {"subdivisions", q.subdivisions},
         {"complex", to_json(q.complex)},
         {"summary", complex_summary(q.complex)}};
  r["audit"] = Json{{"source_euler_characteristic", euler_characteristic(q.source)},
                    {"quotient_euler_characteristic", euler_characteristic(q.complex)},
                    {"dimension_preserved", q.complex.dimension() == x.dimension()}};
  if (connected_components(q.complex).size() == 1) r["classification"] = classify_connected(q.complex);
  if (verbose()) r["projection"] = cell_map_to_json(q.projection, q.source, q.complex);
  return r;
}

Json cmd_double_cover(const DeltaComplex& x) {
  const auto cover = orientation_double_cover(x);
  long long branch_term = 0;
  for (const auto& c : cover.branch_cells) branch_term += c.dim % 2 == 0 ? 1 : -1;
  const auto base_chi = euler_characteristic(x);
  const auto total_chi = euler_characteristic(cover.total);
  Json r{{"cover", to_json(cover)}, {"summary", complex_summary(cover.total)}};
  r["audit"] = Json{{"base_euler_characteristic", base_chi},
                    {"total_euler_characteristic", total_chi},
                    {"branch_correction", branch_term},
                    {"chi_identity_holds", total_chi == 2 * base_chi - branch_term},
                    {"dimension_preserved", cover.total.dimension() == x.dimension()}};
  if (connected_components(cover.total).size() == 1) r["total_classification"] = classify_connected(cover.total);
  return r;
}

Json cmd_character(const DeltaComplex& x, const ActionSpec& spec) {
  const auto action = SimplicialAction::create(x, spec);
  Json chars = Json::array();
  for (const auto& c : orientation_character(action)) chars.push_back(Json{{"generator", c.generator}, {"sign", c.sign}});
  return Json{{"group_order", action.order()}, {"characters", std::move(chars)}};
}

// coeff

CoeffSet parse_set(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return CoeffSet(std::move(out));
}

Json certificates_json(const std::vector<MembershipCertificate>& certs) {
  Json out = Json::array();
  for (const auto& c : certs) out.push_back(to_json(c));
  return out;
}

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

struct CoeffArgs {
  std::vector<std::string> values;
  std::vector<std::string> lambda;
  std::string r = "0";
  bool optional_r = false;
  long long bound = 12;
  long long moduli_index = 1;
  long long weil = 0;
  std::string candidate;
};

int run_error(const Error& e) {
  Json err{{"error", std::string(to_string(e.kind()))}, {"detail", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    Json list = Json::array();
    for (const auto& viol : v->report().violations)
      list.push_back(Json{{"cell", viol.cell_id}, {"rule", viol.rule}, {"detail", viol.detail}});
    err["violations"] = std::move(list);
  }
  std::cerr << err.dump() << "\n";
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::BadRational: return kParse;
    case ErrorKind::ValidationFailed: return kValidation;
    default: return kDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual complexes, orientation covers, quotients and coefficient arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Context ctx;
  for (int i = 1; i < argc; ++i) ctx.command.emplace_back(argv[i]);
  app.add_option("--output", ctx.output, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::string ctor_name;
  std::vector<std::string> ctor_params;
  auto* construct_cmd = app.add_subcommand("construct", "Emit an example complex or action as interchange JSON");
  construct_cmd->add_option("name", ctor_name,
                            "hyperoctahedron N | simplex-boundary M | suspension FILE | cone FILE | rp2 | circle | "
                            "antipodal-action N | cyclic-action M")
      ->required();
  construct_cmd->add_option("params", ctor_params, "Constructor parameters");

  std::string complex_path = "-";
  std::string action_path;
  std::optional<int> ambient_dim;
  bool regularize_flag = false;

  auto* classify_cmd = app.add_subcommand("classify", "Pseudo-manifold verdict, homology, orientability and index");
  classify_cmd->add_option("complex", complex_path, "Complex file, - for standard input");
  classify_cmd->add_option("--ambient-dim", ambient_dim, "Dimension of the ambient variety");

  auto* quotient_cmd = app.add_subcommand("quotient", "Orbit complex of a finite simplicial action");
  quotient_cmd->add_option("complex", complex_path, "Complex file, - for standard input")->required();
  quotient_cmd->add_option("action", action_path, "Action file")->required();
  quotient_cmd->add_flag("--regularize", regularize_flag, "Subdivide until the action preserves vertex order");

  auto* cover_cmd = app.add_subcommand("double-cover", "Branched orientation double cover");
  cover_cmd->add_option("complex", complex_path, "Complex file, - for standard input");

  auto* character_cmd = app.add_subcommand("character", "Orientation character of each generator");
  character_cmd->add_option("complex", complex_path, "Complex file, - for standard input")->required();
  character_cmd->add_option("action", action_path, "Action file")->required();

  CoeffArgs ca;
  auto* coeff_cmd = app.add_subcommand("coeff", "Exact coefficient-set arithmetic");
  coeff_cmd->require_subcommand(1);
  auto add_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", ca.lambda, "Elements of Lambda (repeatable or comma separated)")->delimiter(',');
    sub->add_option("--r", ca.r, "The rational r");
    sub->add_flag("--optional-r", ca.optional_r, "Allow m0 = 0 when r > 0");
  };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--denom-bound", ca.bound, "Largest denominator considered")->check(CLI::PositiveNumber);
  };
  auto* weil_cmd = coeff_cmd->add_subcommand("weil-index", "lcm of denominators and lcm(lambda, 2)");
  weil_cmd->add_option("values", ca.values, "Coefficients p/q")->required();
  weil_cmd->add_option("--moduli-index", ca.moduli_index, "Cartier index of the moduli part");
  auto* member_cmd = coeff_cmd->add_subcommand("member", "Decide membership in D_Lambda(r)");
  member_cmd->add_option("x", ca.candidate, "Candidate p/q")->required();
  add_lambda(member_cmd);
  auto* enumerate_cmd = coeff_cmd->add_subcommand("enumerate", "List D_Lambda(r) up to a denominator bound");
  add_lambda(enumerate_cmd);
  add_bound(enumerate_cmd);
  auto* p1_cmd = coeff_cmd->add_subcommand("p1-solve", "Degree-two boundaries on P^1");
  add_lambda(p1_cmd);
  add_bound(p1_cmd);
  auto* geq_cmd = coeff_cmd->add_subcommand("geq-half-classify", "Coefficients in [1/2, 1] realized on P^1");
  geq_cmd->add_option("values", ca.values, "Lambda, a subset of [1/2, 1]")->required();
  add_bound(geq_cmd);
  auto* audit_cmd = coeff_cmd->add_subcommand("adjunction-audit", "Replay the Weil-index divisibility argument");
  audit_cmd->add_option("lambda", ca.weil, "Weil index")->required();
  audit_cmd->add_option("candidate", ca.candidate, "Coefficient p0/l0")->required();
  add_bound(audit_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (construct_cmd->parsed()) {
      auto j = construct(ctor_name, ctor_params, ctx);
      if (ctx.output == "text")
        flatten(j, "", std::cout);
      else
        std::cout << j.dump(2) << "\n";
      return kOk;
    }
    Json results;
    if (classify_cmd->parsed()) {
      results = cmd_classify(load_complex(ctx, complex_path), ambient_dim);
    } else if (quotient_cmd->parsed()) {
      const auto x = load_complex(ctx, complex_path);
      results = cmd_quotient(x, load_action(ctx, action_path), regularize_flag);
    } else if (cover_cmd->parsed()) {
      results = cmd_double_cover(load_complex(ctx, complex_path));
    } else if (character_cmd->parsed()) {
      const auto x = load_complex(ctx, complex_path);
      results = cmd_character(x, load_action(ctx, action_path));
    } else if (coeff_cmd->parsed()) {
      const auto lambda = parse_set(ca.lambda);
      const auto r = parse_rational(ca.r);
      MemberOptions options;
      options.optional_r = ca.optional_r;
      if (weil_cmd->parsed()) {
        const auto w = weil_index(parse_set(ca.values), ca.moduli_index);
        results = Json{{"weil_index", w}, {"adjunction_bound", adjunction_bound(w)}};
      } else if (member_cmd->parsed()) {
        const auto x = parse_rational(ca.candidate);
        const auto cert = dlambda_member(x, lambda, r, options);
        results = Json{{"lambda", rationals_json(lambda.elements())}, {"r", to_string(r)}, {"member", cert.has_value()}};
        if (cert) results["certificate"] = to_json(*cert);
      } else if (enumerate_cmd->parsed()) {
        results = Json{{"lambda", rationals_json(lambda.elements())},
                       {"r", to_string(r)},
                       {"denom_bound", ca.bound},
                       {"values", certificates_json(dlambda_enumerate(lambda, r, ca.bound, options))}};
      } else if (p1_cmd->parsed()) {
        P1Options p1;
        p1.p_options = options;
        Json sols = Json::array();
        for (const auto& s : p1_solutions(lambda, r, ca.bound, p1)) sols.push_back(to_json(s));
        results = Json{{"lambda", rationals_json(lambda.elements())},
                       {"r", to_string(r)},
                       {"denom_bound", ca.bound},
                       {"solutions", std::move(sols)}};
      } else if (geq_cmd->parsed()) {
        const auto set = parse_set(ca.values);
        results = Json{{"lambda", rationals_json(set.elements())},
                       {"denom_bound", ca.bound},
                       {"realized", rationals_json(geq_half_classification(set, ca.bound))}};
      } else if (audit_cmd->parsed()) {
        const auto candidate = parse_rational(ca.candidate);
        results = Json{{"lambda", ca.weil},
                       {"candidate", to_string(candidate)},
                       {"denom_bound", ca.bound},
                       {"divides", adjunction_divisibility_audit(ca.weil, candidate, ca.bound)}};
      }
    }
    emit(ctx, std::move(results));
    return kOk;
  } catch (const Error& e) {
    return run_error(e);
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << "\n";
    return kInternal;
  }
}
