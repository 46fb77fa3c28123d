// Command-line driver. Every subcommand prints one JSON report to stdout
// (and to --out when given) plus a one-line human summary on stderr.
// Exit codes: 0 the check or construction succeeded, 1 it ran and failed,
// 2 the invocation or input was unusable.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <hypdet/hypdet.hpp>

using namespace hypdet;

namespace {

struct Common {
  std::string poly, poly_file, pencil_file, config_file, out, vars;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c, bool wants_poly) {
  if (wants_poly) {
    cmd->add_option("--poly", c.poly, "polynomial text");
    cmd->add_option("--poly-file", c.poly_file, "file containing the polynomial");
  }
  cmd->add_option("--config-file", c.config_file, "JSON file with tolerance overrides");
  c.seed_opt = cmd->add_option("--seed", c.seed, "sampling seed (overrides the config)");
  cmd->add_option("--out", c.out, "also write the JSON report to this file");
  cmd->add_option("--vars", c.vars, "comma-separated variable names");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_vec(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split_list(s, ',')) {
    if (part.empty()) throw std::invalid_argument("empty entry in vector: " + s);
    std::size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad number in vector: " + part);
    out.push_back(v);
  }
  return out;
}

Config resolve_config(const Common& c) {
  Config cfg;
  if (!c.config_file.empty()) cfg = config_from_json(json::parse(read_file(c.config_file)), cfg);
  if (c.seed_opt && c.seed_opt->count() > 0) cfg.seed = c.seed;
  validate(cfg);
  return cfg;
}

std::vector<std::string> resolve_vars(const Common& c, std::vector<std::string> defaults) {
  if (c.vars.empty()) return defaults;
  std::vector<std::string> v = split_list(c.vars, ',');
  for (const std::string& name : v)
    if (name.empty()) throw std::invalid_argument("empty variable name in --vars");
  return v;
}

Poly resolve_poly(const Common& c, const std::vector<std::string>& vars, std::string* text_out) {
  if (!c.poly.empty() && !c.poly_file.empty())
    throw std::invalid_argument("give either --poly or --poly-file, not both");
  std::string text = c.poly;
  if (text.empty() && !c.poly_file.empty()) text = read_file(c.poly_file);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (text.empty()) throw std::invalid_argument("a polynomial is required (--poly or --poly-file)");
  if (text_out) *text_out = text;
  return parse_poly(text, vars);
}

void emit(const json& rep, const std::string& out_path) {
  std::string s = dump_report(rep);
  std::cout << s;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << s;
  }
}

int run_check(const Common& c, const std::string& e_csv, bool full) {
  Config cfg = resolve_config(c);
  std::vector<std::string> vars = resolve_vars(c, {"x0", "x1", "x2"});
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  std::vector<double> e = parse_vec(e_csv);
  if (int(e.size()) != P.nvars)
    throw std::invalid_argument("--e must have one entry per variable");
  Verdict v = full ? is_hyperbolic(P, e, cfg) : is_semi_hyperbolic(P, e, cfg);
  json rep = make_report(text, json::array(), json::object(), cfg);
  rep["verdict"] = verdict_to_json(v);
  emit(rep, c.out);
  std::cerr << (full ? "hyperbolic: " : "semi-hyperbolic: ") << (v.holds ? "PASS" : "FAIL");
  if (v.direction_vanishes)
    std::cerr << " (the polynomial vanishes in the given direction)";
  else
    std::cerr << " (worst normalized imaginary part " << v.worst_imag << " over "
              << v.samples_checked << " samples)";
  std::cerr << "\n";
  return v.holds ? 0 : 1;
}

int run_check_cone(const Common& c, const std::string& gens_text) {
  Config cfg = resolve_config(c);
  std::vector<std::string> vars = resolve_vars(c, {"x0", "x1", "x2"});
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  std::vector<std::vector<double>> gens;
  for (const std::string& part : split_list(gens_text, ';')) {
    gens.push_back(parse_vec(part));
    if (int(gens.back().size()) != P.nvars)
      throw std::invalid_argument("each generator needs one entry per variable");
  }
  Verdict v = is_cone_hyperbolic(P, gens, cfg);
  json rep = make_report(text, json::array(), json::object(), cfg);
  rep["verdict"] = verdict_to_json(v);
  emit(rep, c.out);
  std::cerr << "cone-hyperbolic: " << (v.holds ? "PASS" : "FAIL") << " (worst normalized imaginary part "
            << v.worst_imag << " over " << v.samples_checked << " samples)\n";
  return v.holds ? 0 : 1;
}

enum class Chain { T1, COR, T2 };

int run_construct(const Common& c, Chain which) {
  Config cfg = resolve_config(c);
  std::vector<std::string> defaults =
      which == Chain::T2 ? std::vector<std::string>{"x0", "x1", "x2", "x3"}
                         : std::vector<std::string>{"x0", "x1", "x2"};
  std::vector<std::string> vars = resolve_vars(c, defaults);
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  ConstructResult r = which == Chain::T1   ? construct_t1(P, cfg)
                      : which == Chain::COR ? construct_cor(P, cfg)
                                            : construct_t2(P, cfg);
  json rep = make_report(text, stages_to_json(r.stages), invariants_to_json(r.invariants), cfg);
  if (r.cert_set) rep["certificate"] = certificate_to_json(r.cert);
  if (r.ok) {
    rep["pencil"] = pencil_to_json(r.pencil);
    rep["verify"] = json{{"pass", r.verify.pass}, {"residual", r.verify.residual}};
    if (r.cofactor_set) rep["cofactor"] = to_string(r.cofactor, vars);
  } else {
    rep["failure"] = r.failure;
  }
  emit(rep, c.out);
  bool good = r.ok && r.verify.pass && all_invariants_pass(r.invariants);
  if (good)
    std::cerr << "construction: OK, size " << pencil_dim(r.pencil) << ", residual "
              << r.verify.residual << "\n";
  else
    std::cerr << "construction: FAIL" << (r.failure.empty() ? "" : " (" + r.failure + ")") << "\n";
  return good ? 0 : 1;
}

int run_verify(const Common& c) {
  Config cfg = resolve_config(c);
  if (c.pencil_file.empty()) throw std::invalid_argument("--pencil-file is required");
  Pencil pen = pencil_from_json(json::parse(read_file(c.pencil_file)));
  validate_pencil(pen, cfg);
  std::vector<std::string> defaults = pen.mats.size() == 4
                                          ? std::vector<std::string>{"x0", "x1", "x2", "x3"}
                                          : std::vector<std::string>{"x0", "x1", "x2"};
  std::vector<std::string> vars = resolve_vars(c, defaults);
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  if (int(pen.mats.size()) != P.nvars)
    throw std::invalid_argument("pencil and polynomial variable counts disagree");
  VerifyOutcome vo = verify_representation(pen, P, cfg);
  std::map<std::string, Invariant> inv;
  if (pen.Bp && P.nvars == 3) inv = split_invariants(pen, P, cfg);
  json rep = make_report(text, json::array(), invariants_to_json(inv), cfg);
  rep["pencil"] = pencil_to_json(pen);
  rep["verify"] = json{{"pass", vo.pass}, {"residual", vo.residual}};
  emit(rep, c.out);
  bool good = vo.pass && all_invariants_pass(inv);
  std::cerr << "verify: " << (good ? "PASS" : "FAIL") << " (residual " << vo.residual << ")\n";
  return good ? 0 : 1;
}

int run_lift(const Common& c) {
  Config cfg = resolve_config(c);
  if (c.pencil_file.empty()) throw std::invalid_argument("--pencil-file is required");
  Pencil pen = pencil_from_json(json::parse(read_file(c.pencil_file)));
  LiftResult L = lift_to_four(pen, cfg);
  std::map<std::string, Invariant> inv;
  inv["lift_hyperbolic"] = {L.hyperbolic.holds, L.hyperbolic.worst_imag};
  inv["lift_restricts_back"] = {L.restriction_residual <= 1e-8, L.restriction_residual};
  json rep = make_report(c.pencil_file, json::array(), invariants_to_json(inv), cfg);
  rep["pencil"] = pencil_to_json(L.pencil4);
  rep["lifted"] = to_string(L.lifted, {"x0", "x1", "y1", "x2"});
  rep["verdict"] = verdict_to_json(L.hyperbolic);
  emit(rep, c.out);
  bool good = L.hyperbolic.holds && L.restriction_residual <= 1e-8;
  std::cerr << "lift: " << (good ? "OK" : "FAIL") << " (restriction residual "
            << L.restriction_residual << ")\n";
  return good ? 0 : 1;
}

int run_example(const Common& c) {
  Config cfg = resolve_config(c);
  WorkedExample w = worked_example();
  std::map<std::string, Invariant> inv;
  double d0 = poly_max_diff(pencil_to_poly(w.pencil, cfg), w.p) / (1.0 + max_coeff_abs(w.p));
  inv["example_pencil_matches_polynomial"] = {d0 <= 1e-10, d0};
  for (const auto& [name, i] : split_invariants(w.pencil, w.p, cfg)) inv["example_" + name] = i;
  LiftResult L = lift_to_four(w.pencil, cfg);
  inv["example_lift_hyperbolic"] = {L.hyperbolic.holds, L.hyperbolic.worst_imag};
  inv["example_lift_restricts_back"] = {L.restriction_residual <= 1e-10, L.restriction_residual};
  ConstructResult r = construct_t1(w.p, cfg);
  for (const auto& [name, i] : r.invariants) inv[name] = i;
  json rep = make_report(w.text, stages_to_json(r.stages), invariants_to_json(inv), cfg);
  if (r.cert_set) rep["certificate"] = certificate_to_json(r.cert);
  if (r.ok) {
    rep["pencil"] = pencil_to_json(r.pencil);
    rep["verify"] = json{{"pass", r.verify.pass}, {"residual", r.verify.residual}};
  } else {
    rep["failure"] = r.failure;
  }
  rep["lifted"] = to_string(L.lifted, {"x0", "x1", "y1", "x2"});
  emit(rep, c.out);
  bool good = r.ok && r.verify.pass && all_invariants_pass(inv);
  std::cerr << "worked example: " << (good ? "PASS" : "FAIL") << "\n";
  return good ? 0 : 1;
}

int run_nonconvexity(const Common& c, const std::string& seed_pt_csv, int budget) {
  Config cfg = resolve_config(c);
  std::vector<std::string> vars = resolve_vars(c, {"x0", "x1", "x2"});
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  std::vector<double> sp = parse_vec(seed_pt_csv);
  if (int(sp.size()) != P.nvars)
    throw std::invalid_argument("--seed-pt must have one entry per variable");
  std::optional<NonconvexityCert> cert = nonconvexity_certificate(P, sp, budget, cfg.seed);
  json rep = make_report(text, json::array(), json::object(), cfg);
  rep["found"] = cert.has_value();
  if (cert) {
    rep["certificate"] = json{{"a", cert->a},
                              {"b", cert->b},
                              {"mid", cert->mid},
                              {"value_a", cert->value_a},
                              {"value_b", cert->value_b},
                              {"value_mid", cert->value_mid}};
  }
  emit(rep, c.out);
  std::cerr << "nonconvexity certificate: " << (cert ? "FOUND" : "NOT FOUND") << "\n";
  return cert ? 0 : 1;
}

int run_sos_tridisk(const Common& c) {
  Config cfg = resolve_config(c);
  std::vector<std::string> vars = resolve_vars(c, {"z1", "z2", "z3"});
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  SosCertificate cert = find_sos_tridisk(P, cfg);
  json rep = make_report(text, json::array(), json::object(), cfg);
  rep["certificate"] = certificate_to_json(cert);
  emit(rep, c.out);
  bool good = cert.converged && cert.residual <= cfg.sos_tol;
  std::cerr << "tridisk certificate: " << (good ? "OK" : "FAIL") << " (residual " << cert.residual
            << " after " << cert.iterations << " iterations)\n";
  return good ? 0 : 1;
}

int run_roots(const Common& c) {
  Config cfg = resolve_config(c);
  std::vector<std::string> vars = resolve_vars(c, {"t"});
  std::string text;
  Poly P = resolve_poly(c, vars, &text);
  RootSet rs = roots(P);
  json arr = json::array();
  for (const cd& r : rs.roots) arr.push_back(complex_to_json(r));
  json rep = make_report(text, json::array(), json::object(), cfg);
  rep["roots"] = arr;
  rep["residuals"] = rs.residuals;
  rep["trimmed"] = rs.trimmed;
  rep["counts"] = json{{"uhp", count_region(rs, Region::UHP)},
                       {"lhp", count_region(rs, Region::LHP)},
                       {"real_line", count_region(rs, Region::REAL_LINE)},
                       {"disk", count_region(rs, Region::DISK)},
                       {"exterior", count_region(rs, Region::EXTERIOR)},
                       {"circle", count_region(rs, Region::CIRCLE)}};
  emit(rep, c.out);
  std::cerr << "roots: " << rs.roots.size() << " found\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-hyperbolic polynomials and self-adjoint determinantal representations"};
  app.require_subcommand(1);

  Common c_semi, c_hyp, c_cone, c_t1, c_cor, c_t2, c_verify, c_lift, c_ex, c_nc, c_sos, c_roots;
  std::string e_semi = "0,0,1", e_hyp = "0,0,1";
  std::string gens = "0,1,0;0,0,1";
  std::string seed_pt;
  int budget = 300;

  CLI::App* semi = app.add_subcommand("check-semihyperbolic",
                                      "sampled real-rootedness of t -> P(x - t e)");
  add_common(semi, c_semi, true);
  semi->add_option("--e", e_semi, "direction, comma-separated");

  CLI::App* hyp = app.add_subcommand("check-hyperbolic",
                                     "check-semihyperbolic plus P(e) != 0");
  add_common(hyp, c_hyp, true);
  hyp->add_option("--e", e_hyp, "direction, comma-separated");

  CLI::App* cone = app.add_subcommand("check-cone",
                                      "sampled hyperbolicity over a positive cone of directions");
  add_common(cone, c_cone, true);
  cone->add_option("--generators", gens, "semicolon-separated cone generators");

  CLI::App* t1 = app.add_subcommand("construct-t1",
                                    "self-adjoint pencil for a ternary semi-hyperbolic polynomial");
  add_common(t1, c_t1, true);

  CLI::App* cor = app.add_subcommand("construct-cor",
                                     "pencil with PSD coefficients for a cone-hyperbolic polynomial");
  add_common(cor, c_cor, true);

  CLI::App* t2 = app.add_subcommand("construct-t2",
                                    "pencil times a cofactor for a four-variable polynomial");
  add_common(t2, c_t2, true);

  CLI::App* ver = app.add_subcommand("verify", "check a stored pencil against a polynomial");
  add_common(ver, c_verify, true);
  ver->add_option("--pencil-file", c_verify.pencil_file, "pencil JSON file")->required();

  CLI::App* lift = app.add_subcommand("lift", "split lift of a ternary pencil to four variables");
  add_common(lift, c_lift, false);
  lift->add_option("--pencil-file", c_lift.pencil_file, "pencil JSON file")->required();

  CLI::App* ex = app.add_subcommand("example-sec3", "run the built-in worked example end to end");
  add_common(ex, c_ex, false);

  CLI::App* nc = app.add_subcommand("nonconvexity",
                                    "witness that a component of the nonvanishing set is nonconvex");
  add_common(nc, c_nc, true);
  nc->add_option("--seed-pt", seed_pt, "component seed point, comma-separated")->required();
  nc->add_option("--budget", budget, "random sample budget");

  CLI::App* sos = app.add_subcommand("sos-tridisk", "tridisk certificate search");
  add_common(sos, c_sos, true);

  CLI::App* rts = app.add_subcommand("roots", "univariate roots with region counts");
  add_common(rts, c_roots, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (semi->parsed()) return run_check(c_semi, e_semi, false);
    if (hyp->parsed()) return run_check(c_hyp, e_hyp, true);
    if (cone->parsed()) return run_check_cone(c_cone, gens);
    if (t1->parsed()) return run_construct(c_t1, Chain::T1);
    if (cor->parsed()) return run_construct(c_cor, Chain::COR);
    if (t2->parsed()) return run_construct(c_t2, Chain::T2);
    if (ver->parsed()) return run_verify(c_verify);
    if (lift->parsed()) return run_lift(c_lift);
    if (ex->parsed()) return run_example(c_ex);
    if (nc->parsed()) return run_nonconvexity(c_nc, seed_pt, budget);
    if (sos->parsed()) return run_sos_tridisk(c_sos);
    if (rts->parsed()) return run_roots(c_roots);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
