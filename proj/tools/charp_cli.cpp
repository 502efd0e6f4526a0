// charp: exact symbolic calculus in differential fields of characteristic p.
//
// Subcommands: derive, annihilate, integrate, reduce, solve, verify.
// Exit codes: 0 success, 2 input/spec error, 3 search bound exceeded,
// 4 unsupported request, 5 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "charp/annihilator.hpp"
#include "charp/antideriv.hpp"
#include "charp/expr.hpp"
#include "charp/odesolve.hpp"
#include "charp/tower_io.hpp"

using namespace charp;
using nlohmann::json;

namespace {

struct Common {
  std::string tower_file;
  std::string inline_spec;
  std::string format = "text";
  unsigned j_max = 0;  // 0: use CHARP_JMAX or the library default
};

void add_common(CLI::App* cmd, Common& c) {
  auto* file = cmd->add_option("--tower", c.tower_file, "Tower spec JSON file");
  cmd->add_option("--inline", c.inline_spec,
                  "Inline tower spec, e.g. \"p=3; X:base; E:hyperexp(2*X)\"")
      ->excludes(file);
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--jmax", c.j_max, "Annihilator search bound override");
}

Tower load_tower(const Common& c) {
  if (!c.inline_spec.empty()) return tower_from_dsl(c.inline_spec);
  if (c.tower_file.empty())
    throw BadTowerSpec("a tower is required: --tower FILE or --inline SPEC");
  std::ifstream in(c.tower_file);
  if (!in) throw BadTowerSpec("cannot read tower file: " + c.tower_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return tower_from_json_text(ss.str());
}

unsigned effective_j_max(const Common& c, const Tower& t) {
  if (c.j_max > 0) return c.j_max;
  if (const char* env = std::getenv("CHARP_JMAX")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw BadTowerSpec(std::string("invalid CHARP_JMAX: ") + env);
  }
  return default_j_max(t);
}

std::string format_op_poly(const Tower& t, const Poly<Elem>& p,
                           const std::string& indet) {
  if (p.is_zero()) return "0";
  return detail::format_poly(t, p, indet).s;
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump() << "\n";
  else
    std::cout << text << "\n";
}

// ---- subcommand bodies ----

int run_derive(const Common& c, const std::string& expr, unsigned order) {
  Tower t = load_tower(c);
  Elem r = t.derive_n(parse_expr(expr, t), order);
  std::string s = format_elem(t, r);
  emit(c, json{{"value", s}}, s);
  return 0;
}

int run_annihilate(const Common& c, const std::string& expr) {
  Tower t = load_tower(c);
  PPoly p = p_annihilator(t, parse_expr(expr, t), effective_j_max(c, t));
  std::string s = format_op_poly(t, p.as_poly(t.one()), "D");
  emit(c, json{{"annihilator", s}}, s);
  return 0;
}

int run_integrate(const Common& c, const std::string& expr) {
  Tower t = load_tower(c);
  AntiderivResult r = integrate(t, parse_expr(expr, t), effective_j_max(c, t));
  const Tower& te = r.extended_tower;
  json gens = json::array();
  std::string text = format_elem(te, r.value);
  for (const auto& [name, arg] : r.new_generators) {
    std::string a = format_elem(te, arg);
    gens.push_back({{"name", name}, {"dlog_of", a}});
    text += "\n  with " + name + " a logarithm of " + a;
  }
  std::string cert = format_op_poly(t, r.certificate.as_poly(t.one()), "D");
  emit(c,
       json{{"value", format_elem(te, r.value)},
            {"new_generators", gens},
            {"certificate", cert},
            {"verified", true}},
       text);
  return 0;
}

int run_reduce(const Common& c, const std::string& op_src) {
  Tower t = load_tower(c);
  Poly<Elem> op = parse_operator(op_src, t);
  ReduceResult r =
      reduce_to_constant_coeffs(t, SkewOp(op.coeffs(), t.one()), effective_j_max(c, t));
  std::string s = format_op_poly(t, r.op.as_poly(t.one()), "D");
  std::string ps = format_op_poly(t, r.p.as_poly(t.one()), "D");
  std::string qs = format_op_poly(t, r.min_poly, "T");
  emit(c,
       json{{"operator", s}, {"p_annihilator", ps}, {"min_poly", qs}},
       s + "\n  from P = " + ps + " and Q = " + qs);
  return 0;
}

json solution_json(const OdeSolution& s) {
  const Tower& te = s.extended_tower;
  json j{{"generator", s.generator},
         {"solution", format_elem(te, s.solution)},
         {"verified", s.verified}};
  if (s.alpha)
    j["alpha"] = format_elem(te, te.lift(*s.alpha));
  else
    j["alpha"] = nullptr;
  if (s.modulus)
    j["modulus"] = format_op_poly(te, *s.modulus, "T");
  else
    j["modulus"] = nullptr;
  return j;
}

int run_solve(const Common& c, const std::string& op_src, bool experimental,
              const std::string& root_path) {
  Tower t = load_tower(c);
  Poly<Elem> op = parse_operator(op_src, t);
  bool constant = true;
  for (const Elem& a : op.coeffs())
    if (!t.is_constant(a)) constant = false;

  RootPath rp = RootPath::Auto;
  if (root_path == "fp") rp = RootPath::FpOnly;
  if (root_path == "formal") rp = RootPath::Formal;

  ConstOp q = ConstOp::from_poly(op);
  json extra;
  std::string pre;
  if (!constant) {
    // variable-coefficient pipeline: reduce, solve the constant equation,
    // then transfer its solutions back through a right cofactor
    if (!experimental) {
      std::cerr << "variable coefficients require --experimental\n";
      return 4;
    }
    SkewOp skew(op.coeffs(), t.one());
    ReduceResult rr = reduce_to_constant_coeffs(t, skew, effective_j_max(c, t));
    SkewOp u = transfer_operator(t, skew, rr.op);
    q = rr.op;
    extra["reduced_operator"] = format_op_poly(t, q.as_poly(t.one()), "D");
    extra["transfer"] = format_op_poly(t, Poly<Elem>(u.coeffs(), t.one()), "D");
    pre = "reduced to " + extra["reduced_operator"].get<std::string>() +
          "\ntransfer U = " + extra["transfer"].get<std::string>() + "\n";
  }

  auto sols = solve_constant_ode(t, q, rp);
  json jsols = json::array();
  std::string text = pre;
  for (const OdeSolution& s : sols) {
    jsols.push_back(solution_json(s));
    const Tower& te = s.extended_tower;
    text += "solution " + format_elem(te, s.solution);
    if (s.generator.empty())
      text += " (constant)";
    else if (s.alpha)
      text += " with d(" + s.generator + ") = " +
              format_elem(te, te.derive(s.solution));
    if (s.modulus)
      text += " with formal exponent modulo " +
              format_op_poly(te, *s.modulus, "T");
    text += s.verified ? " [verified]" : " [NOT verified]";
    text += "\n";
  }
  if (!text.empty() && text.back() == '\n') text.pop_back();

  const OdeSolution& s0 = sols.front();
  const Tower& te = s0.extended_tower;
  json construction{{"e", s0.e},
                    {"P", format_op_poly(te, s0.p_part, "T")},
                    {"A", format_op_poly(te, s0.a_poly, "T")},
                    {"R", format_op_poly(te, s0.r_poly, "T")}};
  json out{{"solutions", jsols}, {"construction", construction}};
  if (!extra.is_null()) out["experimental"] = extra;
  emit(c, out, text);
  for (const OdeSolution& s : sols)
    if (!s.verified) return 5;
  return 0;
}

int run_verify(const Common& c, const std::string& d_src,
               const std::string& equals_src) {
  Tower t = load_tower(c);
  Elem lhs = t.derive(parse_expr(d_src, t));
  Elem rhs = parse_expr(equals_src, t);
  bool ok = lhs == rhs;
  emit(c,
       json{{"verified", ok}, {"derivative", format_elem(t, lhs)}},
       ok ? "verified" : "mismatch: derivative is " + format_elem(t, lhs));
  return ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus in differential fields of characteristic p"};
  app.require_subcommand(1);

  Common c;
  std::string expr, op_src, d_src, equals_src, root_path = "auto";
  unsigned order = 1;
  bool experimental = false;

  CLI::App* derive = app.add_subcommand("derive", "n-th derivative of an expression");
  add_common(derive, c);
  derive->add_option("--expr", expr, "Expression")->required();
  derive->add_option("--order", order, "Derivative order");

  CLI::App* annihilate =
      app.add_subcommand("annihilate", "constant-coefficient annihilator of an element");
  add_common(annihilate, c);
  annihilate->add_option("--expr", expr, "Expression")->required();

  CLI::App* integrate_cmd =
      app.add_subcommand("integrate", "antiderivative, extending by logarithms if needed");
  add_common(integrate_cmd, c);
  integrate_cmd->add_option("--expr", expr, "Expression")->required();

  CLI::App* reduce =
      app.add_subcommand("reduce", "constant-coefficient consequence of a variable-coefficient operator");
  add_common(reduce, c);
  reduce->add_option("--op", op_src, "Operator, polynomial in D")->required();

  CLI::App* solve =
      app.add_subcommand("solve", "solution classes of a linear equation");
  add_common(solve, c);
  solve->add_option("--op", op_src, "Operator, polynomial in D")->required();
  solve->add_flag("--experimental", experimental,
                  "Allow the variable-coefficient reduce/solve/transfer pipeline");
  solve->add_option("--roots", root_path, "Root search: auto, fp, or formal")
      ->check(CLI::IsMember({"auto", "fp", "formal"}));

  CLI::App* verify = app.add_subcommand("verify", "check a claimed identity d(a) = b");
  add_common(verify, c);
  verify->add_option("--d", d_src, "Element whose derivative is claimed")->required();
  verify->add_option("--equals", equals_src, "Claimed derivative")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (derive->parsed()) return run_derive(c, expr, order);
    if (annihilate->parsed()) return run_annihilate(c, expr);
    if (integrate_cmd->parsed()) return run_integrate(c, expr);
    if (reduce->parsed()) return run_reduce(c, op_src);
    if (solve->parsed()) return run_solve(c, op_src, experimental, root_path);
    if (verify->parsed()) return run_verify(c, d_src, equals_src);
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoRootWithinBound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NoTransferFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const GenericityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
