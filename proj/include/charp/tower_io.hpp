#ifndef CHARP_TOWER_IO_HPP
#define CHARP_TOWER_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "charp/expr.hpp"
#include "charp/tower.hpp"

namespace charp {

namespace detail {

inline std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// Split on `sep` at bracket depth zero (tracking both () and []).
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline GenKind kind_from_name(const std::string& k) {
  for (GenKind g : {GenKind::Base, GenKind::Primitive, GenKind::Log,
                    GenKind::HyperExp, GenKind::Exp, GenKind::LinearBlock})
    if (k == gen_kind_name(g)) return g;
  throw BadTowerSpec("unknown generator kind: " + k);
}

inline Tower add_linear_block(const Tower& t, const std::string& names_csv,
                              const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::string> names;
  for (const std::string& n : split_top(names_csv, ',')) {
    std::string nm = trimmed(n);
    if (nm.empty()) throw BadTowerSpec("empty name in linear block");
    names.push_back(nm);
  }
  const std::size_t n = names.size();
  if (rows.size() != n)
    throw BadTowerSpec("linear block matrix must be " + std::to_string(n) +
                       "x" + std::to_string(n));
  Matrix<Elem> m(n, n, t.one());
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw BadTowerSpec("linear block matrix row " + std::to_string(i) +
                         " has wrong length");
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = parse_expr(rows[i][j], t);
  }
  return t.with_linear_block(names, m);
}

}  // namespace detail

/// Build a tower from its canonical JSON description:
///   {"p": int, "generators": [{"name", "kind", "arg"}...]}
/// where "arg" is an expression string (absent for "base") or, for
/// "linear_block", a square matrix of expression strings; a block's "name" is
/// a comma-separated list of member names.
inline Tower tower_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw BadTowerSpec("tower spec must be a JSON object");
    Tower t(j.at("p").get<std::uint64_t>());
    for (const auto& g : j.at("generators")) {
      std::string name = g.at("name").get<std::string>();
      GenKind kind = detail::kind_from_name(g.at("kind").get<std::string>());
      switch (kind) {
        case GenKind::Base:
          t = t.with_base(name);
          break;
        case GenKind::LinearBlock: {
          std::vector<std::vector<std::string>> rows;
          for (const auto& row : g.at("arg")) {
            rows.emplace_back();
            for (const auto& cell : row)
              rows.back().push_back(cell.get<std::string>());
          }
          t = detail::add_linear_block(t, name, rows);
          break;
        }
        default:
          t = t.extended(name, kind, parse_expr(g.at("arg").get<std::string>(), t));
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw BadTowerSpec(std::string("malformed tower spec: ") + e.what());
  }
}

inline Tower tower_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadTowerSpec(std::string("invalid JSON: ") + e.what());
  }
  return tower_from_json(j);
}

/// Inline mini-DSL, e.g. "p=3; X:base; E:hyperexp(2*X)".  Statements are
/// semicolon-separated; the first must set p.  A generator statement is
/// "name:kind" or "name:kind(arg)"; a linear block takes comma-separated
/// names and a bracketed matrix: "Y,Y1:linear_block([[0,1],[X,0]])".
inline Tower tower_from_dsl(const std::string& src) {
  std::vector<std::string> stmts;
  for (const std::string& s : detail::split_top(src, ';')) {
    std::string st = detail::trimmed(s);
    if (!st.empty()) stmts.push_back(st);
  }
  if (stmts.empty() || stmts[0].rfind("p", 0) != 0 ||
      stmts[0].find('=') == std::string::npos)
    throw BadTowerSpec("inline tower spec must start with p=<prime>");
  std::string pval = detail::trimmed(stmts[0].substr(stmts[0].find('=') + 1));
  std::uint64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(pval, &used);
    if (used != pval.size()) throw std::invalid_argument(pval);
  } catch (const std::exception&) {
    throw BadTowerSpec("invalid characteristic: " + pval);
  }
  Tower t(p);
  for (std::size_t i = 1; i < stmts.size(); ++i) {
    const std::string& st = stmts[i];
    std::size_t colon = st.find(':');
    if (colon == std::string::npos)
      throw BadTowerSpec("expected name:kind in \"" + st + "\"");
    std::string name = detail::trimmed(st.substr(0, colon));
    std::string rest = detail::trimmed(st.substr(colon + 1));
    std::string kind_name = rest, arg;
    std::size_t open = rest.find('(');
    if (open != std::string::npos) {
      if (rest.back() != ')')
        throw BadTowerSpec("unbalanced parentheses in \"" + st + "\"");
      kind_name = detail::trimmed(rest.substr(0, open));
      arg = detail::trimmed(rest.substr(open + 1, rest.size() - open - 2));
    }
    GenKind kind = detail::kind_from_name(kind_name);
    switch (kind) {
      case GenKind::Base:
        if (!arg.empty()) throw BadTowerSpec("base takes no argument");
        t = t.with_base(name);
        break;
      case GenKind::LinearBlock: {
        // arg is [[e,e,...],[...]]
        std::string body = detail::trimmed(arg);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
          throw BadTowerSpec("linear_block expects a bracketed matrix");
        std::vector<std::vector<std::string>> rows;
        for (const std::string& r :
             detail::split_top(body.substr(1, body.size() - 2), ',')) {
          std::string row = detail::trimmed(r);
          if (row.size() < 2 || row.front() != '[' || row.back() != ']')
            throw BadTowerSpec("linear_block matrix row must be bracketed");
          rows.emplace_back();
          for (const std::string& cell :
               detail::split_top(row.substr(1, row.size() - 2), ','))
            rows.back().push_back(detail::trimmed(cell));
        }
        t = detail::add_linear_block(t, name, rows);
        break;
      }
      default:
        if (arg.empty())
          throw BadTowerSpec(kind_name + " requires an argument");
        t = t.extended(name, kind, parse_expr(arg, t));
    }
  }
  return t;
}

/// Canonical JSON form of a tower; tower_from_json reproduces the tower.
inline nlohmann::json tower_to_json(const Tower& t) {
  nlohmann::json gens = nlohmann::json::array();
  const auto& slots = t.slots();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Tower::Slot& s = slots[i];
    nlohmann::json g;
    if (s.kind == GenKind::LinearBlock) {
      // emit the whole block at its first member
      if (s.block_index != 0) continue;
      std::string names = s.name;
      std::size_t n = s.block_row.size();
      for (std::size_t k = 1; k < n; ++k) names += "," + slots[i + k].name;
      nlohmann::json m = nlohmann::json::array();
      for (std::size_t r = 0; r < n; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (const Elem& c : slots[i + r].block_row)
          row.push_back(format_elem(t, c));
        m.push_back(row);
      }
      g["name"] = names;
      g["kind"] = gen_kind_name(s.kind);
      g["arg"] = m;
    } else {
      g["name"] = s.name;
      g["kind"] = gen_kind_name(s.kind);
      if (s.kind != GenKind::Base) g["arg"] = format_elem(t, s.arg);
    }
    gens.push_back(std::move(g));
  }
  return nlohmann::json{{"p", t.p()}, {"generators", std::move(gens)}};
}

}  // namespace charp

#endif  // CHARP_TOWER_IO_HPP
