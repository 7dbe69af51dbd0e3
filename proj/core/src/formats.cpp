#include "unihecke/formats.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace unihecke {

using nlohmann::json;

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string &line) { return trim(line.substr(0, line.find('#'))); }

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::string where(std::size_t lineno) { return "line " + std::to_string(lineno) + ": "; }

json parse_json(const std::string &s, std::size_t lineno) {
  try {
    return json::parse(s);
  } catch (const json::exception &e) {
    throw FormatError(where(lineno) + "malformed value '" + s + "'");
  }
}

// Space-separated tokens, keeping brackets together.
std::vector<std::string> tokens(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[' || ch == '{') ++depth;
    if (ch == ']' || ch == '}') --depth;
    if ((ch == ' ' || ch == '\t') && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' || depth == 0) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
T get_as(const json &j, const std::string &key, std::size_t lineno) {
  try {
    return j.get<T>();
  } catch (const json::exception &) {
    throw FormatError(where(lineno) + "value of '" + key + "' has the wrong shape");
  }
}

std::string compact(const json &j) { return j.dump(); }

json group_json(const FinGenAbelianGroup &g) {
  std::vector<std::string> tor;
  for (const auto &t : g.torsion_invariants) tor.push_back(t.str());
  return {{"free_rank", g.free_rank}, {"torsion", tor}};
}

FinGenAbelianGroup group_from(const json &j) {
  FinGenAbelianGroup g;
  g.free_rank = j.at("free_rank").get<std::size_t>();
  for (const auto &t : j.at("torsion")) g.torsion_invariants.push_back(BigInt(t.get<std::string>()));
  return g;
}

}  // namespace

std::string read_text_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GroupSpec parse_group_spec(const std::string &text) {
  GroupSpec g;
  bool have_rank = false, have_roots = false, have_coroots = false, have_simple = false;
  std::size_t lineno = 0;
  for (const auto &raw : lines_of(text)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw FormatError(where(lineno) + "expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    json v = parse_json(trim(line.substr(colon + 1)), lineno);
    if (key == "name") {
      g.name = get_as<std::string>(v, key, lineno);
    } else if (key == "rank") {
      g.datum.rank = get_as<std::size_t>(v, key, lineno);
      have_rank = true;
    } else if (key == "roots") {
      g.datum.roots = get_as<std::vector<Vec>>(v, key, lineno);
      have_roots = true;
    } else if (key == "coroots") {
      g.datum.coroots = get_as<std::vector<Vec>>(v, key, lineno);
      have_coroots = true;
    } else if (key == "simple_indices") {
      g.datum.simple = get_as<std::vector<std::size_t>>(v, key, lineno);
      have_simple = true;
    } else if (key == "frobenius") {
      g.frobenius = get_as<Mat>(v, key, lineno);
    } else if (key == "delta0") {
      g.delta0 = get_as<std::vector<std::size_t>>(v, key, lineno);
    } else if (key == "facets") {
      if (!v.is_array()) throw FormatError(where(lineno) + "facets must be a list");
      for (const auto &f : v) {
        FacetEntry e;
        e.J = get_as<std::vector<long>>(f.value("J", json::array()), key, lineno);
        e.cuspidal = f.value("cuspidal", std::string("iwahori"));
        if (f.contains("exponents"))
          for (const auto &[k, n] : f.at("exponents").items()) {
            try {
              e.exponents[std::stol(k)] = n.get<Int>();
            } catch (const std::exception &) {
              throw FormatError(where(lineno) + "exponent keys must be node labels");
            }
          }
        g.builtin_facets.push_back(e);
      }
    } else {
      throw FormatError(where(lineno) + "unknown key '" + key + "'");
    }
  }
  if (!have_rank || !have_roots || !have_coroots || !have_simple)
    throw FormatError("group spec needs rank, roots, coroots and simple_indices");
  auto check_len = [&](const std::vector<Vec> &vs, const std::string &what) {
    for (const auto &x : vs)
      if (x.size() != g.datum.rank) throw FormatError(what + " entry " + to_string(x) + " does not have length rank");
  };
  check_len(g.datum.roots, "roots");
  check_len(g.datum.coroots, "coroots");
  if (!g.frobenius.empty()) check_len(g.frobenius, "frobenius");
  if (!g.frobenius.empty() && g.frobenius.size() != g.datum.rank) throw FormatError("frobenius must be rank x rank");
  if (g.name.empty()) g.name = "group";
  g.datum.name = g.name;
  if (g.builtin_facets.empty()) g.builtin_facets.push_back({{}, "iwahori", {}});
  return g;
}

std::string write_group_spec(const GroupSpec &g) {
  std::ostringstream os;
  os << "name: " << compact(g.name) << "\n";
  os << "rank: " << g.datum.rank << "\n";
  os << "roots: " << compact(g.datum.roots) << "\n";
  os << "coroots: " << compact(g.datum.coroots) << "\n";
  os << "simple_indices: " << compact(g.datum.simple) << "\n";
  if (!g.frobenius.empty()) os << "frobenius: " << compact(g.frobenius) << "\n";
  os << "delta0: " << compact(g.delta0) << "\n";
  json facets = json::array();
  for (const auto &f : g.builtin_facets) {
    json e = {{"J", f.J}, {"cuspidal", f.cuspidal}};
    if (!f.exponents.empty()) {
      json ex = json::object();
      for (const auto &[k, n] : f.exponents) ex[std::to_string(k)] = n;
      e["exponents"] = ex;
    }
    facets.push_back(e);
  }
  os << "facets: " << compact(facets) << "\n";
  return os.str();
}

GroupSpec load_group(const std::string &ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) return builtin_group(ref.substr(prefix.size()));
  return parse_group_spec(read_text_file(ref));
}

ParameterTable parse_parameter_table(const std::string &text) {
  ParameterTable t;
  std::size_t lineno = 0;
  for (const auto &raw : lines_of(text)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw FormatError(where(lineno) + "expected '<type> <J> <cuspidal> : ...'");
    auto head = tokens(line.substr(0, colon));
    if (head.size() != 3) throw FormatError(where(lineno) + "expected '<type> <J> <cuspidal>' before ':'");
    ParameterKey key;
    key.type = head[0];
    key.J = get_as<std::vector<long>>(parse_json(head[1], lineno), "J", lineno);
    std::sort(key.J.begin(), key.J.end());
    key.cuspidal = head[2];
    std::map<long, Int> exps;
    for (const auto &tok : tokens(line.substr(colon + 1))) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw FormatError(where(lineno) + "expected '<label>=<N>', got '" + tok + "'");
      try {
        long label = std::stol(tok.substr(0, eq));
        Int n = std::stoll(tok.substr(eq + 1));
        if (n < 0) throw FormatError(where(lineno) + "exponents are nonnegative");
        exps[label] = n;
      } catch (const FormatError &) {
        throw;
      } catch (const std::exception &) {
        throw FormatError(where(lineno) + "expected '<label>=<N>', got '" + tok + "'");
      }
    }
    t.entries[key] = exps;
  }
  return t;
}

std::string write_parameter_table(const ParameterTable &t) {
  std::ostringstream os;
  for (const auto &[k, exps] : t.entries) {
    os << k.type << " " << compact(k.J) << " " << k.cuspidal << " :";
    for (const auto &[label, n] : exps) os << " " << label << "=" << n;
    os << "\n";
  }
  return os.str();
}

ComponentCatalog parse_component_catalog(const std::string &text) {
  ComponentCatalog c;
  std::size_t lineno = 0;
  for (const auto &raw : lines_of(text)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto tok = tokens(line);
    if (tok.size() < 2 || (tok[0] != "padic" && tok[0] != "galois"))
      throw FormatError(where(lineno) + "expected 'padic <group> ...' or 'galois <group> ...'");
    std::map<std::string, std::string> kv;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      auto eq = tok[i].find('=');
      if (eq == std::string::npos) throw FormatError(where(lineno) + "expected key=value, got '" + tok[i] + "'");
      kv[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
    }
    auto take = [&](const std::string &k, const std::string &dflt) {
      auto it = kv.find(k);
      if (it == kv.end()) return dflt;
      std::string v = it->second;
      kv.erase(it);
      return v;
    };
    GroupComponents &gc = c.groups[tok[1]];
    if (tok[0] == "padic") {
      PadicComponentEntry e;
      e.facet = get_as<std::vector<long>>(parse_json(take("facet", "[]"), lineno), "facet", lineno);
      e.levi = get_as<SimpleSubset>(parse_json(take("levi", "[]"), lineno), "levi", lineno);
      e.cuspidal = take("cuspidal", "iwahori");
      gc.padic.push_back(e);
    } else {
      GaloisComponentEntry e;
      e.levi = get_as<SimpleSubset>(parse_json(take("levi", "[]"), lineno), "levi", lineno);
      e.cuspidal = take("cuspidal", "iwahori");
      e.lambda = get_as<std::vector<Int>>(parse_json(take("lambda", "[]"), lineno), "lambda", lineno);
      e.lambda_star = get_as<std::vector<Int>>(parse_json(take("lambda_star", "[]"), lineno), "lambda_star", lineno);
      gc.galois.push_back(e);
    }
    if (!kv.empty()) throw FormatError(where(lineno) + "unknown key '" + kv.begin()->first + "'");
  }
  return c;
}

std::string write_component_catalog(const ComponentCatalog &c) {
  std::ostringstream os;
  for (const auto &[name, gc] : c.groups) {
    for (const auto &p : gc.padic)
      os << "padic " << name << " facet=" << compact(p.facet) << " levi=" << compact(p.levi) << " cuspidal=" << p.cuspidal
         << "\n";
    for (const auto &g : gc.galois) {
      os << "galois " << name << " levi=" << compact(g.levi) << " cuspidal=" << g.cuspidal;
      if (!g.lambda.empty()) os << " lambda=" << compact(g.lambda);
      if (!g.lambda_star.empty()) os << " lambda_star=" << compact(g.lambda_star);
      os << "\n";
    }
  }
  return os.str();
}

std::string comparison_to_json(const ComparisonReport &r, int indent) {
  json checks = json::array();
  for (const auto &p : r.parameter_check)
    checks.push_back({{"galois_simple", p.galois_simple},
                      {"padic_simple", p.padic_simple},
                      {"q_exponent", p.q_exponent},
                      {"q_exponent_star", p.q_exponent_star},
                      {"lambda", p.lambda},
                      {"lambda_star", p.lambda_star},
                      {"v_exponent", p.v_exponent},
                      {"v_exponent_star", p.v_exponent_star},
                      {"ok", p.ok}});
  json j = {{"group", r.group},
            {"padic_component", r.padic_component},
            {"galois_component", r.galois_component},
            {"verdict", r.isomorphic ? "isomorphic" : "mismatch"},
            {"witness", r.witness},
            {"based_root_datum_iso",
             {{"lattice_map", r.based_root_datum_iso.lattice_map},
              {"dual_map", r.based_root_datum_iso.dual_map},
              {"root_index_map", r.based_root_datum_iso.root_index_map}}},
            {"simple_map", r.simple_map},
            {"parameter_check", checks},
            {"v_assignment", {{"v_exponent", r.v_exponent}, {"constrained", r.v_constrained}}},
            {"omega_part", {{"padic", group_json(r.omega_padic)}, {"galois", group_json(r.omega_galois)}}}};
  return j.dump(indent);
}

ComparisonReport comparison_from_json(const std::string &s) {
  try {
    json j = json::parse(s);
    ComparisonReport r;
    r.group = j.at("group").get<std::string>();
    r.padic_component = j.at("padic_component").get<std::string>();
    r.galois_component = j.at("galois_component").get<std::string>();
    r.isomorphic = j.at("verdict").get<std::string>() == "isomorphic";
    r.witness = j.at("witness").get<std::string>();
    const json &iso = j.at("based_root_datum_iso");
    r.based_root_datum_iso.lattice_map = iso.at("lattice_map").get<Mat>();
    r.based_root_datum_iso.dual_map = iso.at("dual_map").get<Mat>();
    r.based_root_datum_iso.root_index_map = iso.at("root_index_map").get<std::vector<long>>();
    r.simple_map = j.at("simple_map").get<std::vector<long>>();
    for (const auto &p : j.at("parameter_check")) {
      RootParameterCheck c;
      c.galois_simple = p.at("galois_simple").get<std::size_t>();
      c.padic_simple = p.at("padic_simple").get<std::size_t>();
      c.q_exponent = p.at("q_exponent").get<Int>();
      c.q_exponent_star = p.at("q_exponent_star").get<Int>();
      c.lambda = p.at("lambda").get<Int>();
      c.lambda_star = p.at("lambda_star").get<Int>();
      c.v_exponent = p.at("v_exponent").get<std::string>();
      c.v_exponent_star = p.at("v_exponent_star").get<std::string>();
      c.ok = p.at("ok").get<bool>();
      r.parameter_check.push_back(c);
    }
    r.v_exponent = j.at("v_assignment").at("v_exponent").get<std::string>();
    r.v_constrained = j.at("v_assignment").at("constrained").get<bool>();
    r.omega_padic = group_from(j.at("omega_part").at("padic"));
    r.omega_galois = group_from(j.at("omega_part").at("galois"));
    return r;
  } catch (const json::exception &e) {
    throw FormatError(std::string("comparison report: ") + e.what());
  }
}

std::string comparison_to_text(const ComparisonReport &r) {
  std::ostringstream os;
  os << "group: " << r.group << "\n";
  os << "padic_component: " << r.padic_component << "\n";
  os << "galois_component: " << r.galois_component << "\n";
  os << "verdict: " << (r.isomorphic ? "isomorphic" : "mismatch") << "\n";
  if (!r.witness.empty()) os << "witness: " << r.witness << "\n";
  os << "lattice_map: " << to_string(r.based_root_datum_iso.lattice_map) << "\n";
  os << "simple_map:";
  for (auto s : r.simple_map) os << " " << s;
  os << "\n";
  for (const auto &p : r.parameter_check)
    os << "  root " << p.galois_simple << " -> " << p.padic_simple << ": q^" << p.q_exponent << " / v^(2*" << p.lambda
       << "), q^" << p.q_exponent_star << " / v^(2*" << p.lambda_star << "), v exponent " << p.v_exponent << ", "
       << p.v_exponent_star << (p.ok ? "" : "  MISMATCH") << "\n";
  os << "v_exponent: " << r.v_exponent << (r.v_constrained ? "" : " (unconstrained)") << "\n";
  os << "omega_part: " << r.omega_padic.to_string() << " / " << r.omega_galois.to_string() << "\n";
  return os.str();
}

}  // namespace unihecke
