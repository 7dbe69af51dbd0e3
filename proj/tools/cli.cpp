#include "cli.hpp"

#include "unihecke/formats.hpp"
#include "unihecke/iwahori_matsumoto.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace unihecke::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  std::string format = "text";
  std::size_t max_elements = 200;
  std::optional<Int> radius;
  bool all = false;
  std::string params_file, catalog_file;
  std::string facet = "[]";
  std::string cuspidal = "iwahori";
  std::size_t psi = 0;
  std::string lhs, rhs;
};

// Outcome of one command on one group.
struct Result {
  json data;
  bool ok = true;
  std::string text;  // preformatted text output, if any
};

json group_json(const FinGenAbelianGroup &g) {
  std::vector<std::string> tor;
  for (const auto &t : g.torsion_invariants) tor.push_back(t.str());
  return {{"free_rank", g.free_rank}, {"torsion", tor}, {"order", g.is_finite() ? g.order().str() : "infinite"}};
}

std::vector<std::string> rat_strings(const QVec &v) {
  std::vector<std::string> out;
  for (const auto &x : v) out.push_back(to_string(x));
  return out;
}

json affine_json(const AffineWeylElement &e) { return {{"translation", e.translation}, {"linear", e.linear}}; }

std::vector<long> parse_labels(const std::string &s) {
  std::string t = s;
  if (t.find('[') == std::string::npos) t = "[" + t + "]";
  try {
    auto v = json::parse(t).get<std::vector<long>>();
    std::sort(v.begin(), v.end());
    return v;
  } catch (const json::exception &) {
    throw UsageError("cannot parse label list '" + s + "'");
  }
}

void render_text(const json &j, std::ostream &os, int indent) {
  const std::string pad(indent, ' ');
  auto scalar_list = [](const json &a) {
    return std::all_of(a.begin(), a.end(), [](const json &x) { return !x.is_object(); });
  };
  for (const auto &[k, v] : j.items()) {
    if (v.is_object()) {
      os << pad << k << ":\n";
      render_text(v, os, indent + 2);
    } else if (v.is_array() && !scalar_list(v)) {
      os << pad << k << ":\n";
      for (const auto &item : v) {
        if (item.is_object()) {
          os << pad << "  -\n";
          render_text(item, os, indent + 4);
        } else {
          os << pad << "  - " << item.dump() << "\n";
        }
      }
    } else if (v.is_string()) {
      os << pad << k << ": " << v.get<std::string>() << "\n";
    } else {
      os << pad << k << ": " << v.dump() << "\n";
    }
  }
}

struct Context {
  Options opt;
  ParameterTable table = ParameterTable::builtin();
  ComponentCatalog catalog = ComponentCatalog::builtin();

  FacetOptions facet_options() const {
    FacetOptions f;
    if (opt.radius) f.radius = static_cast<std::size_t>(*opt.radius);
    return f;
  }
};

Result cmd_validate(const Context &, const GroupSpec &g) {
  Result r;
  auto v = validate_and_classify(g.datum);
  r.data["group"] = g.name;
  r.data["root_datum"] = v.ok ? "valid" : "invalid";
  if (!v.ok) {
    r.ok = false;
    r.data["witness"] = v.error;
    return r;
  }
  r.data["types"] = v.types;
  r.data["cartan"] = v.cartan;
  r.data["dual_dual_identity"] = dual(dual(g.datum)).same_structure(g.datum);
  try {
    GaloisDatum gd = g.galois();
    check_marking(gd, g.marking());
    r.data["frobenius_order"] = gd.order();
    r.data["galois_action"] = "valid";
  } catch (const std::exception &e) {
    r.ok = false;
    r.data["galois_action"] = "invalid";
    r.data["witness"] = e.what();
  }
  if (!r.data["dual_dual_identity"].get<bool>()) r.ok = false;
  return r;
}

Result cmd_dual(const Context &, const GroupSpec &g) {
  Result r;
  BasedRootDatum d = dual(g.datum);
  auto v = validate_and_classify(d);
  r.ok = v.ok;
  Mat frob = g.frobenius.empty() ? identity_mat(g.datum.rank) : cocharacter_action(g.frobenius);
  r.data = {{"group", g.name},         {"rank", d.rank},     {"roots", d.roots},
            {"coroots", d.coroots},    {"simple_indices", d.simple}, {"frobenius", frob},
            {"types", v.types},        {"dual_dual_identity", dual(d).same_structure(g.datum)}};
  if (!v.ok) r.data["witness"] = v.error;
  return r;
}

Result cmd_levi_classes(const Context &, const GroupSpec &g) {
  Result r;
  RelativeContext ctx(g.galois(), g.marking());
  auto classes = classify_levis(ctx);
  json list = json::array();
  for (const auto &c : classes)
    list.push_back({{"representative", c.representative},
                    {"members", c.orbit_members},
                    {"relative_orbit", c.relative_orbit}});
  r.data = {{"group", g.name}, {"count", classes.size()}, {"classes", list}};
  return r;
}

Result cmd_dual_levis(const Context &, const GroupSpec &g) {
  Result r;
  RelativeContext ctx(g.galois(), g.marking());
  json pairs = json::array(), duals = json::array();
  try {
    auto rep = dual_levi_bijection(ctx);
    for (const auto &p : rep.pairs) pairs.push_back({{"levi", p.levi.representative}, {"dual", p.dual.representative}});
    for (const auto &c : rep.dual_classes)
      duals.push_back({{"representative", c.representative}, {"members", c.members}, {"relevant", c.relevant}});
    r.data = {{"group", g.name},
              {"levi_classes", rep.pairs.size()},
              {"relevant_dual_classes", rep.relevant_count},
              {"bijective", rep.pairs.size() == rep.relevant_count},
              {"pairs", pairs},
              {"dual_classes", duals}};
    r.ok = rep.pairs.size() == rep.relevant_count;
  } catch (const std::logic_error &e) {
    r.ok = false;
    r.data = {{"group", g.name}, {"bijective", false}, {"witness", e.what()}};
  }
  return r;
}

Result cmd_iwahori_weyl(const Context &c, const GroupSpec &g) {
  Result r;
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  json nodes = json::array();
  for (const auto &n : d.nodes())
    nodes.push_back({{"label", n.label},
                     {"affine", n.affine},
                     {"component", n.component},
                     {"gradient", rat_strings(n.grad)},
                     {"level", to_string(n.level)}});
  const std::size_t radius = c.opt.radius ? static_cast<std::size_t>(*c.opt.radius) : 2;
  // Ball of word length <= radius in the node reflections and Omega generators.
  std::vector<AffineWeylElement> gens;
  for (const auto &n : d.nodes()) gens.push_back(n.reflection);
  for (std::size_t k = 0; k < d.omega_dim(); ++k) {
    Vec e(d.omega_dim(), 0);
    e[k] = 1;
    gens.push_back(d.omega_element(e));
    gens.push_back(d.inverse(d.omega_element(e)));
  }
  std::set<AffineWeylElement> seen{d.identity()};
  std::vector<AffineWeylElement> frontier{d.identity()}, order{d.identity()};
  for (std::size_t step = 0; step < radius && order.size() < c.opt.max_elements; ++step) {
    std::vector<AffineWeylElement> next;
    for (const auto &x : frontier)
      for (const auto &s : gens) {
        auto y = d.multiply(x, s);
        if (seen.insert(y).second && order.size() < c.opt.max_elements) {
          next.push_back(y);
          order.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  json elems = json::array();
  for (const auto &x : order) {
    auto f = d.factor(x);
    elems.push_back({{"element", affine_json(x)}, {"length", d.length(x)}, {"omega", f.omega_coords}});
  }
  auto fact = check_wa_omega_factorisation(d, static_cast<Int>(radius));
  r.ok = fact.ok;
  r.data = {{"group", g.name},
            {"finite_weyl_order", d.finite_weyl().order()},
            {"translations", group_json(d.translations())},
            {"omega", group_json(d.omega())},
            {"nodes", nodes},
            {"factorisation_check", {{"ok", fact.ok}, {"detail", fact.detail}}},
            {"elements", elems}};
  return r;
}

json facet_json(const IwahoriWeylDatum &d, const FacetData &f) {
  json checks = json::array();
  for (const auto &ch : f.checks) checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  return {{"J", f.J},
          {"S_f_af", f.S_f_af_labels},
          {"coxeter_matrix", coxeter_matrix(d, f.S_f_af)},
          {"W_J_order", f.WJ.size()},
          {"W0_J_order", f.W0_J.size()},
          {"Omega_f", group_json(f.Omega_f)},
          {"Omega_f_tor", group_json(f.Omega_f_tor)},
          {"psi_characters", f.psi_characters},
          {"S_f", f.S_f_labels},
          {"dropped", f.dropped_labels},
          {"rank_X_J", f.XJ.size()},
          {"Rf",
           {{"rank", f.Rf.rank},
            {"types", f.Rf_types},
            {"roots", f.Rf.roots},
            {"coroots", f.Rf.coroots},
            {"simple_labels", f.Rf_simple_labels}}},
          {"checks", checks}};
}

Result cmd_facet(const Context &c, const GroupSpec &g) {
  Result r;
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  std::vector<long> J = parse_labels(c.opt.facet);
  try {
    FacetData f = analyze_facet(d, J, c.facet_options());
    facet_root_datum(d, f, c.facet_options());
    r.ok = f.all_ok();
    r.data = facet_json(d, f);
    r.data["group"] = g.name;
  } catch (const FacetConstructionError &e) {
    r.ok = false;
    r.data = {{"group", g.name}, {"J", J}, {"witness", e.what()}};
  }
  return r;
}

AffineHeckeDatum facet_hecke_datum(const Context &c, const GroupSpec &g) {
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  std::vector<long> J = parse_labels(c.opt.facet);
  FacetData f = analyze_facet(d, J, c.facet_options());
  facet_root_datum(d, f, c.facet_options());
  std::map<long, Int> exps;
  for (const auto &fe : g.builtin_facets) {
    auto fj = fe.J;
    std::sort(fj.begin(), fj.end());
    if (fj == J && fe.cuspidal == c.opt.cuspidal) exps = fe.exponents;
  }
  if (exps.empty()) exps = c.table.lookup(d, J, c.opt.cuspidal);
  FacetHeckeData h = build_from_facet(f, exps, g.name + " " + c.opt.cuspidal);
  if (c.opt.psi >= h.data.size()) throw UsageError("--psi out of range");
  return h.data[c.opt.psi];
}

Result cmd_hecke_mult(const Context &c, const GroupSpec &g) {
  Result r;
  HeckeAlgebra H(facet_hecke_datum(c, g));
  try {
    auto a = H.parse(c.opt.lhs), b = H.parse(c.opt.rhs);
    r.data = {{"group", g.name}, {"lhs", H.to_string(a)}, {"rhs", H.to_string(b)}, {"product", H.to_string(H.multiply(a, b))}};
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  return r;
}

Result cmd_hecke_center(const Context &c, const GroupSpec &g) {
  Result r;
  HeckeAlgebra H(facet_hecke_datum(c, g));
  HeckeElement e;
  try {
    e = H.parse(c.opt.lhs);
  } catch (const std::invalid_argument &ex) {
    throw UsageError(ex.what());
  }
  auto t = H.central_test(e);
  r.ok = t.central;
  r.data = {{"group", g.name}, {"element", H.to_string(e)}, {"central", t.central}};
  if (!t.central) r.data["witness"] = t.witness;
  return r;
}

Result cmd_xwr(const Context &, const GroupSpec &g) {
  Result r;
  GaloisDatum gd = g.galois();
  WeaklyUnramifiedGroup x = weakly_unramified_group(gd);
  IwahoriWeylDatum d = build_iwahori_weyl(gd, g.marking());
  json chars = json::array();
  for (const auto &z : x.characters) chars.push_back({{"c", z.c}, {"n", z.n}});
  r.ok = x.group == d.omega();
  r.data = {{"group", g.name},
            {"xwr", group_json(x.group)},
            {"omega", group_json(d.omega())},
            {"isomorphic", r.ok},
            {"characters", chars}};
  return r;
}

Result cmd_components(const Context &c, const GroupSpec &g) {
  Result r;
  MatchReport m = match_components(g, c.catalog, c.table, c.facet_options());
  json list = json::array();
  for (const auto &x : m.matches)
    list.push_back({{"facet", x.padic.entry.facet},
                    {"cuspidal", x.padic.entry.cuspidal},
                    {"psi", x.psi},
                    {"levi", x.galois.levi.representative},
                    {"galois_cuspidal", x.galois.cuspidal_id},
                    {"torus_iso", x.torus_iso},
                    {"intertwines", x.intertwines},
                    {"detail", x.detail}});
  r.ok = m.ok();
  r.data = {{"group", g.name}, {"matches", list}, {"errors", m.errors}};
  return r;
}

Result cmd_compare(const Context &c, const GroupSpec &g) {
  Result r;
  std::vector<long> J = parse_labels(c.opt.facet);
  GroupComparison gc = compare_group(g, c.catalog, c.table, c.facet_options());
  json reports = json::array();
  std::ostringstream text;
  bool found = false;
  for (std::size_t i = 0; i < gc.reports.size(); ++i) {
    const auto &m = gc.matching.matches[i];
    auto fj = m.padic.entry.facet;
    std::sort(fj.begin(), fj.end());
    if (fj != J || m.padic.entry.cuspidal != c.opt.cuspidal) continue;
    found = true;
    reports.push_back(json::parse(comparison_to_json(gc.reports[i])));
    text << comparison_to_text(gc.reports[i]);
    if (!gc.reports[i].isomorphic) r.ok = false;
  }
  for (const auto &e : gc.matching.errors) text << "error: " << e << "\n";
  if (!gc.matching.ok()) r.ok = false;
  if (!found) {
    r.ok = false;
    text << "error: no component for facet " << json(J).dump() << " cuspidal " << c.opt.cuspidal << "\n";
  }
  r.data = {{"group", g.name},        {"facet", J},      {"cuspidal", c.opt.cuspidal},
            {"verdict", r.ok ? "isomorphic" : "mismatch"}, {"reports", reports}, {"errors", gc.matching.errors}};
  r.text = "verdict: " + std::string(r.ok ? "isomorphic" : "mismatch") + "\n" + text.str();
  return r;
}

Result cmd_adjoint(const Context &c, const GroupSpec &g) {
  Result r;
  std::vector<long> J = parse_labels(c.opt.facet);
  AdjointReport a = check_adjoint_invariance(g, J, c.table, c.facet_options());
  json checks = json::array();
  for (const auto &ch : a.checks) checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  r.ok = a.ok;
  r.data = {{"group", a.group},
            {"adjoint", a.adjoint},
            {"J", a.J},
            {"ok", a.ok},
            {"index", a.index.str()},
            {"center_order", a.center_order.str()},
            {"checks", checks}};
  return r;
}

using Command = Result (*)(const Context &, const GroupSpec &);

Result run_one(Command cmd, const Context &c, const GroupSpec &g) {
  try {
    return cmd(c, g);
  } catch (const UsageError &) {
    throw;
  } catch (const std::exception &e) {
    Result r;
    r.ok = false;
    r.data = {{"group", g.name}, {"error", e.what()}};
    return r;
  }
}

void emit(const Result &r, const Options &opt, std::ostream &out) {
  if (opt.format == "json") {
    out << r.data.dump(2) << "\n";
  } else if (!r.text.empty()) {
    out << r.text;
  } else {
    render_text(r.data, out, 0);
  }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Context ctx;
  Options &opt = ctx.opt;
  CLI::App app{"Affine Hecke algebras of unramified groups and their Galois-side counterparts", "unihecke"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--group", opt.group, "group spec file or builtin:NAME");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-elements", opt.max_elements, "cap on enumerated elements");
  app.add_option("--radius", opt.radius, "enumeration radius");
  app.add_flag("--all", opt.all, "run over every builtin group");
  app.add_option("--params", opt.params_file, "extra parameter table file");
  app.add_option("--catalog", opt.catalog_file, "extra component catalog file");

  Command chosen = nullptr;
  auto sub = [&](const std::string &name, const std::string &help, Command cmd) {
    auto *s = app.add_subcommand(name, help);
    s->callback([&chosen, cmd] { chosen = cmd; });
    return s;
  };
  sub("validate", "check the root datum axioms and the Frobenius action", cmd_validate);
  sub("dual", "print the dual root datum", cmd_dual);
  sub("levi-classes", "standard Levi subgroups up to conjugacy", cmd_levi_classes);
  sub("dual-levis", "relevant dual Levi classes and the bijection", cmd_dual_levis);
  sub("iwahori-weyl", "Iwahori-Weyl group, alcove and Omega", cmd_iwahori_weyl);
  sub("facet", "facet data for a subset J of affine nodes", cmd_facet)->add_option("--J", opt.facet, "node labels");
  auto *hecke = app.add_subcommand("hecke", "Bernstein presentation arithmetic");
  hecke->require_subcommand(1);
  for (auto *s : {hecke->add_subcommand("mult", "product of two elements"),
                  hecke->add_subcommand("center-check", "test whether an element is central")}) {
    s->add_option("--facet", opt.facet, "facet of the algebra");
    s->add_option("--cuspidal", opt.cuspidal, "cuspidal id of the algebra");
    s->add_option("--psi", opt.psi, "character of Omega_f,tor");
  }
  auto *mult = hecke->get_subcommand("mult");
  mult->add_option("lhs", opt.lhs)->required();
  mult->add_option("rhs", opt.rhs)->required();
  mult->callback([&chosen] { chosen = cmd_hecke_mult; });
  auto *center = hecke->get_subcommand("center-check");
  center->add_option("element", opt.lhs)->required();
  center->callback([&chosen] { chosen = cmd_hecke_center; });
  sub("xwr", "weakly unramified characters against Omega", cmd_xwr);
  sub("components", "match facet-side and Galois-side components", cmd_components);
  auto *cmp = sub("compare", "compare the Hecke algebras of matched components", cmd_compare);
  cmp->add_option("--facet", opt.facet, "facet node labels");
  cmp->add_option("--cuspidal", opt.cuspidal, "cuspidal id");
  sub("adjoint-check", "compare facet data of G and its adjoint group", cmd_adjoint)
      ->add_option("--facet", opt.facet, "facet node labels");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  std::vector<GroupSpec> groups;
  try {
    if (!opt.params_file.empty()) ctx.table.merge(parse_parameter_table(read_text_file(opt.params_file)));
    if (!opt.catalog_file.empty()) ctx.catalog.merge(parse_component_catalog(read_text_file(opt.catalog_file)));
    if (opt.all) {
      for (const auto &n : builtin_names()) groups.push_back(builtin_group(n));
    } else if (opt.group.empty()) {
      throw UsageError("--group or --all is required");
    } else {
      groups.push_back(load_group(opt.group));
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!opt.all) {
      Result r = run_one(chosen, ctx, groups.front());
      emit(r, opt, out);
      if (r.data.contains("error")) err << "error: " << r.data["error"].get<std::string>() << "\n";
      return r.ok ? 0 : 1;
    }
    std::vector<std::future<Result>> jobs;
    for (const auto &g : groups) jobs.push_back(std::async(std::launch::async, run_one, chosen, std::cref(ctx), g));
    Result merged;
    merged.data = {{"groups", json::array()}};
    std::ostringstream text;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      Result r = jobs[i].get();
      merged.ok = merged.ok && r.ok;
      merged.data["groups"].push_back(r.data);
      text << "== " << groups[i].name << (r.ok ? "" : " (failed)") << "\n";
      if (!r.text.empty())
        text << r.text;
      else
        render_text(r.data, text, 0);
    }
    merged.data["ok"] = merged.ok;
    merged.text = text.str();
    emit(merged, opt, out);
    return merged.ok ? 0 : 1;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace unihecke::cli
