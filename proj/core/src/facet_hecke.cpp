#include "unihecke/facet_hecke.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace unihecke {

std::string affine_type_label(const GaloisDatum &g, const AnisotropicMarking &m) {
  auto info = validate_and_classify(g.base);
  std::string label;
  for (std::size_t i = 0; i < info.types.size(); ++i) label += (i ? "x" : "") + info.types[i];
  if (label.empty()) label = "T" + std::to_string(g.base.rank);
  // order of Frobenius on the simple positions
  std::size_t order = 1;
  for (const auto &perm : g.simple_perms) {
    std::size_t k = 1;
    std::vector<std::size_t> p = perm;
    auto is_id = [](const std::vector<std::size_t> &q) {
      for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] != i) return false;
      return true;
    };
    while (!is_id(p)) {
      std::vector<std::size_t> next(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) next[i] = perm[p[i]];
      p = next;
      ++k;
    }
    order = std::lcm(order, k);
  }
  if (order > 1) label = std::to_string(order) + label;
  if (!m.delta0.empty()) {
    label += "/";
    for (std::size_t i = 0; i < m.delta0.size(); ++i) label += (i ? "," : "") + std::to_string(m.delta0[i]);
  }
  return label;
}

ParameterTable ParameterTable::builtin() {
  ParameterTable t;
  // Vertices of the A1 alcove carrying a cuspidal unipotent representation of the reductive quotient.
  t.entries[{"A1", {1}, "cusp"}] = {};
  t.entries[{"A1", {0}, "cusp"}] = {};
  return t;
}

void ParameterTable::merge(const ParameterTable &o) {
  for (const auto &[k, v] : o.entries) entries[k] = v;
}

std::vector<long> free_nodes(const IwahoriWeylDatum &d, const std::vector<long> &J) {
  std::vector<long> out;
  for (const auto &n : d.nodes())
    if (std::find(J.begin(), J.end(), n.label) == J.end()) out.push_back(n.label);
  return out;
}

std::map<long, Int> ParameterTable::lookup(const IwahoriWeylDatum &d, const std::vector<long> &J,
                                           const std::string &cuspidal) const {
  std::vector<long> sorted = J;
  std::sort(sorted.begin(), sorted.end());
  ParameterKey key{affine_type_label(d.context().galois, d.context().marking), sorted, cuspidal};
  auto nodes = free_nodes(d, sorted);
  auto it = entries.find(key);
  std::map<long, Int> out;
  if (it == entries.end()) {
    if (cuspidal != "iwahori")
      throw std::invalid_argument("no parameter table entry for type " + key.type + ", cuspidal '" + cuspidal + "'");
    for (long n : nodes) out[n] = 1;
    return out;
  }
  for (long n : nodes) {
    auto e = it->second.find(n);
    out[n] = e == it->second.end() ? 1 : e->second;
  }
  return out;
}

FacetHeckeData build_from_facet(const FacetData &f, const std::map<long, Int> &exponents, const std::string &name) {
  if (!f.completed) throw std::invalid_argument("facet root datum not computed");
  auto exponent = [&](long label) -> Int {
    if (exponents.empty()) return 1;
    auto it = exponents.find(label);
    if (it == exponents.end()) throw std::invalid_argument("missing exponent for node " + std::to_string(label));
    if (it->second < 0) throw std::invalid_argument("negative exponent for node " + std::to_string(label));
    return it->second;
  };
  AffineHeckeDatum d = equal_parameter_datum(f.Rf);
  d.name = name;
  const std::size_t ns = f.Rf.num_simple();
  for (std::size_t p = 0; p < ns; ++p) {
    d.lambda[p] = exponent(f.Rf_simple_labels[p]);
    d.lambda_star[p] = d.lambda[p];
  }
  if (ns > 0 && !f.dropped_labels.empty()) {
    RootSystem rs(f.Rf);
    // W-orbit of each root index
    std::vector<std::size_t> orbit_id(rs.num_roots(), rs.num_roots());
    for (std::size_t r = 0; r < rs.num_roots(); ++r) {
      if (orbit_id[r] != rs.num_roots()) continue;
      std::vector<std::size_t> stack{r};
      orbit_id[r] = r;
      while (!stack.empty()) {
        std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t p = 0; p < ns; ++p) {
          std::size_t b = rs.reflect_perm(p)[a];
          if (orbit_id[b] == rs.num_roots()) {
            orbit_id[b] = r;
            stack.push_back(b);
          }
        }
      }
    }
    for (std::size_t k = 0; k < f.dropped_labels.size(); ++k) {
      std::size_t r = static_cast<std::size_t>(f.Rf_dropped_root[k]);
      for (std::size_t p = 0; p < ns; ++p) {
        bool even = std::all_of(f.Rf.coroots[f.Rf.simple[p]].begin(), f.Rf.coroots[f.Rf.simple[p]].end(),
                                [](Int c) { return c % 2 == 0; });
        if (even && orbit_id[f.Rf.simple[p]] == orbit_id[r]) d.lambda_star[p] = exponent(f.dropped_labels[k]);
      }
    }
  }
  validate_hecke_datum(d);
  FacetHeckeData out;
  out.psi = f.psi_characters.empty() ? std::vector<Vec>{Vec{}} : f.psi_characters;
  for (std::size_t i = 0; i < out.psi.size(); ++i) {
    AffineHeckeDatum di = d;
    if (out.psi.size() > 1) di.name += " psi=" + to_string(out.psi[i]);
    out.data.push_back(std::move(di));
  }
  return out;
}

}  // namespace unihecke
