#include "unihecke/catalog.hpp"

#include <stdexcept>

namespace unihecke {

GaloisDatum GroupSpec::galois() const {
  std::vector<Mat> gens;
  if (!frobenius.empty() && !is_identity(frobenius)) gens.push_back(frobenius);
  return make_galois_datum(datum, gens);
}

bool GroupSpec::split() const { return (frobenius.empty() || is_identity(frobenius)) && delta0.empty(); }

bool GroupSpec::semisimple() const { return datum.num_simple() == datum.rank; }

namespace {

GroupSpec make(std::string name, std::size_t rank, std::vector<Vec> sr, std::vector<Vec> sc, Mat fr = {},
               std::vector<std::size_t> d0 = {}) {
  GroupSpec g;
  g.name = name;
  g.datum = from_simple_roots(name, rank, sr, sc);
  g.frobenius = fr.empty() ? identity_mat(rank) : fr;
  g.delta0 = std::move(d0);
  return g;
}

GroupSpec torus(std::string name, std::size_t rank) {
  GroupSpec g;
  g.name = name;
  g.datum.name = name;
  g.datum.rank = rank;
  g.frobenius = identity_mat(rank);
  return g;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"SL2", "PGL2", "SL3", "PGL3", "Sp4", "SO5", "GL2", "GL1", "G2", "SU3", "SU4", "InnerPGL2"};
}

GroupSpec builtin_group(const std::string &name) {
  GroupSpec g;
  if (name == "SL2") {
    g = make(name, 1, {{2}}, {{1}});
  } else if (name == "PGL2") {
    g = make(name, 1, {{1}}, {{2}});
  } else if (name == "SL3") {
    g = make(name, 2, {{2, -1}, {-1, 2}}, {{1, 0}, {0, 1}});
  } else if (name == "PGL3") {
    g = make(name, 2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}});
  } else if (name == "Sp4") {
    g = make(name, 2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}});
  } else if (name == "SO5") {
    g = make(name, 2, {{1, -1}, {0, 1}}, {{1, -1}, {0, 2}});
  } else if (name == "GL2") {
    g = make(name, 2, {{1, -1}}, {{1, -1}});
  } else if (name == "GL1") {
    g = torus(name, 1);
  } else if (name == "G2") {
    g = make(name, 2, {{1, 0}, {0, 1}}, {{2, -3}, {-1, 2}});
  } else if (name == "SU3") {
    g = make(name, 2, {{2, -1}, {-1, 2}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  } else if (name == "SU4") {
    g = make(name, 3, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
             {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  } else if (name == "InnerPGL2") {
    g = make(name, 1, {{1}}, {{2}}, {}, {0});
  } else {
    throw std::invalid_argument("unknown builtin group '" + name + "'");
  }
  FacetEntry iwahori{{}, "iwahori", {}};
  // Unramified unitary groups carry unequal affine exponents.
  if (name == "SU3") iwahori.exponents = {{0, 1}, {1, 3}};
  if (name == "SU4") iwahori.exponents = {{0, 1}, {1, 2}, {2, 1}};
  g.builtin_facets.push_back(iwahori);
  return g;
}

}  // namespace unihecke
