#pragma once
// Plain-text formats for group specs, parameter tables and component catalogs,
// and the JSON form of comparison reports.
//
// Group spec: one `key: <json>` per line, `#` starts a comment.  Keys: name,
// rank, roots, coroots, simple_indices, frobenius, delta0, facets (a list of
// {"J": [...], "cuspidal": "...", "exponents": {"label": N}}).
//
// Parameter table: `<type> <J> <cuspidal> : <label>=<N> ...`, order-insensitive.
//
// Component catalog:
//   padic  <group> facet=<J> levi=<I> cuspidal=<id>
//   galois <group> levi=<I> cuspidal=<id> [lambda=<list>] [lambda_star=<list>]

#include "unihecke/compare.hpp"

#include <stdexcept>
#include <string>

namespace unihecke {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string &path);

GroupSpec parse_group_spec(const std::string &text);
std::string write_group_spec(const GroupSpec &g);
// "builtin:NAME" or a path to a group spec file.
GroupSpec load_group(const std::string &ref);

ParameterTable parse_parameter_table(const std::string &text);
std::string write_parameter_table(const ParameterTable &t);

ComponentCatalog parse_component_catalog(const std::string &text);
std::string write_component_catalog(const ComponentCatalog &c);

std::string comparison_to_json(const ComparisonReport &r, int indent = -1);
ComparisonReport comparison_from_json(const std::string &s);
std::string comparison_to_text(const ComparisonReport &r);

}  // namespace unihecke
