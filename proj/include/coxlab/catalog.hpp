#pragma once
// Built-in registry of the example tables: the rank-6 Esselmann-type items,
// the rank-6 quasi-Fuchsian items, the parameterized families of every
// dimension, the infinite-edge families together with their admissibility
// conditions (open ranges, finite lists, exclusions), the boundary instances
// at the reference parameters, and the classical spherical / affine / Lanner
// catalogs.

#include <map>
#include <string>
#include <vector>

#include "coxlab/diagram.hpp"

namespace coxlab {

// Extra admissibility conditions beyond per-parameter ranges.
enum class ParamConstraint {
  none,
  reciprocal_sum_below_one,   // 1/p + 1/q + 1/r < 1
  reciprocal_sum_below_half,  // 1/p + 1/q < 1/2
};

struct CatalogItem {
  std::string table;
  std::string id;
  std::string display;  // pretty name when it differs from the id
  // Diagram with parameter slots (see shape.params() for the ranges); for
  // rank-parameterized classical families `builder` constructs the diagram
  // instead and `builder_param` carries the range.
  Diagram shape;
  Diagram (*builder)(unsigned long) = nullptr;
  ParamSpec builder_param;
  std::vector<std::string> param_order;  // as printed in the table
  // Finite list of admissible assignments (values follow param_order); empty
  // when ranges + exclusions describe the condition.
  std::vector<std::vector<unsigned long>> allowed;
  std::vector<std::vector<unsigned long>> excluded;
  // Two-parameter conditions that constrain the unordered pair {p,q}.
  bool unordered_pair = false;
  ParamConstraint constraint = ParamConstraint::none;
  // Smallest admissible assignment, or the table's printed reference.
  std::map<std::string, unsigned long> reference;
};

const std::vector<CatalogItem>& catalog_items();
std::vector<std::string> catalog_tables();
std::vector<const CatalogItem*> catalog_table(const std::string& table);
const CatalogItem& catalog_item(const std::string& table, const std::string& id);
const CatalogItem& catalog_item(const std::string& table, int index);  // 1-based

// Range, exclusion-list, allowed-list, and constraint check; requires exactly
// the declared parameter names.
bool catalog_admissible(const CatalogItem& item,
                        const std::map<std::string, unsigned long>& params);

// Instantiates a catalog entry; throws std::invalid_argument for unknown
// names or inadmissible parameters.
Diagram catalog_get(const std::string& table, const std::string& id,
                    const std::map<std::string, unsigned long>& params = {});
Diagram catalog_get(const std::string& table, int index,
                    const std::map<std::string, unsigned long>& params = {});

// Admissible assignments for tests and sweeps: the allowed list when it is
// finite, otherwise `extra` componentwise bumps starting at the reference
// assignment; concrete items yield one empty assignment.
std::vector<std::map<std::string, unsigned long>> item_instances(const CatalogItem& item,
                                                                 int extra = 2);

// Deterministic text rendering.
std::string render_table(const std::string& table);
std::string render_tables();

}  // namespace coxlab
