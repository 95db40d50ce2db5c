#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stm/group.hpp"

namespace stm {

/// A named (group, representation) pair from the shipped catalog.
struct CatalogEntry {
  std::string name;
  GroupSpec group;
  RepPtr rep;
  std::string provenance;
};

/// Directory holding the catalog data files: the STM_CATALOG_DIR environment
/// variable if set, else the location compiled into the library.
std::string catalog_dir();

/// Loads a catalog entry by name. Accepted names:
///   u1-wt1                        U(1) acting with weight 1
///   u2-std .. u5-std              U(n) with its natural representation
///   su2-std .. su5-std            SU(n) with its natural representation
///   cyclic(n)                     Z/n in U(1), weight 1 (1 <= n <= 1000)
///   binary_dihedral(4n)           dicyclic subgroup of SU(2), 1 <= n <= 30
///   binary_tetrahedral  | 2T      order-24 subgroup of SU(2)  [data file]
///   binary_octahedral   | 2O      order-48 subgroup of SU(2)  [data file]
///   binary_icosahedral  | 2I      order-120 subgroup of SU(2) [data file]
///   torus_normalizer_su2          approximated by binary_dihedral(120);
///                                 the normalizer itself is infinite and not
///                                 exactly representable as class data
/// File-backed entries are re-validated on load; a malformed file raises
/// ErrorKind::DataCorrupt, an unknown name ErrorKind::NotFound.
CatalogEntry catalog_load(const std::string& name, const std::string& dir = "");

/// Every concrete catalog name (family entries enumerated).
std::vector<std::string> catalog_list();

struct CatalogVerifyResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Re-runs every data-file checksum and structural invariant, plus the
/// invariants of all synthesized family entries.
std::vector<CatalogVerifyResult> catalog_verify(const std::string& dir = "");

/// Shipped subgroup relations as (parent, subgroup) name pairs; for each,
/// the restriction of the parent's representation to the subgroup is the
/// subgroup entry's representation, so F_parent(a,b) <= F_subgroup(a,b)
/// cellwise.
std::vector<std::pair<std::string, std::string>> catalog_subgroup_pairs();

}  // namespace stm
