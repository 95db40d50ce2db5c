#include "stm/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "stm/digest.hpp"
#include "stm/error.hpp"

#ifndef STM_DEFAULT_CATALOG_DIR
#define STM_DEFAULT_CATALOG_DIR ""
#endif

namespace stm {

using nlohmann::json;

std::string catalog_dir() {
  if (const char* env = std::getenv("STM_CATALOG_DIR")) {
    if (*env) return env;
  }
  return STM_DEFAULT_CATALOG_DIR;
}

namespace {

std::string resolved_dir(const std::string& dir) {
  std::string d = dir.empty() ? catalog_dir() : dir;
  if (d.empty()) {
    raise(ErrorKind::NotFound,
          "no catalog directory: set STM_CATALOG_DIR or pass one explicitly");
  }
  return d;
}

// --- synthesized families ---------------------------------------------------

FiniteClassesSpec cyclic_classes(std::int64_t n) {
  FiniteClassesSpec fc;
  fc.modulus = n;
  fc.order = n;
  for (std::int64_t k = 0; k < n; ++k) fc.classes.push_back({1, {k}});
  return fc;
}

/// Dicyclic group of order 4n inside SU(2): a rotation a of order 2n with
/// eigenphases +-1/(2n) and an order-4 flip with eigenvalues +-i.
FiniteClassesSpec binary_dihedral_classes(std::int64_t n) {
  const std::int64_t M = std::lcm<std::int64_t>(2 * n, 4);
  const std::int64_t s = M / (2 * n);
  FiniteClassesSpec fc;
  fc.modulus = M;
  fc.order = 4 * n;
  fc.classes.push_back({1, {0, 0}});                  // identity
  fc.classes.push_back({1, {M / 2, M / 2}});          // central -1 = a^n
  for (std::int64_t k = 1; k < n; ++k) {
    fc.classes.push_back({2, {k * s, M - k * s}});    // {a^k, a^-k}
  }
  fc.classes.push_back({n, {M / 4, 3 * M / 4}});      // flips, even rotation part
  fc.classes.push_back({n, {M / 4, 3 * M / 4}});      // flips, odd rotation part
  return fc;
}

// --- data-file entries ------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::NotFound, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    raise(ErrorKind::DataCorrupt, path + ": " + e.what());
  }
  return doc;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::NotFound, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FileEntry {
  FiniteClassesSpec classes;
  std::string provenance;
};

FileEntry load_file_entry(const std::string& dir, const std::string& file,
                          const std::string& expect_name) {
  const std::string path = dir + "/" + file;
  json doc = read_json_file(path);
  FileEntry out;
  try {
    if (doc.at("name").get<std::string>() != expect_name) {
      raise(ErrorKind::DataCorrupt, path + ": name field mismatch");
    }
    out.classes.order = doc.at("order").get<std::int64_t>();
    out.classes.modulus = doc.at("modulus").get<std::int64_t>();
    for (const auto& c : doc.at("classes")) {
      ClassDatum d;
      d.size = c.at("size").get<std::int64_t>();
      for (const auto& e : c.at("exponents")) d.exponents.push_back(e.get<std::int64_t>());
      out.classes.classes.push_back(std::move(d));
    }
    out.provenance = doc.value("provenance_note", "");
  } catch (const json::exception& e) {
    raise(ErrorKind::DataCorrupt, path + ": " + e.what());
  }
  validate_group(GroupSpec::finite(out.classes));

  // subgroups of SU(2) carry a self-dual 2-dimensional representation:
  // exponent multisets must be closed under negation mod M (real traces)
  for (const auto& c : out.classes.classes) {
    if (c.exponents.size() != 2) {
      raise(ErrorKind::DataCorrupt, path + ": expected 2 eigenphases per class");
    }
    std::vector<std::int64_t> neg;
    for (auto e : c.exponents) neg.push_back((out.classes.modulus - e) % out.classes.modulus);
    std::sort(neg.begin(), neg.end());
    auto sorted = c.exponents;
    std::sort(sorted.begin(), sorted.end());
    if (neg != sorted) {
      raise(ErrorKind::DataCorrupt, path + ": class eigenphases not closed under negation");
    }
  }
  return out;
}

struct PolyhedralNames {
  const char* canonical;
  const char* alias;
  const char* file;
};

constexpr PolyhedralNames kPolyhedral[] = {
    {"binary_tetrahedral", "2T", "binary_tetrahedral.json"},
    {"binary_octahedral", "2O", "binary_octahedral.json"},
    {"binary_icosahedral", "2I", "binary_icosahedral.json"},
};

const PolyhedralNames* polyhedral_by_name(const std::string& name) {
  for (const auto& p : kPolyhedral) {
    if (name == p.canonical || name == p.alias) return &p;
  }
  return nullptr;
}

// --- name parsing -----------------------------------------------------------

bool parse_family(const std::string& name, const std::string& prefix, std::int64_t& arg) {
  if (name.size() < prefix.size() + 3 || name.compare(0, prefix.size(), prefix) != 0 ||
      name[prefix.size()] != '(' || name.back() != ')') {
    return false;
  }
  std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  if (inner.empty() || !std::all_of(inner.begin(), inner.end(),
                                    [](char c) { return c >= '0' && c <= '9'; })) {
    return false;
  }
  if (inner.size() > 9) return false;
  arg = std::stoll(inner);
  return true;
}

}  // namespace

CatalogEntry catalog_load(const std::string& name, const std::string& dir) {
  std::int64_t arg = 0;

  if (name == "u1-wt1") {
    return {name, GroupSpec::torus(1), RepSpec::torus_weights({{1}}),
            "U(1) acting by its weight-1 character"};
  }
  for (int n = 1; n <= 5; ++n) {
    if (name == "u" + std::to_string(n) + "-std") {
      return {name, GroupSpec::unitary(n), RepSpec::std_rep(),
              "unitary group with its natural representation"};
    }
  }
  for (int n = 2; n <= 5; ++n) {
    if (name == "su" + std::to_string(n) + "-std") {
      return {name, GroupSpec::special_unitary(n), RepSpec::std_rep(),
              "special unitary group with its natural representation"};
    }
  }

  if (parse_family(name, "cyclic", arg)) {
    if (arg < 1 || arg > 1000) {
      raise(ErrorKind::NotFound, "cyclic order out of the supported range [1,1000]");
    }
    auto g = GroupSpec::finite(cyclic_classes(arg));
    validate_group(g);
    return {name, std::move(g), RepSpec::finite_given(),
            "cyclic subgroup of U(1), closed-form class data"};
  }

  if (parse_family(name, "binary_dihedral", arg)) {
    if (arg % 4 != 0 || arg < 4 || arg > 120) {
      raise(ErrorKind::NotFound,
            "binary dihedral order must be 4n with 1 <= n <= 30, got " + name);
    }
    auto g = GroupSpec::finite(binary_dihedral_classes(arg / 4));
    validate_group(g);
    return {name, std::move(g), RepSpec::finite_given(),
            "dicyclic subgroup of SU(2), closed-form class data"};
  }

  if (const auto* p = polyhedral_by_name(name)) {
    FileEntry fe = load_file_entry(resolved_dir(dir), p->file, p->canonical);
    return {p->canonical, GroupSpec::finite(std::move(fe.classes)), RepSpec::finite_given(),
            fe.provenance};
  }

  if (name == "torus_normalizer_su2") {
    // The normalizer of the maximal torus in SU(2) is infinite and
    // disconnected; the catalog only carries its dicyclic approximants and
    // serves the largest one here. Results computed against this entry are
    // approximations of the normalizer's invariant counts.
    auto entry = catalog_load("binary_dihedral(120)", dir);
    entry.name = name;
    entry.provenance =
        "approximant: binary_dihedral(120); the torus normalizer in SU(2) is an "
        "infinite limit of the binary dihedral family and is not exactly "
        "representable as finite class data";
    return entry;
  }

  raise(ErrorKind::NotFound, "unknown catalog name: " + name);
}

std::vector<std::string> catalog_list() {
  // Continuous entries stop at rank 3: the natural-rep diagonal of U(n) is
  // bounded by a! <= (n-1)^(2a) throughout a degree-12 window once n >= 4,
  // so dimension detection from a catalog table is possible exactly up to
  // rank 3. u4-std/u5-std/su4-std/su5-std remain loadable by name.
  std::vector<std::string> names = {"u1-wt1", "u2-std", "u3-std", "su2-std",
                                    "su3-std"};
  for (int n = 1; n <= 30; ++n) names.push_back("cyclic(" + std::to_string(n) + ")");
  for (int n = 1; n <= 30; ++n) {
    names.push_back("binary_dihedral(" + std::to_string(4 * n) + ")");
  }
  for (const auto& p : kPolyhedral) names.push_back(p.canonical);
  names.push_back("torus_normalizer_su2");
  return names;
}

std::vector<CatalogVerifyResult> catalog_verify(const std::string& dir) {
  std::vector<CatalogVerifyResult> results;
  const std::string d = resolved_dir(dir);

  // checksums against the manifest
  try {
    json manifest = read_json_file(d + "/manifest.json");
    for (const auto& [file, digest] : manifest.at("files").items()) {
      CatalogVerifyResult r;
      r.name = "checksum:" + file;
      try {
        std::string actual = sha256_hex(read_file_bytes(d + "/" + file));
        if (actual == digest.get<std::string>()) {
          r.ok = true;
        } else {
          r.detail = "sha256 mismatch: " + actual;
        }
      } catch (const Error& e) {
        r.detail = e.what();
      }
      results.push_back(std::move(r));
    }
  } catch (const Error& e) {
    results.push_back({"manifest", false, e.what()});
  } catch (const json::exception& e) {
    results.push_back({"manifest", false, e.what()});
  }

  // structural invariants of every listed entry
  for (const auto& name : catalog_list()) {
    CatalogVerifyResult r;
    r.name = name;
    try {
      CatalogEntry entry = catalog_load(name, d);
      validate_group(entry.group);
      rep_dim(entry.group, *entry.rep);
      r.ok = true;
    } catch (const Error& e) {
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<std::pair<std::string, std::string>> catalog_subgroup_pairs() {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int n = 1; n <= 30; ++n) {
    pairs.emplace_back("u1-wt1", "cyclic(" + std::to_string(n) + ")");
  }
  for (int n = 1; n <= 30; ++n) {
    pairs.emplace_back("su2-std", "binary_dihedral(" + std::to_string(4 * n) + ")");
  }
  for (const auto& p : kPolyhedral) pairs.emplace_back("su2-std", p.canonical);
  // chains inside the families
  for (int n = 1; n <= 15; ++n) {
    pairs.emplace_back("binary_dihedral(" + std::to_string(8 * n) + ")",
                       "binary_dihedral(" + std::to_string(4 * n) + ")");
    pairs.emplace_back("cyclic(" + std::to_string(2 * n) + ")",
                       "cyclic(" + std::to_string(n) + ")");
  }
  // polyhedral inclusions
  pairs.emplace_back("binary_octahedral", "binary_tetrahedral");
  pairs.emplace_back("binary_icosahedral", "binary_tetrahedral");
  pairs.emplace_back("binary_tetrahedral", "binary_dihedral(8)");
  return pairs;
}

}  // namespace stm
