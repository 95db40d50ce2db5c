// Regenerates the binary polyhedral catalog data files.
//
// Pipeline, per group:
//   1. breadth-first closure of two explicit unit quaternion generators in
//      floating point, deduplicated to 1e-9;
//   2. conjugacy classes as conjugation orbits, class traces checked constant;
//   3. eigenphase snap: each class trace 2cos(2*pi*f) has f snapped to the
//      smallest-denominator rational p/q (q <= 120) within 1e-9, and the
//      common modulus M is the lcm of the snapped denominators;
//   4. exact re-verification: the generators are rebuilt in the cyclotomic
//      field Q(zeta_L), L = lcm(M, 4), the closure is recomputed with exact
//      arithmetic, and every exact element's trace must equal one of the
//      snapped class trace values, with matching counts.
//
// Usage: stm-catalog-gen OUTPUT_DIR

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "stm/bigint.hpp"
#include "stm/cyclotomic.hpp"
#include "stm/digest.hpp"
#include "stm/error.hpp"

namespace {

using nlohmann::json;
using stm::Int;
using stm::Rat;

// ---------------------------------------------------------------------------
// Floating-point quaternions
// ---------------------------------------------------------------------------

struct Quat {
  double w, x, y, z;
};

Quat qmul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat qconj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }

double qdist(const Quat& a, const Quat& b) {
  return std::sqrt((a.w - b.w) * (a.w - b.w) + (a.x - b.x) * (a.x - b.x) +
                   (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

int find_close(const std::vector<Quat>& v, const Quat& q) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (qdist(v[i], q) < 1e-9) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Quat> float_closure(const std::vector<Quat>& gens) {
  std::vector<Quat> elts{{1, 0, 0, 0}};
  for (std::size_t i = 0; i < elts.size(); ++i) {
    for (const auto& g : gens) {
      Quat p = qmul(elts[i], g);
      if (find_close(elts, p) < 0) elts.push_back(p);
      if (elts.size() > 10000) {
        stm::raise(stm::ErrorKind::Internal, "closure did not stabilize");
      }
    }
  }
  return elts;
}

struct FloatClass {
  std::int64_t size;
  double trace;
};

std::vector<FloatClass> conjugacy_classes(const std::vector<Quat>& elts) {
  std::vector<int> cls(elts.size(), -1);
  std::vector<FloatClass> classes;
  for (std::size_t i = 0; i < elts.size(); ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(classes.size());
    classes.push_back({0, 2 * elts[i].w});
    std::vector<int> todo{static_cast<int>(i)};
    cls[i] = c;
    classes[static_cast<std::size_t>(c)].size = 1;
    for (std::size_t t = 0; t < todo.size(); ++t) {
      for (const auto& g : elts) {
        Quat conj = qmul(qmul(g, elts[static_cast<std::size_t>(todo[t])]), qconj(g));
        int idx = find_close(elts, conj);
        if (idx < 0) stm::raise(stm::ErrorKind::Internal, "conjugate escaped the closure");
        if (cls[static_cast<std::size_t>(idx)] < 0) {
          cls[static_cast<std::size_t>(idx)] = c;
          classes[static_cast<std::size_t>(c)].size += 1;
          todo.push_back(idx);
        }
      }
    }
    // trace must be constant over the class
    for (std::size_t j = 0; j < elts.size(); ++j) {
      if (cls[j] == c &&
          std::abs(2 * elts[j].w - classes[static_cast<std::size_t>(c)].trace) > 1e-9) {
        stm::raise(stm::ErrorKind::Internal, "trace varies inside a conjugacy class");
      }
    }
  }
  return classes;
}

/// Smallest-denominator rational approximation p/q, q <= 120, within 1e-9.
std::pair<std::int64_t, std::int64_t> snap_fraction(double f) {
  for (std::int64_t q = 1; q <= 120; ++q) {
    std::int64_t p = std::llround(f * static_cast<double>(q));
    if (std::abs(f - static_cast<double>(p) / static_cast<double>(q)) < 1e-9) {
      return {p, q};
    }
  }
  stm::raise(stm::ErrorKind::Internal,
             "eigenphase " + std::to_string(f) + " does not snap to q <= 120");
}

// ---------------------------------------------------------------------------
// Exact cyclotomic arithmetic: Q(zeta_L) as Q[X]/(Phi_L)
// ---------------------------------------------------------------------------

struct CycField {
  std::int64_t level;
  std::vector<Rat> phi;  // monic, rational copy of Phi_L

  explicit CycField(std::int64_t l) : level(l) {
    for (const auto& c : stm::cyclotomic_poly(l)) phi.emplace_back(c);
  }
  std::size_t degree() const { return phi.size() - 1; }
};

using CycElt = std::vector<Rat>;  // length = field degree

CycElt cyc_zero(const CycField& f) { return CycElt(f.degree(), Rat(0)); }

CycElt cyc_rational(const CycField& f, const Rat& r) {
  CycElt e = cyc_zero(f);
  e[0] = r;
  return e;
}

/// zeta_L^k as a field element.
CycElt cyc_root_power(const CycField& f, std::int64_t k) {
  k %= f.level;
  if (k < 0) k += f.level;
  std::vector<Rat> raw(static_cast<std::size_t>(k) + 1, Rat(0));
  raw.back() = 1;
  // reduce mod phi
  for (int i = static_cast<int>(raw.size()) - 1; i >= static_cast<int>(f.degree()); --i) {
    Rat c = raw[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (std::size_t j = 0; j < f.phi.size(); ++j) {
      raw[static_cast<std::size_t>(i) - f.degree() + j] -= c * f.phi[j];
    }
  }
  raw.resize(f.degree());
  return raw;
}

CycElt cyc_add(const CycElt& a, const CycElt& b) {
  CycElt r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

CycElt cyc_sub(const CycElt& a, const CycElt& b) {
  CycElt r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

CycElt cyc_scale(const CycElt& a, const Rat& s) {
  CycElt r = a;
  for (auto& c : r) c *= s;
  return r;
}

CycElt cyc_mul(const CycField& f, const CycElt& a, const CycElt& b) {
  std::vector<Rat> raw(2 * f.degree(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  for (int i = static_cast<int>(raw.size()) - 1; i >= static_cast<int>(f.degree()); --i) {
    Rat c = raw[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (std::size_t j = 0; j < f.phi.size(); ++j) {
      raw[static_cast<std::size_t>(i) - f.degree() + j] -= c * f.phi[j];
    }
  }
  raw.resize(f.degree());
  return raw;
}

bool cyc_is_zero(const CycElt& a) {
  for (const auto& c : a) {
    if (c != 0) return false;
  }
  return true;
}

struct CycQuat {
  CycElt w, x, y, z;
};

CycQuat cq_mul(const CycField& f, const CycQuat& a, const CycQuat& b) {
  auto m = [&](const CycElt& p, const CycElt& q) { return cyc_mul(f, p, q); };
  return {
      cyc_sub(cyc_sub(m(a.w, b.w), m(a.x, b.x)), cyc_add(m(a.y, b.y), m(a.z, b.z))),
      cyc_sub(cyc_add(cyc_add(m(a.w, b.x), m(a.x, b.w)), m(a.y, b.z)), m(a.z, b.y)),
      cyc_add(cyc_sub(m(a.w, b.y), m(a.x, b.z)), cyc_add(m(a.y, b.w), m(a.z, b.x))),
      cyc_sub(cyc_add(cyc_add(m(a.w, b.z), m(a.x, b.y)), m(a.z, b.w)), m(a.y, b.x))};
}

bool cq_equal(const CycQuat& a, const CycQuat& b) {
  return cyc_is_zero(cyc_sub(a.w, b.w)) && cyc_is_zero(cyc_sub(a.x, b.x)) &&
         cyc_is_zero(cyc_sub(a.y, b.y)) && cyc_is_zero(cyc_sub(a.z, b.z));
}

std::vector<CycQuat> exact_closure(const CycField& f, const std::vector<CycQuat>& gens,
                                   std::size_t max_order) {
  std::vector<CycQuat> elts{{cyc_rational(f, 1), cyc_zero(f), cyc_zero(f), cyc_zero(f)}};
  auto contains = [&](const CycQuat& q) {
    for (const auto& e : elts) {
      if (cq_equal(e, q)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < elts.size(); ++i) {
    for (const auto& g : gens) {
      CycQuat p = cq_mul(f, elts[i], g);
      if (!contains(p)) elts.push_back(p);
      if (elts.size() > max_order) {
        stm::raise(stm::ErrorKind::Internal, "exact closure exceeded the expected order");
      }
    }
  }
  return elts;
}

// ---------------------------------------------------------------------------
// Group descriptions
// ---------------------------------------------------------------------------

struct GroupDef {
  std::string name;
  std::size_t order;
  std::vector<Quat> float_gens;
  // exact generator coordinates as (rational, coefficient of sqrt-term)
  // realized directly in the cyclotomic field by the builder below
  std::vector<CycQuat> (*exact_gens)(const CycField& f);
};

// sqrt(2) = zeta_8 + zeta_8^-1; requires 8 | L
CycElt sqrt2(const CycField& f) {
  if (f.level % 8 != 0) stm::raise(stm::ErrorKind::Internal, "sqrt2 needs 8 | level");
  return cyc_add(cyc_root_power(f, f.level / 8), cyc_root_power(f, -f.level / 8));
}

// sqrt(5) = 2*(zeta_5 + zeta_5^-1) + 1; requires 5 | L
CycElt sqrt5(const CycField& f) {
  if (f.level % 5 != 0) stm::raise(stm::ErrorKind::Internal, "sqrt5 needs 5 | level");
  CycElt t = cyc_add(cyc_root_power(f, f.level / 5), cyc_root_power(f, -f.level / 5));
  return cyc_add(cyc_scale(t, Rat(2)), cyc_rational(f, 1));
}

std::vector<CycQuat> tetra_gens(const CycField& f) {
  CycElt zero = cyc_zero(f), one = cyc_rational(f, 1), half = cyc_rational(f, Rat(1, 2));
  return {{zero, one, zero, zero}, {half, half, half, half}};
}

std::vector<CycQuat> octa_gens(const CycField& f) {
  CycElt zero = cyc_zero(f), half = cyc_rational(f, Rat(1, 2));
  CycElt inv_s2 = cyc_scale(sqrt2(f), Rat(1, 2));  // 1/sqrt2 = sqrt2/2
  return {{inv_s2, inv_s2, zero, zero}, {half, half, half, half}};
}

std::vector<CycQuat> icosa_gens(const CycField& f) {
  CycElt zero = cyc_zero(f), half = cyc_rational(f, Rat(1, 2));
  CycElt s5 = sqrt5(f);
  // phi/2 = (1+sqrt5)/4, 1/(2 phi) = (sqrt5-1)/4
  CycElt phi_half = cyc_scale(cyc_add(cyc_rational(f, 1), s5), Rat(1, 4));
  CycElt inv_two_phi = cyc_scale(cyc_sub(s5, cyc_rational(f, 1)), Rat(1, 4));
  return {{half, half, half, half}, {phi_half, inv_two_phi, half, zero}};
}

const GroupDef kGroups[] = {
    {"binary_tetrahedral", 24, {{0, 1, 0, 0}, {0.5, 0.5, 0.5, 0.5}}, tetra_gens},
    {"binary_octahedral",
     48,
     {{1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0, 0}, {0.5, 0.5, 0.5, 0.5}},
     octa_gens},
    {"binary_icosahedral",
     120,
     {{0.5, 0.5, 0.5, 0.5},
      {(1 + std::sqrt(5.0)) / 4, (std::sqrt(5.0) - 1) / 4, 0.5, 0}},
     icosa_gens},
};

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

json generate_group(const GroupDef& def) {
  // float oracle
  std::vector<Quat> elts = float_closure(def.float_gens);
  if (elts.size() != def.order) {
    stm::raise(stm::ErrorKind::Internal,
               def.name + ": closure has order " + std::to_string(elts.size()));
  }
  auto classes = conjugacy_classes(elts);

  // snap eigenphases: trace = 2cos(2 pi f), f in [0, 1/2]
  std::vector<std::pair<std::int64_t, std::int64_t>> snapped;  // (p, q)
  std::int64_t modulus = 1;
  for (const auto& c : classes) {
    double f = std::acos(std::clamp(c.trace / 2, -1.0, 1.0)) / (2 * std::acos(-1.0));
    auto [p, q] = snap_fraction(f);
    snapped.emplace_back(p, q);
    modulus = std::lcm(modulus, q);
  }

  // exact re-verification in Q(zeta_L), L = lcm(modulus, 4) so that the
  // quaternion-to-matrix embedding (which needs i) lives in the field
  const std::int64_t level = std::lcm<std::int64_t>(modulus, 4);
  CycField field(level);
  auto exact = exact_closure(field, def.exact_gens(field), def.order);
  if (exact.size() != def.order) {
    stm::raise(stm::ErrorKind::Internal,
               def.name + ": exact closure has order " + std::to_string(exact.size()));
  }
  // every exact trace must equal one of the snapped class traces
  // zeta_M^p + zeta_M^-p, with matching total counts
  std::map<std::size_t, std::int64_t> trace_counts;  // class index -> count
  for (const auto& e : exact) {
    CycElt tr = cyc_scale(e.w, Rat(2));
    bool matched = false;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      auto [p, q] = snapped[ci];
      std::int64_t ex = p * (modulus / q);
      CycElt want = cyc_add(cyc_root_power(field, ex * (level / modulus)),
                            cyc_root_power(field, -ex * (level / modulus)));
      if (cyc_is_zero(cyc_sub(tr, want))) {
        trace_counts[ci] += 1;
        matched = true;
        break;
      }
    }
    if (!matched) {
      stm::raise(stm::ErrorKind::Internal, def.name + ": exact trace not in snapped set");
    }
  }
  // counts per snapped trace value must match the float class sizes
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> want_by_trace, got_by_trace;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    want_by_trace[snapped[ci]] += classes[ci].size;
    got_by_trace[snapped[ci]] += trace_counts.count(ci) ? trace_counts[ci] : 0;
  }
  if (want_by_trace != got_by_trace) {
    stm::raise(stm::ErrorKind::Internal, def.name + ": exact trace counts disagree");
  }

  // emit
  json doc;
  doc["name"] = def.name;
  doc["order"] = def.order;
  doc["modulus"] = modulus;
  json cls = json::array();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    auto [p, q] = snapped[ci];
    std::int64_t ex = (p * (modulus / q)) % modulus;
    json c;
    c["size"] = classes[ci].size;
    c["exponents"] = {ex, (modulus - ex) % modulus};
    cls.push_back(std::move(c));
  }
  // canonical order: by exponent pair
  std::sort(cls.begin(), cls.end(), [](const json& a, const json& b) {
    if (a["exponents"][0] != b["exponents"][0]) {
      return a["exponents"][0] < b["exponents"][0];
    }
    return a["size"] < b["size"];
  });
  doc["classes"] = std::move(cls);
  doc["provenance_note"] =
      "generated by stm-catalog-gen: float quaternion closure of two explicit "
      "generators, conjugation orbits, eigenphases snapped to denominators "
      "dividing 120, closure re-verified exactly in the cyclotomic field of "
      "order lcm(modulus, 4)";
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: stm-catalog-gen OUTPUT_DIR\n";
    return 2;
  }
  const std::string dir = argv[1];
  try {
    json manifest;
    for (const auto& def : kGroups) {
      json doc = generate_group(def);
      std::string body = doc.dump(2) + "\n";
      std::string file = def.name + ".json";
      std::ofstream out(dir + "/" + file);
      if (!out) {
        std::cerr << "cannot write " << dir << "/" << file << "\n";
        return 1;
      }
      out << body;
      manifest["files"][file] = stm::sha256_hex(body);
      std::cout << file << "  order=" << doc["order"] << " classes=" << doc["classes"].size()
                << " modulus=" << doc["modulus"] << "\n";
    }
    std::ofstream mout(dir + "/manifest.json");
    mout << manifest.dump(2) << "\n";
    std::cout << "manifest.json written\n";
  } catch (const std::exception& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
