// Python bindings for the exact moment engine and the analysis toolkit.
// Groups and representations are passed as catalog names or JSON spec
// documents (the same grammar the CLI accepts); moment values cross the
// boundary as python ints via their decimal form.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stm/analyzer.hpp"
#include "stm/catalog.hpp"
#include "stm/error.hpp"
#include "stm/moments.hpp"
#include "stm/sampler.hpp"
#include "stm/spec_io.hpp"

namespace py = pybind11;
using namespace stm;

namespace {

struct Pair {
  std::string id;
  GroupSpec group;
  RepPtr rep;
};

/// Accepts either a catalog name or a JSON spec document.
Pair resolve(const std::string& text) {
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\n"));
  if (!trimmed.empty() && trimmed.front() == '{') {
    SpecDocument doc = parse_spec(text);
    return {doc.name.empty() ? "custom" : doc.name, std::move(doc.group),
            std::move(doc.rep)};
  }
  CatalogEntry entry = catalog_load(text);
  return {entry.name, std::move(entry.group), std::move(entry.rep)};
}

py::int_ big(const Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(to_dec(v).c_str(), nullptr, 10));
}

py::object maybe(const std::optional<int>& v) {
  if (v) return py::int_(*v);
  return py::none();
}

NormKind parse_norm(const std::string& name) {
  if (name == "total") return NormKind::TotalDegree;
  if (name == "box") return NormKind::Box;
  raise(ErrorKind::InvalidSpec, "norm must be 'total' or 'box'");
}

}  // namespace

PYBIND11_MODULE(_stm, m) {
  m.doc() = "exact Sato-Tate moment engine and rigidity toolkit";

  py::register_exception<Error>(m, "StmError");

  m.def(
      "moment",
      [](const std::string& spec, int a, int b) {
        Pair p = resolve(spec);
        return big(moment(p.group, *p.rep, a, b));
      },
      py::arg("spec"), py::arg("a"), py::arg("b"),
      "Exact invariant dimension of V^a (x) V*^b under the group.");

  m.def(
      "moment_table",
      [](const std::string& spec, int amax, int bmax) {
        Pair p = resolve(spec);
        MomentTable table = moment_table(p.group, *p.rep, amax, bmax, p.id);
        py::dict entries;
        for (const auto& [ab, value] : table.entries) {
          entries[py::make_tuple(ab.first, ab.second)] = big(value);
        }
        py::dict out;
        out["group"] = table.group_id;
        out["dim"] = table.dim;
        out["entries"] = entries;
        return out;
      },
      py::arg("spec"), py::arg("amax"), py::arg("bmax"));

  m.def(
      "dim",
      [](const std::string& spec) {
        Pair p = resolve(spec);
        return rep_dim(p.group, *p.rep);
      },
      py::arg("spec"));

  m.def(
      "separation_index",
      [](const std::string& left, const std::string& right, const std::string& norm,
         int bound) {
        Pair l = resolve(left);
        Pair r = resolve(right);
        auto rep = separation_index(l.group, *l.rep, r.group, *r.rep,
                                    parse_norm(norm), bound, l.id, r.id);
        py::dict out;
        out["left"] = rep.left_id;
        out["right"] = rep.right_id;
        out["separated"] = rep.separated();
        out["index"] = maybe(rep.index);
        if (rep.witness) {
          out["witness"] = py::make_tuple(rep.witness->a, rep.witness->b,
                                          big(rep.witness->left_value),
                                          big(rep.witness->right_value));
        } else {
          out["witness"] = py::none();
        }
        return out;
      },
      py::arg("left"), py::arg("right"), py::arg("norm") = "total",
      py::arg("bound") = 30);

  m.def(
      "verify_torsion_agreement",
      [](const std::string& spec, std::int64_t n, int degree) {
        Pair p = resolve(spec);
        auto rep = verify_torsion_agreement(p.group, *p.rep, n, degree, p.id);
        py::dict out;
        out["full_agreement"] = rep.full_agreement;
        out["first_disagreement_norm"] = maybe(rep.first_disagreement_norm);
        if (rep.first_disagreement_cell) {
          out["first_disagreement_cell"] = py::make_tuple(
              rep.first_disagreement_cell->first, rep.first_disagreement_cell->second);
        } else {
          out["first_disagreement_cell"] = py::none();
        }
        return out;
      },
      py::arg("spec"), py::arg("n"), py::arg("degree"));

  m.def(
      "infer_dimension",
      [](const std::string& spec, int amax) {
        Pair p = resolve(spec);
        auto table = moment_table(p.group, *p.rep, amax, amax, p.id);
        auto cert = infer_dimension(table, amax);
        py::dict out;
        out["pinned"] = cert.pinned();
        out["lo"] = cert.lo;
        out["hi"] = cert.hi;
        out["upper_tight_a"] = cert.upper_tight_a;
        out["lower_witness_a"] = cert.lower_witness_a;
        return out;
      },
      py::arg("spec"), py::arg("amax") = 12);

  m.def(
      "crude_bound_threshold",
      [](int n, int amax) {
        auto rep = crude_bound_threshold(n, amax);
        py::list diagonal;
        for (const auto& v : rep.diagonal) diagonal.append(big(v));
        py::dict out;
        out["n"] = rep.n;
        out["threshold"] = rep.threshold;
        out["holds_at_end"] = rep.holds_at_end;
        out["diagonal"] = diagonal;
        out["ratios"] = rep.ratios;
        out["increasing_from"] = rep.increasing_from;
        return out;
      },
      py::arg("n"), py::arg("amax") = 20);

  m.def(
      "check_irreducible",
      [](const std::string& spec) {
        Pair p = resolve(spec);
        return check_irreducible(p.group, *p.rep);
      },
      py::arg("spec"));

  m.def(
      "estimate_moments",
      [](const std::string& spec, std::uint64_t samples, std::uint64_t seed, int amax,
         int bmax) {
        Pair p = resolve(spec);
        SampleConfig cfg;
        cfg.group_id = p.id;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.amax = amax;
        cfg.bmax = bmax;
        auto est = estimate_moments(p.group, *p.rep, cfg);
        py::dict mean, se;
        for (int a = 0; a <= amax; ++a) {
          for (int b = 0; b <= bmax; ++b) {
            mean[py::make_tuple(a, b)] = est.mean_at(a, b);
            se[py::make_tuple(a, b)] = est.stderr_at(a, b);
          }
        }
        py::dict out;
        out["samples"] = est.samples;
        out["seed"] = est.seed;
        out["mean"] = mean;
        out["stderr"] = se;
        return out;
      },
      py::arg("spec"), py::arg("samples") = 100000, py::arg("seed") = 0,
      py::arg("amax") = 3, py::arg("bmax") = 3);

  m.def(
      "gaussian_limit_report",
      [](const std::vector<int>& ns, int amax, std::uint64_t samples,
         std::uint64_t seed) {
        py::list rows;
        for (const auto& r : gaussian_limit_report(ns, amax, samples, seed)) {
          py::dict row;
          row["n"] = r.n;
          row["a"] = r.a;
          row["exact"] = big(r.exact);
          row["gaussian"] = big(r.gaussian);
          row["difference"] = big(r.difference);
          if (r.estimate) {
            row["estimate"] = *r.estimate;
            row["estimate_stderr"] = *r.estimate_stderr;
          }
          rows.append(row);
        }
        return rows;
      },
      py::arg("ns"), py::arg("amax") = 5, py::arg("samples") = 0,
      py::arg("seed") = 0);

  m.def(
      "finite_limit_experiment",
      [](const std::string& target, const std::vector<std::string>& subgroups,
         int bound) {
        FiniteLimitTarget t;
        if (target == "u1-wt1") {
          t = FiniteLimitTarget::TorusWeightOne;
        } else if (target == "su2-std") {
          t = FiniteLimitTarget::SpecialUnitary2Std;
        } else {
          raise(ErrorKind::InvalidSpec, "target must be 'u1-wt1' or 'su2-std'");
        }
        auto rep = finite_limit_experiment(t, subgroups, bound);
        py::list rows;
        for (const auto& row : rep.rows) {
          py::dict r;
          r["subgroup"] = row.subgroup;
          r["index"] = maybe(row.index);
          rows.append(r);
        }
        py::dict out;
        out["rows"] = rows;
        out["max_index"] = maybe(rep.max_index);
        out["max_index_subgroup"] = rep.max_index_subgroup;
        return out;
      },
      py::arg("target"), py::arg("subgroups") = std::vector<std::string>{},
      py::arg("bound") = 14,
      "Separation indices of finite subgroups from a continuous target.");

  m.def("catalog_list", [] { return catalog_list(); });

  m.def(
      "catalog_show",
      [](const std::string& name) {
        CatalogEntry e = catalog_load(name);
        py::dict out;
        out["name"] = e.name;
        out["group"] = serialize_group(e.group);
        out["rep"] = serialize_rep(*e.rep);
        out["dim"] = rep_dim(e.group, *e.rep);
        out["provenance"] = e.provenance;
        return out;
      },
      py::arg("name"));

  m.def("catalog_subgroup_pairs", [] { return catalog_subgroup_pairs(); });
}
