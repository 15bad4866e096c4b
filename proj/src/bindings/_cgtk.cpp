#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cgtk/amalgam.hpp"
#include "cgtk/chartab.hpp"
#include "cgtk/classes.hpp"
#include "cgtk/cohom.hpp"
#include "cgtk/error.hpp"
#include "cgtk/fp.hpp"
#include "cgtk/modrep.hpp"
#include "cgtk/perm.hpp"

namespace py = pybind11;
using namespace cgtk;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

py::int_ to_py(const BigInt& n) {
  std::ostringstream s;
  s << n;
  return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(s.str().c_str(), nullptr, 10)));
}

BigInt from_py(const py::int_& n) { return parse_bigint(py::str(n)); }

Rational rational_from_py(const py::handle& x) {
  if (py::isinstance<py::int_>(x)) return Rational(from_py(x.cast<py::int_>()));
  return Rational(from_py(x.attr("numerator")), from_py(x.attr("denominator")));
}

FMatrix matrix_from_rows(const PrimeField& f, const Rows& rows) {
  if (rows.empty()) throw DimensionMismatch("empty matrix");
  std::vector<std::int64_t> e;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw DimensionMismatch("matrix must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return FMatrix(f, rows.size(), rows.size(), e);
}

Rows rows_of(const FMatrix& m) {
  Rows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

GModule module_from(std::uint64_t p, const std::vector<Rows>& gens) {
  PrimeField f(p);
  if (gens.empty()) throw PreconditionError("no generators");
  std::vector<FMatrix> ms;
  for (const auto& g : gens) ms.push_back(matrix_from_rows(f, g));
  return GModule(f, ms.front().rows(), ms);
}

std::vector<Permutation> perms_from(const std::vector<std::vector<Point>>& images) {
  if (images.empty()) throw PreconditionError("no generators");
  std::vector<Permutation> out;
  for (const auto& im : images) out.emplace_back(im);
  return out;
}

py::dict coset_enumerate(const std::string& text, const std::optional<std::vector<std::string>>& subgroup,
                         std::size_t max_cosets, const std::string& strategy) {
  Presentation pres = parse_presentation(text);
  std::vector<GenWord> sub;
  if (subgroup)
    for (const auto& w : *subgroup) sub.push_back(parse_word(w, pres.gens));
  TcOptions opt;
  opt.max_cosets = max_cosets;
  if (strategy == "felsch") opt.strategy = TcStrategy::Felsch;
  else if (strategy != "hlt") throw PreconditionError("strategy must be hlt or felsch");
  CosetTable t;
  {
    py::gil_scoped_release release;
    t = subgroup && subgroup->empty() ? todd_coxeter(pres, {GenWord{}}, opt) : todd_coxeter(pres, sub, opt);
  }
  py::dict d;
  d["closed"] = t.closed;
  d["index"] = t.index();
  d["max_active"] = t.max_active;
  return d;
}

py::dict meataxe(std::uint64_t p, const std::vector<Rows>& gens, std::uint64_t seed) {
  GModule m = module_from(p, gens);
  MeataxeOptions opt;
  opt.seed = seed;
  auto r = meataxe_irreducible(m, opt);
  py::dict d;
  d["verdict"] = r.verdict == MeataxeResult::Verdict::irreducible ? "irreducible"
                 : r.verdict == MeataxeResult::Verdict::reducible ? "reducible"
                                                                   : "inconclusive";
  Rows sub;
  for (const auto& v : r.submodule) sub.emplace_back(v.begin(), v.end());
  d["submodule"] = sub;
  d["trials"] = r.trials;
  return d;
}

std::optional<Rows> isomorphism(std::uint64_t p, const std::vector<Rows>& a, const std::vector<Rows>& b) {
  auto t = module_isomorphism(module_from(p, a), module_from(p, b));
  if (!t) return std::nullopt;
  return rows_of(*t);
}

py::int_ double_cosets(const std::string& text, const std::string& method) {
  std::istringstream in(text);
  auto pr = read_double_coset_problem(in);
  CosetMethod m;
  if (method == "burnside") m = CosetMethod::burnside;
  else if (method == "normal-form") m = CosetMethod::normal_form;
  else throw PreconditionError("method must be burnside or normal-form");
  BigInt n;
  {
    py::gil_scoped_release release;
    n = double_coset_count(pr.spec, pr.h, pr.e, m);
  }
  return to_py(n);
}

py::dict identity_check(const std::string& json_text) {
  auto rep = thompson_identity_check(json_text);
  py::dict d;
  d["order"] = to_py(rep.order);
  d["factorization"] = rep.factorization;
  py::list printed;
  for (const auto& p : rep.printed) {
    py::dict e;
    e["label"] = p.label;
    e["factorization"] = p.text;
    e["matches"] = p.matches;
    printed.append(e);
  }
  d["printed"] = printed;
  d["printed_conflict"] = rep.printed_conflict;
  return d;
}

py::dict class_data(const std::string& text) {
  std::istringstream in(text);
  auto cl = read_class_table(in);
  auto rep = check_class_data(cl);
  py::dict d;
  d["classes"] = cl.classes.size();
  d["group_order"] = to_py(cl.group_order);
  d["size_sum"] = to_py(rep.size_sum);
  d["ok"] = rep.ok;
  d["failures"] = rep.failures;
  return d;
}

std::size_t h2_dimension(const std::vector<std::vector<Point>>& perms, std::uint64_t p,
                         const std::optional<std::vector<Rows>>& action) {
  auto gens = perms_from(perms);
  GModule m = action ? module_from(p, *action)
                     : GModule(PrimeField(p), 1,
                               std::vector<FMatrix>(gens.size(), FMatrix::identity(PrimeField(p), 1)));
  return h2_bruteforce(gens, m).dimension();
}

}  // namespace

PYBIND11_MODULE(_cgtk, m) {
  m.doc() = "Computational group theory kernels";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<NotFound>(m, "NotFound", error.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
  py::register_exception<FieldMismatch>(m, "FieldMismatch", error.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", error.ptr());

  m.def(
      "permutation_group_order",
      [](const std::vector<std::vector<Point>>& gens, std::uint64_t seed) {
        auto ps = perms_from(gens);
        BsgsOptions opt;
        opt.seed = seed;
        return to_py(bsgs_build(ps, ps.front().degree(), opt).order());
      },
      py::arg("generators"), py::arg("seed") = 1,
      "Order of the group generated by 0-based image lists.");

  m.def(
      "matrix_group_order",
      [](std::uint64_t p, const std::vector<Rows>& gens, std::uint64_t seed) {
        auto mod = module_from(p, gens);
        auto ps = matrix_to_permutation(mod.actions());
        BsgsOptions opt;
        opt.seed = seed;
        return to_py(bsgs_build(ps, ps.front().degree(), opt).order());
      },
      py::arg("p"), py::arg("generators"), py::arg("seed") = 1,
      "Order of a matrix group over GF(p) via its action on nonzero row vectors.");

  m.def("coset_enumerate", &coset_enumerate, py::arg("presentation"), py::arg("subgroup") = py::none(),
        py::arg("max_cosets") = 1'000'000, py::arg("strategy") = "hlt",
        "Todd-Coxeter on presentation text. subgroup=None uses the file's sub: line, [] the trivial group.");

  m.def("meataxe", &meataxe, py::arg("p"), py::arg("generators"), py::arg("seed") = 1);
  m.def("module_isomorphism", &isomorphism, py::arg("p"), py::arg("a"), py::arg("b"),
        "Matrix T with T^-1 b(g) T = a(g) for all generators, or None.");
  m.def(
      "dual_generators",
      [](std::uint64_t p, const std::vector<Rows>& gens) {
        std::vector<Rows> out;
        for (const auto& g : dual_generators(module_from(p, gens).actions())) out.push_back(rows_of(g));
        return out;
      },
      py::arg("p"), py::arg("generators"));

  m.def("double_coset_count", &double_cosets, py::arg("problem"), py::arg("method") = "burnside");

  m.def(
      "thompson_order",
      [](const py::object& r_z, const py::object& r_u, const py::int_& cu, const py::int_& cz) {
        return to_py(thompson_order(rational_from_py(r_z), rational_from_py(r_u), from_py(cu), from_py(cz)));
      },
      py::arg("r_z"), py::arg("r_u"), py::arg("centralizer_u"), py::arg("centralizer_z"),
      "r_z |C(u)| + r_u |C(z)|; r values may be int or fractions.Fraction.");
  m.def("thompson_identity_check", &identity_check, py::arg("json_text"));
  m.def("factorization", [](const py::int_& n) { return factorization_string(from_py(n)); }, py::arg("n"));

  m.def("check_class_data", &class_data, py::arg("text"));
  m.def("h2_dimension", &h2_dimension, py::arg("generators"), py::arg("p"), py::arg("action") = py::none(),
        "dim H^2(G, V) for G generated by permutations; trivial 1-dimensional V when action is None.");
}
