#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "hypcert/minimize.hpp"
#include "hypcert/prover.hpp"

namespace py = pybind11;
using namespace hypcert;

namespace {

Interval to_interval(const py::handle& v, Precision prec) {
  if (py::isinstance<Interval>(v)) return v.cast<Interval>();
  if (py::isinstance<py::str>(v)) return Interval::from_decimal(v.cast<std::string>(), prec);
  if (py::isinstance<py::int_>(v)) return Interval::from_int(v.cast<long>(), prec);
  if (py::isinstance<py::float_>(v)) return Interval::point(Scalar::from_double(v.cast<double>(), prec));
  throw py::type_error("expected Interval, str, int or float");
}

Binding to_binding(const py::dict& values, Precision prec) {
  Binding b;
  for (const auto& [k, v] : values) b.emplace(k.cast<std::string>(), to_interval(v, prec));
  return b;
}

Box box_of(const std::vector<std::string>& ranges, Precision prec) {
  std::vector<Box::Dim> dims;
  for (const auto& r : ranges) dims.push_back(parse_range(r, prec));
  return Box(std::move(dims));
}

Box::Dim single_range(const std::string& range, Precision prec) { return parse_range(range, prec); }

py::dict report_dict(const ItemReport& rep) {
  py::dict d;
  d["id"] = rep.id;
  d["passed"] = rep.passed;
  d["lines"] = rep.lines;
  py::dict artifacts;
  for (const auto& [name, text] : rep.artifacts) artifacts[py::str(name)] = text;
  d["artifacts"] = artifacts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified interval verification of hyperbolic inequalities";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainViolation>(m, "DomainViolation", error);
  py::register_exception<DivisionByIntervalContainingZero>(m, "DivisionByIntervalContainingZero", error);
  py::register_exception<OverflowRange>(m, "OverflowRange", error);
  py::register_exception<UnboundVariable>(m, "UnboundVariable", error);
  py::register_exception<MalformedCertificate>(m, "MalformedCertificate", error);
  py::register_exception<SyntaxError>(m, "ParseError", error);

  py::class_<Interval>(m, "Interval")
      .def(py::init([](const std::string& text, Precision prec) {
             return Interval::from_decimal(text, prec);
           }),
           py::arg("text"), py::arg("precision") = kDefaultPrecision)
      .def(py::init([](const std::string& lo, const std::string& hi, Precision prec) {
             return Interval(Scalar::from_decimal(lo, prec, Round::Down),
                             Scalar::from_decimal(hi, prec, Round::Up));
           }),
           py::arg("lo"), py::arg("hi"), py::arg("precision") = kDefaultPrecision)
      .def_property_readonly("lo", [](const Interval& x) { return x.lo().to_double(Round::Down); })
      .def_property_readonly("hi", [](const Interval& x) { return x.hi().to_double(Round::Up); })
      .def_property_readonly("lo_hex", [](const Interval& x) { return x.lo().to_hex(); })
      .def_property_readonly("hi_hex", [](const Interval& x) { return x.hi().to_hex(); })
      .def_property_readonly("width", [](const Interval& x) { return x.width().to_double(Round::Up); })
      .def("contains", [](const Interval& x, double v) { return x.contains(Scalar::from_double(v)); })
      .def("contains_interval", [](const Interval& x, const Interval& y) { return x.contains(y); })
      .def("overlaps", &Interval::overlaps)
      .def("to_decimal", &Interval::to_decimal, py::arg("digits") = 20)
      .def("to_hex", &Interval::to_hex)
      .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; })
      .def("__repr__", [](const Interval& x) { return "Interval" + x.to_decimal(17); });

  py::class_<Expr>(m, "Expr")
      .def_property_readonly("free_variables", &Expr::free_variables)
      .def("__str__", [](const Expr& e) { return render(e); })
      .def("__repr__", [](const Expr& e) { return "Expr('" + render(e) + "')"; });

  m.def("parse", &parse, py::arg("text"));
  m.def("render", [](const std::string& text) { return render(parse(text)); }, py::arg("text"));
  m.def(
      "evaluate",
      [](const std::string& text, const py::dict& values, Precision prec) {
        return eval_interval(parse(text), to_binding(values, prec), prec);
      },
      py::arg("expression"), py::arg("values"), py::arg("precision") = kDefaultPrecision);

  py::class_<ProverConfig>(m, "ProverConfig")
      .def(py::init<>())
      .def_readwrite("start_precision", &ProverConfig::start_precision)
      .def_readwrite("escalation_factor", &ProverConfig::escalation_factor)
      .def_readwrite("max_precision", &ProverConfig::max_precision)
      .def_readwrite("max_depth", &ProverConfig::max_depth)
      .def_readwrite("leaf_budget", &ProverConfig::leaf_budget)
      .def_readwrite("threads", &ProverConfig::threads)
      .def("validate", &ProverConfig::validate);

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("statement", [](const Certificate& c) { return c.statement_text; })
      .def_property_readonly("proved", [](const Certificate& c) { return c.status == Status::Proved; })
      .def_property_readonly("status", [](const Certificate& c) { return std::string(status_name(c.status)); })
      .def_property_readonly("leaf_count", [](const Certificate& c) { return c.leaves.size(); })
      .def_property_readonly("unresolved_count", [](const Certificate& c) { return c.frontier.size(); })
      .def_readonly("boxes_examined", &Certificate::boxes_examined)
      .def("serialize", [](const Certificate& c) { return serialize(c); })
      .def("validate", [](const Certificate& c) { return certificate_validate(c, statement_of(c)); },
           py::call_guard<py::gil_scoped_release>());

  m.def(
      "verify",
      [](const std::string& statement, const std::vector<std::string>& ranges, const ProverConfig& cfg) {
        cfg.validate();
        const InequalityStatement s = parse_statement(statement, box_of(ranges, cfg.start_precision));
        py::gil_scoped_release release;
        return verify_strict(s, cfg);
      },
      py::arg("statement"), py::arg("ranges"), py::arg("config") = ProverConfig{},
      "Prove lhs < rhs on the box given by ranges such as ['u=0.3:3'].");
  m.def("parse_certificate", &parse_certificate, py::arg("text"));

  py::class_<MinimizationResult>(m, "Minimization")
      .def_readonly("enclosure", &MinimizationResult::inf_enclosure)
      .def_readonly("argmin", &MinimizationResult::argmin_boxes)
      .def_readonly("budget_exhausted", &MinimizationResult::budget_exhausted)
      .def_readonly("leaves_processed", &MinimizationResult::leaves_processed)
      .def("serialize", [](const MinimizationResult& r) { return serialize(r); })
      .def("validate",
           [](const MinimizationResult& r) { return minimization_validate(r, parse(r.expression_text)); },
           py::call_guard<py::gil_scoped_release>());

  m.def(
      "infimum",
      [](const std::string& expression, const std::string& range, const std::string& target_width,
         const ProverConfig& cfg) {
        cfg.validate();
        const Expr e = parse(expression);
        const auto [name, domain] = single_range(range, cfg.start_precision);
        const Scalar width = Scalar::from_decimal(target_width, 64, Round::Down);
        py::gil_scoped_release release;
        return certified_infimum(e, name, domain, width, cfg);
      },
      py::arg("expression"), py::arg("range"), py::arg("target_width") = "1e-4",
      py::arg("config") = ProverConfig{});
  m.def("parse_minimization", &parse_minimization, py::arg("text"));

  m.def(
      "scan",
      [](const std::string& expression, const std::string& range, std::size_t points, Precision prec) {
        const auto [name, domain] = single_range(range, prec);
        const ScanTable t = scan(parse(expression), name, domain, points, prec);
        std::vector<std::pair<std::string, std::optional<Interval>>> rows;
        for (const auto& r : t.rows) rows.emplace_back(r.u, r.value);
        return rows;
      },
      py::arg("expression"), py::arg("range"), py::arg("points") = 601,
      py::arg("precision") = kDefaultPrecision,
      "List of (grid point, enclosure or None).");

  m.def("document_kind", &document_kind, py::arg("text"));
  m.def("validate_document", &validate_document, py::arg("text"),
        py::call_guard<py::gil_scoped_release>());

  m.def("corpus_ids", [] {
    std::vector<std::string> ids;
    for (const auto& it : builtin_items()) ids.push_back(it.id);
    return ids;
  });
  m.def(
      "run_corpus_item",
      [](const std::string& id, std::uint64_t seed, const ProverConfig& cfg) {
        cfg.validate();
        const auto items = builtin_items();
        const CorpusItem& item = find_item(items, id);
        RunOptions opts;
        opts.config = cfg;
        opts.seed = seed;
        ItemReport rep;
        {
          py::gil_scoped_release release;
          rep = run_item(item, items, opts);
        }
        return report_dict(rep);
      },
      py::arg("id"), py::arg("seed") = 0, py::arg("config") = ProverConfig{},
      "Runs a built-in corpus item; returns id, passed, lines and artifacts.");

  m.attr("MAIN_STATEMENT") = std::string(kMainStatement);
  m.attr("RATIO_EXPRESSION") = std::string(kRatioExpression);
}
