#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <trustgraph/assessment.hpp>
#include <trustgraph/catalog.hpp>
#include <trustgraph/error.hpp>
#include <trustgraph/io.hpp>
#include <trustgraph/rank.hpp>
#include <trustgraph/cli.hpp>

namespace py = pybind11;
using namespace trustgraph;

namespace {

RankParams make_params(double alpha, double epsilon, std::size_t max_iterations) {
    RankParams p;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.max_iterations = max_iterations;
    return p;
}

py::dict score_dict(const ScoreVector &scores) {
    py::dict d;
    for (NodeIndex i = 0; i < scores.size(); ++i)
        d[py::str(scores.domain()->token(i))] = scores[i];
    return d;
}

} // namespace

PYBIND11_MODULE(_trustgraph, m) {
    m.doc() = "PageRank/TrustRank trust assessment of layered requirement graphs";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<UnknownNode>(m, "UnknownNode", PyExc_KeyError);
    py::register_exception<DomainMismatch>(m, "DomainMismatch", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<TrustGraph>(m, "TrustGraph")
        .def_property_readonly("nodes", [](const TrustGraph &g) { return g.domain()->tokens(); })
        .def_property_readonly("edges",
                               [](const TrustGraph &g) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const Edge &e : g.edges())
                                       out.emplace_back(g.token(e.source), g.token(e.target));
                                   return out;
                               })
        .def_property_readonly("orientation", [](const TrustGraph &g) { return std::string(to_string(g.orientation())); })
        .def_property_readonly("title", &TrustGraph::title)
        .def("layer", [](const TrustGraph &g, const std::string &t) { return std::string(to_string(g.layer(g.index_of(t)))); })
        .def("out_degree", [](const TrustGraph &g, const std::string &t) { return out_degree(g, t); })
        .def("in_neighbors", [](const TrustGraph &g, const std::string &t) { return in_neighbors(g, t); })
        .def("reachable_from",
             [](const TrustGraph &g, const std::vector<std::string> &seeds) { return reachable_from(g, seeds); })
        .def("reverse", [](const TrustGraph &g) { return reverse(g); })
        .def("__len__", &TrustGraph::node_count)
        .def("__eq__", [](const TrustGraph &a, const TrustGraph &b) { return a == b; })
        .def("__repr__", [](const TrustGraph &g) {
            return "<TrustGraph " + std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) +
                   " edges, " + std::string(to_string(g.orientation())) + ">";
        });

    py::class_<ScoreVector>(m, "ScoreVector")
        .def_property_readonly("nodes", [](const ScoreVector &s) { return s.domain()->tokens(); })
        .def_property_readonly("values", &ScoreVector::values)
        .def_readonly("iterations", &ScoreVector::iterations)
        .def_readonly("converged", &ScoreVector::converged)
        .def_readonly("warnings", &ScoreVector::warnings)
        .def("__getitem__", [](const ScoreVector &s, const std::string &t) { return s.at(t); })
        .def("__len__", &ScoreVector::size)
        .def("to_dict", &score_dict);

    m.def("parse_graph_text", [](const std::string &text) { return parse_graph_text(text); }, py::arg("text"));
    m.def("emit_graph_text", &emit_graph_text, py::arg("graph"));
    m.def("graph_digest", &graph_digest, py::arg("graph"));
    m.def("validate_graph_text",
          [](const std::string &text) {
              std::vector<std::string> messages;
              for (const Violation &v : validate_graph(parse_graph_document(text)))
                  messages.push_back(v.message);
              return messages;
          },
          py::arg("text"), "Violation messages of a syntactically valid document; empty when valid.");

    m.def("pagerank",
          [](const TrustGraph &g, double alpha, double epsilon, std::size_t max_iterations) {
              return pagerank(g, make_params(alpha, epsilon, max_iterations));
          },
          py::arg("graph"), py::arg("alpha") = RankParams::DEFAULT_ALPHA,
          py::arg("epsilon") = RankParams::DEFAULT_EPSILON,
          py::arg("max_iterations") = RankParams::DEFAULT_MAX_ITERATIONS,
          py::call_guard<py::gil_scoped_release>());
    m.def("trustrank",
          [](const TrustGraph &g, const std::vector<std::string> &seeds, double alpha, double epsilon,
             std::size_t max_iterations) {
              return trustrank(g, SeedSet(seeds), make_params(alpha, epsilon, max_iterations));
          },
          py::arg("graph"), py::arg("seeds"), py::arg("alpha") = RankParams::DEFAULT_ALPHA,
          py::arg("epsilon") = RankParams::DEFAULT_EPSILON,
          py::arg("max_iterations") = RankParams::DEFAULT_MAX_ITERATIONS,
          py::call_guard<py::gil_scoped_release>());

    m.def("classify_nodes",
          [](const ScoreVector &pr, const ScoreVector &tr, double theta, std::optional<double> cutoff) {
              ClassificationThresholds th;
              th.dominance_ratio = theta;
              if (cutoff) {
                  th.high_mass_rule = HighMassRule::Cutoff;
                  th.cutoff = *cutoff;
              }
              std::vector<std::pair<std::string, std::string>> out;
              for (const NodeClassification &c : classify_nodes(pr, tr, th))
                  out.emplace_back(c.node, std::string(to_string(c.condition)));
              return out;
          },
          py::arg("pagerank"), py::arg("trustrank"), py::arg("theta") = 0.5, py::arg("cutoff") = py::none());

    m.def("assess_json",
          [](const TrustGraph &g, const std::vector<std::vector<std::string>> &seed_sets, double alpha, double theta) {
              std::vector<SeedSet> sets(seed_sets.begin(), seed_sets.end());
              RankParams params;
              params.alpha = alpha;
              ClassificationThresholds th;
              th.dominance_ratio = theta;
              return emit_report_json(assess(g, sets, params, th));
          },
          py::arg("graph"), py::arg("seed_sets"), py::arg("alpha") = RankParams::DEFAULT_ALPHA,
          py::arg("theta") = 0.5, py::call_guard<py::gil_scoped_release>());

    m.def("scores_csv",
          [](const std::vector<std::pair<std::string, ScoreVector>> &vectors) {
              std::vector<LabeledScores> labeled;
              for (const auto &[label, scores] : vectors)
                  labeled.push_back({label, scores});
              return emit_scores_csv(labeled);
          },
          py::arg("vectors"));

    m.def("scenario_ids", &scenario_ids);
    m.def("scenario_graph", [](const std::string &id) { return scenario_graph(id).graph; }, py::arg("id"));
    m.def("published_columns",
          [](const std::string &id) {
              py::dict out;
              for (const PublishedColumn &c : scenario_graph(id).columns)
                  out[py::str(c.label)] = score_dict(c.values);
              return out;
          },
          py::arg("id"));
    m.def("altai_catalog", [] {
        py::list out;
        for (const AltaiRequirement &r : altai_catalog()) {
            py::dict d;
            d["key"] = r.key;
            d["title"] = r.title;
            d["description"] = r.description;
            d["aligned_principle"] = r.aligned_principle;
            d["aspects"] = r.aspects;
            out.append(d);
        }
        return out;
    });

    m.def("run_cli",
          [](const std::vector<std::string> &args) {
              std::ostringstream out, err;
              int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
