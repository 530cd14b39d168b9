#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "motkit/legendre.hpp"
#include "motkit/measures.hpp"
#include "motkit/mot.hpp"
#include "motkit/paving.hpp"
#include "motkit/structure.hpp"

// JSON file formats. Keys are written in a fixed order and doubles in shortest
// round-trip form, so equal inputs give byte-equal files.
namespace motkit::io {

using Json = nlohmann::ordered_json;

// Throws a parse error on malformed text.
Json parse(const std::string& text);
Json read_file(const std::string& path);
std::string dump(const Json& j);  // two-space indent, trailing newline

Json to_json(const Point& p);
Json to_json(const std::vector<Point>& ps);
Point point_from_json(const Json& j, std::size_t dim);
std::vector<Point> points_from_json(const Json& j, std::size_t dim);

// {"dim", "atoms", "weights"}. Loading renormalizes; *warning is set when the
// mass was off by more than 1e-9.
Json to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j, std::string* warning = nullptr, double tol_geom = 1e-9);

// {"kind", "p", "sense"}, plus "scale" when it is not 1.
Json to_json(const CostSpec& c);
CostSpec cost_from_json(const Json& j);

// {"mu", "nu", "cost"}
Json to_json(const Instance& in);
Instance instance_from_json(const Json& j, std::string* warning = nullptr, double tol_geom = 1e-9);

// {"mu", "nu", "entries": [{"i", "j", "mass"}], ["cost"], ["value"]}
Json to_json(const Coupling& pi, const std::optional<CostSpec>& cost = std::nullopt,
             std::optional<double> value = std::nullopt);
Coupling coupling_from_json(const Json& j, std::optional<CostSpec>* cost = nullptr, double tol_geom = 1e-9);

Json to_json(const AdmissibleTriple& t);
AdmissibleTriple triple_from_json(const Json& j);

// {"dim", "fibers": [{"x", "ys"}]}. A coupling document is accepted too and
// reduced to its support.
Json to_json(const SupportSet& s);
SupportSet support_from_json(const Json& j);

Json to_json(const ConvexWitness& w);
Json to_json(const CouplingResiduals& r);
Json to_json(const ContactReport& r);
Json to_json(const PavingReport& r);
Json to_json(const SupportSet& gamma, const Paving& p);
Json to_json(const ComponentDuals& d);
Json to_json(const FiberReport& r);
Json to_json(const LegendreDual& d);
Json to_json(const SandwichReport& r);
Json to_json(const IdempotenceReport& r);
Json to_json(const GammaGrowth& g);
Json to_json(const LaplacianBound& b);
Json to_json(const SegmentFamily& f);
SegmentFamily family_from_json(const Json& j);
Json to_json(const FlatteningResult& f);

// {"dim", "ys", "beta"} where beta is an array aligned with ys or an object
// keyed by Y index.
SampledFunction sampled_from_json(const Json& j);

}  // namespace motkit::io
