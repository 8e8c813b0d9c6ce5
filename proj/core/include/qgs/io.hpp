#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qgs/bounds.hpp"
#include "qgs/graph.hpp"
#include "qgs/polytrig.hpp"
#include "qgs/sampling.hpp"
#include "qgs/spectral.hpp"
#include "qgs/subspace.hpp"

namespace qgs {

using Json = nlohmann::ordered_json;

struct GraphInput {
  MetricGraph graph;
  BoundarySubspace y;
  VertexConditions conditions;
  /// The file gave a raw basis instead of symbolic conditions.
  bool raw_basis = false;
};

/// Reads a JSON document; syntax errors become ParseError with line/column.
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source = "<input>");

GraphInput parse_graph(const Json& doc);
GraphInput load_graph(const std::string& path);

SamplingSet parse_sampling(const Json& doc, const MetricGraph& g);
SamplingSet load_sampling(const std::string& path, const MetricGraph& g);

Json to_json(const IntervalUnion& u);
Json to_json(const EdgeFunction& f);
Json to_json(const GraphFunction& f, const MetricGraph& g);
Json to_json(const EigenPair& p, const MetricGraph& g);
Json to_json(const LogValue& v);
Json to_json(const Cover& c, const MetricGraph& g);

}  // namespace qgs
