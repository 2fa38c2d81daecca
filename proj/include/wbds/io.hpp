#pragma once

#include <string>
#include <string_view>

#include "wbds/balance.hpp"
#include "wbds/cregular.hpp"
#include "wbds/digraph.hpp"
#include "wbds/trace.hpp"

namespace wbds {

enum class GraphFormat { json, dot_subset, edge_list };
enum class TraceFormat { json, csv };

/// Throws Error(parse_error) for unknown names.
GraphFormat parse_graph_format(std::string_view name);
const char* to_string(GraphFormat f) noexcept;

/// Format guessed from a file name: .json, .dot/.gv, anything else edge list.
GraphFormat graph_format_for_path(std::string_view path);

struct GraphMetadata {
  std::string name;
  std::string description;
};

/// Throws ParseError (parse_error, duplicate_edge or bad_weight) with a
/// 1-based line and column.
WeightedDigraph parse_graph(std::string_view text, GraphFormat format,
                            GraphMetadata* metadata = nullptr);

std::string serialize_graph(const WeightedDigraph& g, GraphFormat format,
                            const GraphMetadata& metadata = {});

std::string serialize_trace(const RoundTrace& trace, TraceFormat format);

/// Lines "round vertex target"; '#' starts a comment.
ChoiceSchedule parse_choice_schedule(std::string_view text);

/// Lines "step vertex action [neighbor]" where action is forward, backward,
/// raise-target, raise-source or declare; '#' starts a comment.
CRegularSchedule parse_cregular_schedule(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wbds
