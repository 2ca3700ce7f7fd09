#pragma once

#include <string_view>

namespace trustgraph::detail {

std::string_view robustness_graph_text();
std::string_view robustness_scores_csv();
std::string_view transparency_graph_text();
std::string_view transparency_scores_csv();

} // namespace trustgraph::detail
