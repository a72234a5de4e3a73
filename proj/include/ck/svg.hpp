#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ck/csv.hpp"

namespace ck {

struct plot_options {
  std::optional<double> y_min;
  std::optional<double> y_max;
  int width = 960;
  int height = 600;
};

// Line chart of mean vs beta, one curve per (method, N_s), with std-error
// bands. Throws on an empty row set. Pure string output; no display stack.
std::string render_chart(const std::vector<sweep_row>& rows, const plot_options& options,
                         const std::string& manifest_comment);

}  // namespace ck
