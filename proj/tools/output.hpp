#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgs/io.hpp"

namespace qgs::cli {

/// One line of the flat table. Columns are fixed for every command; cells
/// that do not apply stay empty.
struct CsvRow {
  std::string graph;
  std::optional<double> gamma;
  std::optional<double> rho;
  std::optional<double> lambda;
  std::optional<double> observed;
  std::optional<double> bound;
  std::optional<double> margin;
};

struct Result {
  Json json;
  std::vector<CsvRow> rows;
  int exit_code = 0;
};

std::string render(const Result& result, const std::string& format);
void emit(const Result& result, const std::string& format, const std::string& path);

}  // namespace qgs::cli
