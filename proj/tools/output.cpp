#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "qgs/error.hpp"

namespace qgs::cli {

namespace {

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render(const Result& result, const std::string& format) {
  if (format == "json") return result.json.dump(2) + "\n";
  if (format != "csv") throw DomainError("unknown output format '" + format + "'");
  std::string out = "graph,gamma,rho,lambda,observed,bound,margin\n";
  for (const auto& r : result.rows) {
    out += quoted(r.graph) + "," + cell(r.gamma) + "," + cell(r.rho) + "," + cell(r.lambda) + "," +
           cell(r.observed) + "," + cell(r.bound) + "," + cell(r.margin) + "\n";
  }
  return out;
}

void emit(const Result& result, const std::string& format, const std::string& path) {
  const std::string text = render(result, format);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

}  // namespace qgs::cli
