#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perc/estimators.hpp"
#include "perc/oracle.hpp"

namespace perc {

/// "%.17g" formatting: round-trips doubles and is byte-stable across runs.
std::string format_double(double x);

std::string vertex_to_string(const Vertex& v);
/// Parses "a,b,c" or "(a,b,c)" into a Vertex.
Vertex parse_vertex(const std::string& text, int expected_dim = 0);

/// Plain-text finite instance: a line `d=<int>`, then one edge per line as
/// two whitespace-separated coordinate tuples.
FiniteInstance parse_instance(std::istream& in, double p);
FiniteInstance load_instance(const std::string& path, double p);

void write_scaling_csv(std::ostream& out, const std::string& x_name,
                       const std::vector<ScalingPoint>& points);
void write_scaling_csv_file(const std::string& path, const std::string& x_name,
                            const std::vector<ScalingPoint>& points);

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

}  // namespace perc
