#include "perc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace perc {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string vertex_to_string(const Vertex& v) {
  std::string s;
  for (int i = 0; i < v.dim; ++i) {
    if (i) s += ',';
    s += std::to_string(v.c[i]);
  }
  return s;
}

Vertex parse_vertex(const std::string& text, int expected_dim) {
  std::string t = text;
  std::erase(t, '(');
  std::erase(t, ')');
  Vertex v;
  v.dim = 0;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (v.dim >= kMaxDim) throw std::invalid_argument("parse_vertex: too many coordinates");
    v.c[v.dim++] = std::stoll(part);
  }
  if (v.dim == 0) throw std::invalid_argument("parse_vertex: empty tuple");
  if (expected_dim && v.dim != expected_dim)
    throw std::invalid_argument("parse_vertex: dimension mismatch in '" + text + "'");
  return v;
}

FiniteInstance parse_instance(std::istream& in, double p) {
  std::string line;
  int dim = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    if (dim == 0) {
      if (body.rfind("d=", 0) != 0)
        throw std::invalid_argument("parse_instance: expected leading 'd=<int>' line");
      dim = std::stoi(body.substr(2));
      if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("parse_instance: bad dimension");
      continue;
    }
    std::stringstream ss(body);
    std::string a, b;
    if (!(ss >> a >> b)) throw std::invalid_argument("parse_instance: bad edge line '" + line + "'");
    edges.emplace_back(parse_vertex(a, dim), parse_vertex(b, dim));
  }
  if (dim == 0) throw std::invalid_argument("parse_instance: empty instance");
  return make_instance(dim, std::move(edges), p);
}

FiniteInstance load_instance(const std::string& path, double p) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_instance: cannot open " + path);
  return parse_instance(in, p);
}

void write_scaling_csv(std::ostream& out, const std::string& x_name,
                       const std::vector<ScalingPoint>& points) {
  out << x_name << ",mean,ci,n\n";
  for (const ScalingPoint& pt : points) {
    out << format_double(pt.x) << ',' << format_double(pt.mean) << ','
        << format_double(pt.ci_halfwidth) << ',' << pt.n << '\n';
  }
}

void write_scaling_csv_file(const std::string& path, const std::string& x_name,
                            const std::vector<ScalingPoint>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_scaling_csv_file: cannot open " + path);
  write_scaling_csv(out, x_name, points);
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_xy_csv: cannot open " + path);
  std::vector<std::pair<double, double>> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) continue;
    if (first) {
      first = false;
      try {
        out.emplace_back(std::stod(a), std::stod(b));
      } catch (const std::exception&) {
        // header row
      }
      continue;
    }
    out.emplace_back(std::stod(a), std::stod(b));
  }
  return out;
}

}  // namespace perc
