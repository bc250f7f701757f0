#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trussopt/bench.hpp"

namespace trussopt {

namespace {

// Shortest decimal form that parses back to exactly the same double; keeps
// generated files human-friendly without sacrificing round-trip fidelity.
// Scans all precisions because %g sometimes goes scientific at low precision
// ("1e+02") where a higher precision is plainer and shorter ("100").
std::string format_double(double v) {
  char buf[64];
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) != v) continue;
    if (best.empty() || std::strlen(buf) < best.size()) best = buf;
  }
  if (!best.empty()) return best;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string strip_comments(std::istream& in) {
  std::string text, line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    text += line;
    text += '\n';
  }
  return text;
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("problem file: " + what);
}

template <typename T>
T next(std::istringstream& tokens, const char* what) {
  T value;
  if (!(tokens >> value)) fail(std::string("expected ") + what);
  return value;
}

int axis_of(char c, int dimension) {
  switch (c) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': if (dimension == 3) return 2; break;
    default: break;
  }
  fail(std::string("bad axis letter '") + c + "'");
}

}  // namespace

ProblemDefinition read_problem(std::istream& in) {
  std::istringstream tokens(strip_comments(in));
  ProblemDefinition p;
  bool saw_nodes = false, saw_elements = false, saw_material = false,
       saw_constraints = false, saw_design = false, saw_symmetry = false;
  double var_low = 0.0, var_high = 0.0;

  std::string section;
  while (tokens >> section) {
    if (section == "problem") {
      p.name = next<std::string>(tokens, "problem name");
    } else if (section == "dimension") {
      p.ground.dimension = next<int>(tokens, "dimension");
      if (p.ground.dimension != 2 && p.ground.dimension != 3)
        fail("dimension must be 2 or 3");
    } else if (section == "units") {
      p.length_unit = next<std::string>(tokens, "length unit");
      p.force_unit = next<std::string>(tokens, "force unit");
    } else if (section == "material") {
      p.ground.elastic_modulus = next<double>(tokens, "elastic modulus");
      p.ground.weight_density = next<double>(tokens, "weight density");
      saw_material = true;
    } else if (section == "constraints") {
      p.constraints.allowable_stress = next<double>(tokens, "allowable stress");
      p.constraints.allowable_displacement =
          next<double>(tokens, "allowable displacement");
      saw_constraints = true;
    } else if (section == "design") {
      p.space.area_min = next<double>(tokens, "area_min");
      p.space.area_max = next<double>(tokens, "area_max");
      var_low = next<double>(tokens, "variable lower bound");
      var_high = next<double>(tokens, "variable upper bound");
      saw_design = true;
    } else if (section == "nodes") {
      const int count = next<int>(tokens, "node count");
      for (int i = 0; i < count; ++i) {
        const int id = next<int>(tokens, "node id");
        if (id != i) fail("node ids must be sequential from 0");
        std::array<double, 3> xyz = {0, 0, 0};
        xyz[0] = next<double>(tokens, "x");
        xyz[1] = next<double>(tokens, "y");
        if (p.ground.dimension == 3) xyz[2] = next<double>(tokens, "z");
        p.ground.nodes.push_back(xyz);
      }
      saw_nodes = true;
    } else if (section == "supports") {
      const int count = next<int>(tokens, "support count");
      for (int i = 0; i < count; ++i) {
        const int node = next<int>(tokens, "support node");
        const std::string axes = next<std::string>(tokens, "support axes");
        for (char a : axes)
          p.ground.supports.insert({node, axis_of(a, p.ground.dimension)});
      }
    } else if (section == "loads") {
      const int count = next<int>(tokens, "load count");
      for (int i = 0; i < count; ++i) {
        const int node = next<int>(tokens, "load node");
        const std::string axis = next<std::string>(tokens, "load axis");
        const double value = next<double>(tokens, "load value");
        if (axis.size() != 1) fail("load axis must be one letter");
        p.ground.loads[{node, axis_of(axis[0], p.ground.dimension)}] = value;
      }
    } else if (section == "elements") {
      const int count = next<int>(tokens, "element count");
      for (int i = 0; i < count; ++i) {
        const int a = next<int>(tokens, "element node a");
        const int b = next<int>(tokens, "element node b");
        p.ground.candidate_elements.push_back({a, b});
      }
      saw_elements = true;
    } else if (section == "symmetry") {
      const int vars = next<int>(tokens, "variable count");
      const int el = static_cast<int>(p.ground.candidate_elements.size());
      std::vector<char> covered(el, 0);
      p.space.symmetry.clear();
      for (int k = 0; k < vars; ++k) {
        const int members = next<int>(tokens, "group size");
        std::vector<int> group;
        for (int m = 0; m < members; ++m) {
          const int e = next<int>(tokens, "element index");
          if (e < 0 || e >= el) fail("symmetry group references a missing element");
          if (covered[e]) fail("element controlled by two variables");
          covered[e] = 1;
          group.push_back(e);
        }
        p.space.symmetry.push_back(std::move(group));
      }
      for (int e = 0; e < el; ++e)
        if (!covered[e]) fail("element not covered by any symmetry group");
      p.space.D = vars;
      saw_symmetry = true;
    } else {
      fail("unknown section '" + section + "'");
    }
  }

  if (!saw_nodes || !saw_elements || !saw_material || !saw_constraints ||
      !saw_design)
    fail("missing required section");
  const int nn = static_cast<int>(p.ground.nodes.size());
  for (const auto& [a, b] : p.ground.candidate_elements)
    if (a < 0 || a >= nn || b < 0 || b >= nn || a == b)
      fail("element references a missing node");
  for (const auto& [node, axis] : p.ground.supports) {
    (void)axis;
    if (node < 0 || node >= nn) fail("support references a missing node");
  }
  for (const auto& [dof, v] : p.ground.loads) {
    (void)v;
    if (dof.first < 0 || dof.first >= nn) fail("load references a missing node");
  }

  if (!saw_symmetry) {
    const int el = static_cast<int>(p.ground.candidate_elements.size());
    p.space.D = el;
    p.space.symmetry.assign(el, {});
    for (int e = 0; e < el; ++e) p.space.symmetry[e] = {e};
  }
  p.space.low.assign(p.space.D, var_low);
  p.space.up.assign(p.space.D, var_high);
  return p;
}

ProblemDefinition load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  return read_problem(in);
}

void write_problem(const ProblemDefinition& p, std::ostream& out) {
  out << "# truss topology benchmark definition\n";
  out << "problem " << p.name << "\n";
  out << "dimension " << p.ground.dimension << "\n";
  if (!p.length_unit.empty())
    out << "units " << p.length_unit << " " << p.force_unit << "\n";
  out << "material " << format_double(p.ground.elastic_modulus) << " "
      << format_double(p.ground.weight_density) << "  # E, weight density\n";
  out << "constraints " << format_double(p.constraints.allowable_stress) << " "
      << format_double(p.constraints.allowable_displacement)
      << "  # |stress|, |displacement| limits\n";
  out << "design " << format_double(p.space.area_min) << " "
      << format_double(p.space.area_max) << " "
      << format_double(p.space.low.empty() ? 0.0 : p.space.low[0]) << " "
      << format_double(p.space.up.empty() ? 0.0 : p.space.up[0])
      << "  # area_min area_max var_low var_high\n";

  out << "nodes " << p.ground.nodes.size() << "\n";
  for (std::size_t i = 0; i < p.ground.nodes.size(); ++i) {
    out << i << " " << format_double(p.ground.nodes[i][0]) << " "
        << format_double(p.ground.nodes[i][1]);
    if (p.ground.dimension == 3)
      out << " " << format_double(p.ground.nodes[i][2]);
    out << "\n";
  }

  std::map<int, std::string> support_axes;
  for (const auto& [node, axis] : p.ground.supports)
    support_axes[node] += "xyz"[axis];
  out << "supports " << support_axes.size() << "\n";
  for (const auto& [node, axes] : support_axes)
    out << node << " " << axes << "\n";

  out << "loads " << p.ground.loads.size() << "\n";
  for (const auto& [dof, value] : p.ground.loads)
    out << dof.first << " " << "xyz"[dof.second] << " " << format_double(value)
        << "\n";

  out << "elements " << p.ground.candidate_elements.size() << "\n";
  for (const auto& [a, b] : p.ground.candidate_elements)
    out << a << " " << b << "\n";

  // Identity maps are implicit; only shared-variable problems need the map.
  bool identity = p.space.D == static_cast<int>(p.ground.candidate_elements.size());
  if (identity) {
    for (int k = 0; k < p.space.D && identity; ++k)
      identity = p.space.symmetry[k].size() == 1 && p.space.symmetry[k][0] == k;
  }
  if (!identity) {
    out << "symmetry " << p.space.D << "\n";
    for (int k = 0; k < p.space.D; ++k) {
      out << p.space.symmetry[k].size();
      for (int e : p.space.symmetry[k]) out << " " << e;
      out << "\n";
    }
  }
}

void save_problem(const ProblemDefinition& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write problem file: " + path);
  write_problem(problem, out);
  if (!out) throw std::runtime_error("failed writing problem file: " + path);
}

std::map<std::pair<int, int>, double> read_area_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open areas file: " + path);
  std::istringstream tokens(strip_comments(in));

  std::map<std::pair<int, int>, double> areas;
  std::string label;
  while (tokens >> label) {
    const auto dash = label.find('-', 1);  // node ids are non-negative
    if (dash == std::string::npos)
      throw std::runtime_error("areas file: expected a-b label, got '" + label +
                               "'");
    int a = 0, b = 0;
    try {
      a = std::stoi(label.substr(0, dash));
      b = std::stoi(label.substr(dash + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("areas file: bad element label '" + label + "'");
    }
    double value = 0.0;
    if (!(tokens >> value))
      throw std::runtime_error("areas file: missing area after '" + label + "'");
    areas[{a, b}] = value;
  }
  return areas;
}

void write_trace_csv(const RunRecord& record, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << "iteration,best_weight,cumulative_evaluations\n";
  char buf[64];
  for (std::size_t i = 0; i < record.trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", record.trace[i]);
    out << i << "," << buf << "," << record.eval_trace[i] << "\n";
  }
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace trussopt
