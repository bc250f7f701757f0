#include "trussopt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace trussopt {

Topology decode(const std::vector<double>& x, const DesignSpace& space,
                const GroundStructure& ground) {
  if (static_cast<int>(x.size()) != space.D)
    throw std::invalid_argument("design vector length does not match D");

  const std::size_t el = ground.candidate_elements.size();
  Topology topology;
  topology.present.assign(el, 0);
  topology.areas.assign(el, 0.0);

  for (int k = 0; k < space.D; ++k) {
    double area = x[k];
    if (area < space.area_min)
      area = 0.0;
    else if (area > space.area_max)
      area = space.area_max;
    for (int e : space.symmetry[k]) {
      topology.areas[e] = area;
      topology.present[e] = area > 0.0 ? 1 : 0;
    }
  }
  return topology;
}

TrussModel instantiate(const Topology& topology, const GroundStructure& ground) {
  const std::size_t nn = ground.nodes.size();
  std::vector<char> keep(nn, 0);
  for (std::size_t e = 0; e < ground.candidate_elements.size(); ++e) {
    if (!topology.present[e]) continue;
    keep[ground.candidate_elements[e].first] = 1;
    keep[ground.candidate_elements[e].second] = 1;
  }
  // A load on an otherwise isolated node must keep that node: its free dofs
  // carry no stiffness, which flags the mechanism during analysis.
  for (const auto& [dof, value] : ground.loads) {
    (void)value;
    keep[dof.first] = 1;
  }

  std::vector<int> remap(nn, -1);
  TrussModel model;
  model.dimension = ground.dimension;
  model.elastic_modulus = ground.elastic_modulus;
  model.weight_density = ground.weight_density;
  for (std::size_t i = 0; i < nn; ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(model.nodes.size());
    model.nodes.push_back(ground.nodes[i]);
  }
  for (std::size_t e = 0; e < ground.candidate_elements.size(); ++e) {
    if (!topology.present[e]) continue;
    const auto& [a, b] = ground.candidate_elements[e];
    model.elements.push_back({remap[a], remap[b], topology.areas[e],
                              static_cast<int>(e)});
  }
  for (const auto& [node, axis] : ground.supports) {
    if (remap[node] >= 0) model.supports.insert({remap[node], axis});
  }
  for (const auto& [dof, value] : ground.loads) {
    model.loads[{remap[dof.first], dof.second}] = value;
  }
  return model;
}

namespace {

struct NodeFlags {
  std::vector<char> loaded;
  std::vector<char> supported;
};

NodeFlags node_flags(const TrussModel& model) {
  NodeFlags flags;
  flags.loaded.assign(model.nodes.size(), 0);
  flags.supported.assign(model.nodes.size(), 0);
  for (const auto& [dof, value] : model.loads) {
    (void)value;
    flags.loaded[dof.first] = 1;
  }
  for (const auto& [node, axis] : model.supports) {
    (void)axis;
    flags.supported[node] = 1;
  }
  return flags;
}

std::array<double, 3> unit_direction(const TrussModel& model, int a, int b) {
  std::array<double, 3> d = {0, 0, 0};
  double L2 = 0.0;
  for (int k = 0; k < model.dimension; ++k) {
    d[k] = model.nodes[b][k] - model.nodes[a][k];
    L2 += d[k] * d[k];
  }
  const double L = std::sqrt(L2);
  for (int k = 0; k < model.dimension; ++k) d[k] /= L;
  return d;
}

double cross_norm(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

// True when the incident member directions cannot equilibrate a free node:
// fewer than 2 members (2D) / fewer than 3 spanning 3-space (3D), or all of
// them on one line. |u x v| equals sin of the line angle, so the angular
// tolerance applies directly.
bool cannot_equilibrate(const TrussModel& model, const std::vector<int>& incident,
                        int node) {
  const int needed = model.dimension;
  if (static_cast<int>(incident.size()) < needed) return true;

  std::vector<std::array<double, 3>> dirs;
  dirs.reserve(incident.size());
  for (int e : incident) {
    const auto& el = model.elements[e];
    dirs.push_back(unit_direction(model, node, el.a == node ? el.b : el.a));
  }

  // Mutual collinearity: every direction parallel to the first.
  bool all_collinear = true;
  for (std::size_t i = 1; i < dirs.size(); ++i) {
    if (cross_norm(dirs[0], dirs[i]) >= kCollinearTol) {
      all_collinear = false;
      break;
    }
  }
  if (all_collinear) return true;

  if (model.dimension == 3) {
    // Need three non-coplanar directions: build the best-conditioned normal
    // from the first direction and check if anything leaves that plane.
    std::size_t pick = 1;
    double best = 0.0;
    for (std::size_t i = 1; i < dirs.size(); ++i) {
      const double c = cross_norm(dirs[0], dirs[i]);
      if (c > best) {
        best = c;
        pick = i;
      }
    }
    std::array<double, 3> normal = {
        dirs[0][1] * dirs[pick][2] - dirs[0][2] * dirs[pick][1],
        dirs[0][2] * dirs[pick][0] - dirs[0][0] * dirs[pick][2],
        dirs[0][0] * dirs[pick][1] - dirs[0][1] * dirs[pick][0]};
    const double nn = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] +
                                normal[2] * normal[2]);
    for (auto& c : normal) c /= nn;
    bool coplanar = true;
    for (const auto& d : dirs) {
      const double out = std::abs(normal[0] * d[0] + normal[1] * d[1] +
                                  normal[2] * d[2]);
      if (out >= kCollinearTol) {
        coplanar = false;
        break;
      }
    }
    if (coplanar) return true;
  }
  return false;
}

}  // namespace

TrussModel remove_unwanted_elements(const TrussModel& model,
                                    const GroundStructure& ground) {
  (void)ground;  // geometry already lives in the model
  TrussModel current = model;
  const NodeFlags flags = node_flags(current);

  std::vector<char> alive(current.elements.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;

    std::vector<std::vector<int>> incident(current.nodes.size());
    for (std::size_t e = 0; e < current.elements.size(); ++e) {
      if (!alive[e]) continue;
      incident[current.elements[e].a].push_back(static_cast<int>(e));
      incident[current.elements[e].b].push_back(static_cast<int>(e));
    }

    // Snapshot pass: collect every deletion before applying any.
    std::vector<char> doomed(current.elements.size(), 0);
    for (std::size_t node = 0; node < current.nodes.size(); ++node) {
      if (flags.loaded[node] || flags.supported[node]) continue;
      if (incident[node].empty()) continue;
      if (!cannot_equilibrate(current, incident[node], static_cast<int>(node)))
        continue;
      for (int e : incident[node]) {
        const auto& el = current.elements[e];
        const int other = el.a == static_cast<int>(node) ? el.b : el.a;
        // Keep a member whose removal would isolate a load or support.
        if ((flags.loaded[other] || flags.supported[other]) &&
            incident[other].size() == 1)
          continue;
        doomed[e] = 1;
      }
    }
    for (std::size_t e = 0; e < doomed.size(); ++e) {
      if (doomed[e] && alive[e]) {
        alive[e] = 0;
        changed = true;
      }
    }
  }

  // Rebuild, dropping bare nodes (loaded nodes stay for mechanism marking).
  std::vector<char> keep(current.nodes.size(), 0);
  for (std::size_t e = 0; e < current.elements.size(); ++e) {
    if (!alive[e]) continue;
    keep[current.elements[e].a] = 1;
    keep[current.elements[e].b] = 1;
  }
  for (std::size_t node = 0; node < current.nodes.size(); ++node)
    if (flags.loaded[node]) keep[node] = 1;

  std::vector<int> remap(current.nodes.size(), -1);
  TrussModel out;
  out.dimension = current.dimension;
  out.elastic_modulus = current.elastic_modulus;
  out.weight_density = current.weight_density;
  for (std::size_t i = 0; i < current.nodes.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(current.nodes[i]);
  }
  for (std::size_t e = 0; e < current.elements.size(); ++e) {
    if (!alive[e]) continue;
    const auto& el = current.elements[e];
    out.elements.push_back({remap[el.a], remap[el.b], el.area, el.tag});
  }
  for (const auto& [node, axis] : current.supports) {
    if (remap[node] >= 0) out.supports.insert({remap[node], axis});
  }
  for (const auto& [dof, value] : current.loads) {
    out.loads[{remap[dof.first], dof.second}] = value;
  }
  return out;
}

}  // namespace trussopt
