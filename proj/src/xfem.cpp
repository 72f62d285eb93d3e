#include "xsbfem/xfem.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem {

namespace {

constexpr double kSnap = 1e-6;  // relative to element size

struct CrackHit {
  double crack_param;  // segment index + local parameter
  double edge_pos;     // edge index + local parameter, in [0, 4)
  Point point;
};

double polygon_area(const std::vector<Point>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

bool point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c, double tol) {
  return orientation(a, b, p) > tol && orientation(b, c, p) > tol && orientation(c, a, p) > tol;
}

// Ear clipping of a counter-clockwise simple polygon.
std::vector<std::array<Point, 3>> triangulate(std::vector<Point> poly, double tol) {
  std::vector<std::array<Point, 3>> out;
  // Drop repeated and collinear vertices.
  for (bool changed = true; changed && poly.size() > 3;) {
    changed = false;
    for (std::size_t i = 0; i < poly.size() && poly.size() > 3; ++i) {
      const Point& a = poly[(i + poly.size() - 1) % poly.size()];
      const Point& b = poly[i];
      const Point& c = poly[(i + 1) % poly.size()];
      if ((b - a).norm() <= tol || std::abs(orientation(a, b, c)) <= tol * (c - a).norm()) {
        poly.erase(poly.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  const double area_tol = tol * tol;
  while (poly.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const std::size_t ip = (i + poly.size() - 1) % poly.size();
      const std::size_t in = (i + 1) % poly.size();
      if (orientation(poly[ip], poly[i], poly[in]) <= area_tol) continue;
      bool ear = true;
      for (std::size_t k = 0; k < poly.size() && ear; ++k) {
        if (k == ip || k == i || k == in) continue;
        if (point_in_triangle(poly[k], poly[ip], poly[i], poly[in], -area_tol)) ear = false;
      }
      if (!ear) continue;
      out.push_back({poly[ip], poly[i], poly[in]});
      poly.erase(poly.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw Error(ErrorKind::Geometry, "cannot triangulate a crack-cut element");
  }
  if (poly.size() == 3 && orientation(poly[0], poly[1], poly[2]) > area_tol) out.push_back({poly[0], poly[1], poly[2]});
  return out;
}

struct ElementCut {
  bool touched = false;
  bool split = false;
  int side = 0;  // for touched, unsplit elements
  std::vector<SplitCell> cells;
};

ElementCut cut_element(const std::array<Point, 4>& x, const CrackGeometry& crack, double h) {
  ElementCut out;
  const double tol = kSnap * h;
  const auto verts = crack.vertices();
  // Quick reject by bounding boxes.
  Point lo = x[0];
  Point hi = x[0];
  for (const Point& p : x) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  lo.array() -= tol;
  hi.array() += tol;
  bool near = false;
  for (std::size_t k = 0; k + 1 < verts.size() && !near; ++k) {
    const Point a = verts[k].cwiseMin(verts[k + 1]);
    const Point b = verts[k].cwiseMax(verts[k + 1]);
    near = !(b.x() < lo.x() || a.x() > hi.x() || b.y() < lo.y() || a.y() > hi.y());
  }
  if (!near) return out;

  std::vector<CrackHit> hits;
  for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
    for (int i = 0; i < 4; ++i) {
      const Point& a = x[i];
      const Point& b = x[(i + 1) % 4];
      auto hit = intersect_segments(a, b, verts[k], verts[k + 1], tol);
      if (!hit) continue;
      const double len = (b - a).norm();
      double t = hit->t;
      if (t * len <= tol) t = 0.0;
      if ((1.0 - t) * len <= tol) t = 1.0;
      hits.push_back({static_cast<double>(k) + hit->u, i + t, a + t * (b - a)});
    }
  }
  // Crack vertices strictly inside the element.
  std::vector<std::pair<double, Point>> inner;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    if (!quad_contains(x, verts[k], tol)) continue;
    bool on_edge = false;
    for (int i = 0; i < 4; ++i) {
      if (distance_to_segment(verts[k], x[i], x[(i + 1) % 4]).first <= tol) on_edge = true;
    }
    if (on_edge) continue;
    if (k == 0 || k + 1 == verts.size()) {
      throw Error(ErrorKind::NotSupported, "crack ends inside an element outside the SBFEM region");
    }
    inner.emplace_back(static_cast<double>(k), verts[k]);
  }
  if (hits.empty() && inner.empty()) return out;
  out.touched = true;
  std::sort(hits.begin(), hits.end(), [](const CrackHit& a, const CrackHit& b) { return a.crack_param < b.crack_param; });
  std::vector<CrackHit> uniq;
  for (const CrackHit& hh : hits) {
    if (uniq.empty() || (hh.point - uniq.back().point).norm() > tol) uniq.push_back(hh);
  }
  // Corner hits appear on two edges with positions i + 1 and i + 1 + 0; normalise.
  for (CrackHit& hh : uniq) {
    if (hh.edge_pos >= 4.0) hh.edge_pos -= 4.0;
  }
  const Point centroid = 0.25 * (x[0] + x[1] + x[2] + x[3]);
  auto strictly_inside = [&](const Point& p) {
    if (!quad_contains(x, p, -tol)) return false;
    return true;
  };
  if (uniq.size() < 2) {
    out.side = heaviside(crack.signed_distance(centroid));
    return out;
  }
  if (uniq.size() > 2) throw Error(ErrorKind::NotSupported, "crack crosses an element more than once");
  const CrackHit& in = uniq[0];
  const CrackHit& ex = uniq[1];
  std::vector<Point> path;  // crack vertices between entry and exit
  for (const auto& [k, p] : inner) {
    if (k > in.crack_param && k < ex.crack_param) path.push_back(p);
  }
  const Point probe = 0.5 * (in.point + (path.empty() ? ex.point : path.front()));
  if (!strictly_inside(probe)) {
    out.side = heaviside(crack.signed_distance(centroid));
    return out;
  }
  out.split = true;
  auto walk = [&](double from, double to) {
    // Corners strictly between two boundary positions, counter-clockwise.
    std::vector<Point> corners;
    double end = to;
    if (end <= from) end += 4.0;
    for (int c = 1; c <= 8; ++c) {
      const double pos = std::floor(from) + c;
      if (pos >= end - 1e-12) break;
      if (pos > from + 1e-12) corners.push_back(x[static_cast<int>(pos) % 4]);
    }
    return corners;
  };
  std::vector<Point> a_poly{ex.point};
  for (const Point& p : walk(ex.edge_pos, in.edge_pos)) a_poly.push_back(p);
  a_poly.push_back(in.point);
  for (const Point& p : path) a_poly.push_back(p);
  std::vector<Point> b_poly{in.point};
  for (const Point& p : walk(in.edge_pos, ex.edge_pos)) b_poly.push_back(p);
  b_poly.push_back(ex.point);
  for (auto it = path.rbegin(); it != path.rend(); ++it) b_poly.push_back(*it);
  for (const std::vector<Point>* poly : {&a_poly, &b_poly}) {
    if (polygon_area(*poly) <= 0.0) throw Error(ErrorKind::Geometry, "inconsistent crack cut polygon");
    const auto tris = triangulate(*poly, tol);
    if (tris.empty()) continue;
    std::size_t big = 0;
    double big_area = 0.0;
    for (std::size_t k = 0; k < tris.size(); ++k) {
      const double ar = orientation(tris[k][0], tris[k][1], tris[k][2]);
      if (ar > big_area) {
        big_area = ar;
        big = k;
      }
    }
    const Point c = (tris[big][0] + tris[big][1] + tris[big][2]) / 3.0;
    const int side = heaviside(crack.signed_distance(c));
    for (const auto& t : tris) out.cells.push_back({t, side});
  }
  return out;
}

Eigen::Matrix<double, 3, 2> strain_block(const Eigen::Matrix<double, 2, 4>& dn, int a) {
  Eigen::Matrix<double, 3, 2> b;
  b << dn(0, a), 0.0, 0.0, dn(1, a), dn(1, a), dn(0, a);
  return b;
}

}  // namespace

std::string_view to_string(ElementClass c) noexcept {
  switch (c) {
    case ElementClass::Standard: return "standard";
    case ElementClass::Split: return "split";
    case ElementClass::SplitBlending: return "split-blending";
    case ElementClass::ScaledBoundary: return "scaled-boundary";
  }
  return "unknown";
}

int heaviside(double signed_distance) {
  if (signed_distance > 0.0) return 1;
  if (signed_distance < 0.0) return -1;
  throw Error(ErrorKind::Geometry, "point lies exactly on the crack surface");
}

void GlobalModel::validate() const {
  mesh.validate();
  if (materials.empty()) throw Error(ErrorKind::InvalidArgument, "model has no materials");
  if (element_material.size() != mesh.quads.size()) {
    throw Error(ErrorKind::InvalidArgument, "one material id per element is required");
  }
  for (int id : element_material) {
    if (id < 0 || id >= static_cast<int>(materials.size())) {
      throw Error(ErrorKind::InvalidArgument, "element material id out of range");
    }
  }
  for (std::size_t i = 1; i < materials.size(); ++i) {
    if (materials[i].plane_state() != materials[0].plane_state()) {
      throw Error(ErrorKind::InvalidArgument, "materials must share the plane state");
    }
  }
  const int nn = static_cast<int>(mesh.nodes.size());
  for (const DirichletCondition& c : constraints) {
    if (c.node < 0 || c.node >= nn || c.component < 0 || c.component > 1) {
      throw Error(ErrorKind::InvalidArgument, "invalid Dirichlet condition");
    }
  }
  for (const NodalForce& f : nodal_forces) {
    if (f.node < 0 || f.node >= nn) throw Error(ErrorKind::InvalidArgument, "invalid nodal force");
  }
  for (const EdgeTraction& t : tractions) {
    if (t.node_a < 0 || t.node_a >= nn || t.node_b < 0 || t.node_b >= nn || t.node_a == t.node_b) {
      throw Error(ErrorKind::InvalidArgument, "invalid edge traction");
    }
  }
}

std::vector<int> assign_materials(const QuadMesh& mesh, const Polyline& interface, int left_id, int right_id) {
  std::vector<int> ids(mesh.quads.size());
  for (std::size_t e = 0; e < mesh.quads.size(); ++e) {
    const auto x = mesh.corners(e);
    const double tol = kSnap * mesh.element_size(e);
    bool pos = false;
    bool neg = false;
    for (const Point& p : x) {
      const double d = interface.signed_distance(p);
      pos = pos || d > tol;
      neg = neg || d < -tol;
    }
    if (pos && neg) {
      // Crossing only counts when the interface actually passes through the element.
      bool crosses = false;
      for (int i = 0; i < 4 && !crosses; ++i) {
        crosses = !interface.crossings(x[i], x[(i + 1) % 4], tol).empty();
      }
      if (crosses) {
        std::ostringstream msg;
        msg << "material interface crosses the interior of element " << e;
        throw Error(ErrorKind::NotSupported, msg.str());
      }
    }
    ids[e] = interface.signed_distance(mesh.centroid(e)) > 0.0 ? left_id : right_id;
  }
  return ids;
}

int Classification::count(ElementClass c) const {
  return static_cast<int>(std::count(classes.begin(), classes.end(), c));
}

Classification classify_elements(const GlobalModel& model, const SBFEMRegionSpec& spec) {
  if (spec.layers < 1) throw Error(ErrorKind::InvalidArgument, "SBFEM region needs at least one layer");
  const QuadMesh& mesh = model.mesh;
  Point tip;
  if (model.crack) {
    tip = model.crack->tip();
  } else if (spec.center) {
    tip = *spec.center;
  } else {
    throw Error(ErrorKind::InvalidArgument, "an uncracked model needs an explicit scaling centre");
  }
  Classification cls;
  const std::size_t ne = mesh.quads.size();
  cls.classes.assign(ne, ElementClass::Standard);
  cls.cells.assign(ne, {});
  for (std::size_t e = 0; e < ne; ++e) {
    if (quad_contains(mesh.corners(e), tip, 1e-9 * mesh.element_size(e))) cls.tip_elements.push_back(static_cast<int>(e));
  }
  if (cls.tip_elements.empty()) throw Error(ErrorKind::Geometry, "crack tip lies outside the mesh");

  const auto node_elems = mesh.node_elements();
  std::vector<char> in_region(ne, 0);
  for (int e : cls.tip_elements) in_region[e] = 1;
  std::vector<char> tip_materials(model.materials.size(), 0);
  for (int e : cls.tip_elements) tip_materials[model.element_material[e]] = 1;
  auto acceptable = [&](const std::vector<char>& region) {
    for (std::size_t e = 0; e < ne; ++e) {
      if (!region[e]) continue;
      if (!tip_materials[model.element_material[e]]) return false;
      if (!model.crack) continue;
      const auto x = mesh.corners(e);
      const auto verts = model.crack->vertices();
      for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        if (quad_contains(x, verts[k], 1e-9)) return false;
      }
    }
    return true;
  };
  for (int layer = 0; layer < spec.layers; ++layer) {
    std::vector<char> next = in_region;
    for (std::size_t e = 0; e < ne; ++e) {
      if (!in_region[e]) continue;
      for (int v : mesh.quads[e]) {
        for (int f : node_elems[v]) next[f] = 1;
      }
    }
    if (spec.shrink_to_fit && layer > 0 && !acceptable(next)) break;
    in_region.swap(next);
    cls.layers = layer + 1;
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (in_region[e]) {
      cls.classes[e] = ElementClass::ScaledBoundary;
      cls.region_elements.push_back(static_cast<int>(e));
    }
  }

  cls.enriched.assign(mesh.nodes.size(), 0);
  if (!model.crack) return cls;

  // Sides of the crack touched by every outside element the crack reaches.
  std::vector<std::array<char, 2>> touches(mesh.nodes.size(), {0, 0});
  for (std::size_t e = 0; e < ne; ++e) {
    if (in_region[e]) continue;
    const ElementCut cut = cut_element(mesh.corners(e), *model.crack, mesh.element_size(e));
    if (!cut.touched) continue;
    if (cut.split) {
      cls.classes[e] = ElementClass::Split;
      cls.cells[e] = cut.cells;
      for (int v : mesh.quads[e]) touches[v] = {1, 1};
    } else {
      for (int v : mesh.quads[e]) touches[v][cut.side > 0 ? 1 : 0] = 1;
    }
  }
  for (std::size_t v = 0; v < mesh.nodes.size(); ++v) {
    if (touches[v][0] && touches[v][1]) {
      cls.enriched[v] = 1;
      cls.enriched_nodes.push_back(static_cast<int>(v));
    }
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (cls.classes[e] != ElementClass::Standard) continue;
    for (int v : mesh.quads[e]) {
      if (cls.enriched[v]) cls.classes[e] = ElementClass::SplitBlending;
    }
  }
  return cls;
}

SBFEMRegion extract_sbfem_region(const GlobalModel& model, const SBFEMRegionSpec& spec, const Classification& cls) {
  const QuadMesh& mesh = model.mesh;
  const Point tip = model.crack ? model.crack->tip() : *spec.center;

  // Directed boundary edges of the region: edges not shared by two members.
  std::map<std::pair<int, int>, int> directed;  // (a, b) -> owning element
  for (int e : cls.region_elements) {
    const Quad& q = mesh.quads[e];
    for (int i = 0; i < 4; ++i) directed[{q[i], q[(i + 1) % 4]}] = e;
  }
  std::map<int, std::pair<int, int>> next;  // a -> (b, element)
  for (const auto& [edge, e] : directed) {
    if (directed.count({edge.second, edge.first})) continue;
    if (next.count(edge.first)) throw Error(ErrorKind::Region, "SBFEM region boundary touches itself");
    next[edge.first] = {edge.second, e};
  }
  if (next.empty()) throw Error(ErrorKind::Region, "SBFEM region has no boundary");
  std::vector<int> loop;
  std::vector<int> owner;
  int start = next.begin()->first;
  int cur = start;
  do {
    loop.push_back(cur);
    owner.push_back(next.at(cur).second);
    cur = next.at(cur).first;
    if (loop.size() > next.size()) throw Error(ErrorKind::Region, "SBFEM region boundary is not a simple loop");
  } while (cur != start);
  if (loop.size() != next.size()) throw Error(ErrorKind::Region, "SBFEM region is not simply connected");

  SBFEMRegion region;
  region.member_elements = cls.region_elements;
  region.boundary_loop = loop;
  const std::size_t nl = loop.size();
  std::vector<Point> positions;
  std::vector<BoundaryElement> elements;

  if (!model.crack) {
    for (std::size_t k = 0; k < nl; ++k) {
      region.chain.push_back({loop[k], -1, 0.0, 0});
      positions.push_back(mesh.nodes[loop[k]]);
      elements.push_back({{static_cast<int>(k), static_cast<int>((k + 1) % nl)}, model.element_material[owner[k]]});
    }
  } else {
    const CrackGeometry& crack = *model.crack;
    struct Mouth {
      std::size_t edge;
      double t;
      Point point;
    };
    std::vector<Mouth> mouths;
    for (std::size_t k = 0; k < nl; ++k) {
      const Point& a = mesh.nodes[loop[k]];
      const Point& b = mesh.nodes[loop[(k + 1) % nl]];
      const double len = (b - a).norm();
      const double tol = kSnap * len;
      for (const SegmentHit& hit : crack.crossings(a, b, tol)) {
        double t = hit.t;
        if (t * len <= tol) t = 0.0;
        if ((1.0 - t) * len <= tol) t = 1.0;
        std::size_t edge = k;
        if (t == 1.0) {
          edge = (k + 1) % nl;
          t = 0.0;
        }
        const Point p = mesh.nodes[loop[edge]] * (1.0 - t) + mesh.nodes[loop[(edge + 1) % nl]] * t;
        bool dup = false;
        for (const Mouth& m : mouths) dup = dup || (m.point - p).norm() <= tol;
        if (!dup) mouths.push_back({edge, t, p});
      }
    }
    if (mouths.size() != 1) {
      std::ostringstream msg;
      msg << "crack crosses the SBFEM region boundary " << mouths.size() << " times";
      throw Error(ErrorKind::Region, msg.str());
    }
    const Mouth m = mouths.front();
    const int a = loop[m.edge];
    const int b = loop[(m.edge + 1) % nl];
    const ChainNode mouth = m.t == 0.0 ? ChainNode{a, -1, 0.0, 0} : ChainNode{a, b, m.t, 0};
    // Chain: mouth, following loop nodes, ..., back to the mouth.
    std::vector<ChainNode> chain{mouth};
    std::vector<int> seg_owner;
    seg_owner.push_back(owner[m.edge]);
    std::size_t k = (m.edge + 1) % nl;
    const std::size_t count = m.t == 0.0 ? nl - 1 : nl;
    for (std::size_t s = 0; s < count; ++s) {
      chain.push_back({loop[k], -1, 0.0, 0});
      seg_owner.push_back(owner[k]);
      k = (k + 1) % nl;
    }
    chain.push_back(mouth);
    auto position = [&](const ChainNode& c) {
      return c.node_b < 0 ? Point(mesh.nodes[c.node_a]) : Point(mesh.nodes[c.node_a] * (1.0 - c.t) + mesh.nodes[c.node_b] * c.t);
    };
    const int face_start = heaviside(crack.signed_distance(0.5 * (position(chain[0]) + position(chain[1]))));
    const int face_end =
        heaviside(crack.signed_distance(0.5 * (position(chain.back()) + position(chain[chain.size() - 2]))));
    if (face_start == face_end) throw Error(ErrorKind::Region, "crack mouth faces are on the same side");
    chain.front().face = face_start;
    chain.back().face = face_end;
    for (std::size_t i = 0; i < chain.size(); ++i) positions.push_back(position(chain[i]));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      elements.push_back({{static_cast<int>(i), static_cast<int>(i + 1)}, model.element_material[seg_owner[i]]});
    }
    region.chain = std::move(chain);
  }

  std::set<int> boundary_nodes(loop.begin(), loop.end());
  std::set<int> interior;
  for (int e : cls.region_elements) {
    for (int v : mesh.quads[e]) {
      if (!boundary_nodes.count(v)) interior.insert(v);
    }
  }
  region.interior_nodes.assign(interior.begin(), interior.end());
  try {
    region.domain = SBFEMDomain(tip, std::move(positions), std::move(elements), model.materials);
  } catch (const Error& err) {
    throw Error(ErrorKind::Region, std::string("SBFEM region is not star-shaped about the tip: ") + err.what());
  }
  return region;
}

Eigen::Vector2d Solution::nodal_displacement(const GlobalModel& model, int node, int side) const {
  if (u_dof[node] < 0) throw Error(ErrorKind::InvalidArgument, "node has no displacement dofs");
  Eigen::Vector2d u = dofs.segment<2>(u_dof[node]);
  if (a_dof[node] >= 0) {
    const int h = side != 0 ? side : heaviside(model.crack->signed_distance(model.mesh.nodes[node]));
    u += h * dofs.segment<2>(a_dof[node]);
  }
  return u;
}

namespace {

struct Row {
  std::vector<std::pair<int, double>> terms;  // (global dof, coefficient)
};

}  // namespace

Solution assemble_and_solve(const GlobalModel& model, const SBFEMRegionSpec& spec) {
  model.validate();
  Solution sol;
  sol.classification = classify_elements(model, spec);
  Classification& cls = sol.classification;
  sol.region = extract_sbfem_region(model, spec, cls);
  const QuadMesh& mesh = model.mesh;
  const std::size_t nn = mesh.nodes.size();

  // Mouth nodes carry both crack faces and are always enriched.
  for (const ChainNode& c : sol.region.chain) {
    if (c.face == 0) continue;
    for (int v : {c.node_a, c.node_b}) {
      if (v >= 0 && !cls.enriched[v]) {
        cls.enriched[v] = 1;
        cls.enriched_nodes.push_back(v);
      }
    }
  }
  std::sort(cls.enriched_nodes.begin(), cls.enriched_nodes.end());

  // Dof numbering.
  std::vector<char> has_u(nn, 0);
  for (std::size_t e = 0; e < mesh.quads.size(); ++e) {
    if (cls.classes[e] == ElementClass::ScaledBoundary) continue;
    for (int v : mesh.quads[e]) has_u[v] = 1;
  }
  for (int v : sol.region.boundary_loop) has_u[v] = 1;
  sol.u_dof.assign(nn, -1);
  sol.a_dof.assign(nn, -1);
  int ndof = 0;
  for (std::size_t v = 0; v < nn; ++v) {
    if (has_u[v]) {
      sol.u_dof[v] = ndof;
      ndof += 2;
    }
  }
  for (int v : cls.enriched_nodes) {
    sol.a_dof[v] = ndof;
    ndof += 2;
  }
  sol.system_size = ndof;

  auto node_h = [&](int v) { return heaviside(model.crack->signed_distance(mesh.nodes[v])); };

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(ndof);

  // Finite elements.
  const double g = 1.0 / std::sqrt(3.0);
  for (std::size_t e = 0; e < mesh.quads.size(); ++e) {
    if (cls.classes[e] == ElementClass::ScaledBoundary) continue;
    const Quad& q = mesh.quads[e];
    const auto x = mesh.corners(e);
    std::vector<int> dofs;
    for (int v : q) {
      dofs.push_back(sol.u_dof[v]);
      dofs.push_back(sol.u_dof[v] + 1);
    }
    std::vector<int> enr;
    for (int a = 0; a < 4; ++a) {
      if (cls.enriched[q[a]]) {
        enr.push_back(a);
        dofs.push_back(sol.a_dof[q[a]]);
        dofs.push_back(sol.a_dof[q[a]] + 1);
      }
    }
    const int nd = static_cast<int>(dofs.size());
    const Eigen::Matrix3d d = constitutive_matrix(model.materials[model.element_material[e]]);
    Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(nd, nd);
    auto add_point = [&](double s, double t, double w, int h) {
      const BilinearValues bv = bilinear(x, s, t);
      Eigen::MatrixXd b(3, nd);
      for (int a = 0; a < 4; ++a) b.block<3, 2>(0, 2 * a) = strain_block(bv.dn_dx, a);
      for (std::size_t k = 0; k < enr.size(); ++k) b.block<3, 2>(0, 8 + 2 * k) = h * strain_block(bv.dn_dx, enr[k]);
      ke.noalias() += b.transpose() * d * b * w;
    };
    if (cls.classes[e] == ElementClass::Split) {
      for (const SplitCell& c : cls.cells[e]) {
        const double area = 0.5 * orientation(c.vertices[0], c.vertices[1], c.vertices[2]);
        static constexpr double bary[3][3] = {{2.0 / 3, 1.0 / 6, 1.0 / 6}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, {1.0 / 6, 1.0 / 6, 2.0 / 3}};
        for (const auto& l : bary) {
          const Point p = l[0] * c.vertices[0] + l[1] * c.vertices[1] + l[2] * c.vertices[2];
          const Eigen::Vector2d st = inverse_bilinear(x, p);
          add_point(st[0], st[1], area / 3.0, c.side);
        }
      }
    } else {
      int h = 0;
      if (!enr.empty()) h = heaviside(model.crack->signed_distance(mesh.centroid(e)));
      for (double s : {-g, g}) {
        for (double t : {-g, g}) add_point(s, t, bilinear(x, s, t).det_j, h);
      }
    }
    for (int i = 0; i < nd; ++i) {
      for (int j = 0; j < nd; ++j) {
        if (ke(i, j) != 0.0) trip.emplace_back(dofs[i], dofs[j], ke(i, j));
      }
    }
  }

  // SBFEM region through the constraint map u_b = T U.
  const ModalSolution modes = solve_modes(sol.region.domain);
  const Eigen::MatrixXd ksb = stiffness(modes);
  std::vector<Row> rows(2 * sol.region.chain.size());
  for (std::size_t k = 0; k < sol.region.chain.size(); ++k) {
    const ChainNode& c = sol.region.chain[k];
    for (int comp = 0; comp < 2; ++comp) {
      Row& r = rows[2 * k + comp];
      auto add_node = [&](int v, double w, int h) {
        r.terms.emplace_back(sol.u_dof[v] + comp, w);
        if (sol.a_dof[v] >= 0 && h != 0) r.terms.emplace_back(sol.a_dof[v] + comp, w * h);
      };
      if (c.face != 0) {
        add_node(c.node_a, c.node_b < 0 ? 1.0 : 1.0 - c.t, c.face);
        if (c.node_b >= 0) add_node(c.node_b, c.t, c.face);
      } else {
        add_node(c.node_a, 1.0, sol.a_dof[c.node_a] >= 0 ? node_h(c.node_a) : 0);
      }
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const double kij = ksb(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (kij == 0.0) continue;
      for (const auto& [di, wi] : rows[i].terms) {
        for (const auto& [dj, wj] : rows[j].terms) trip.emplace_back(di, dj, kij * wi * wj);
      }
    }
  }

  // Loads.
  auto load_node = [&](int v, const Eigen::Vector2d& force, int h) {
    if (sol.u_dof[v] < 0) throw Error(ErrorKind::InvalidArgument, "load applied to a node inside the SBFEM region");
    f.segment<2>(sol.u_dof[v]) += force;
    if (sol.a_dof[v] >= 0) f.segment<2>(sol.a_dof[v]) += h * force;
  };
  for (const NodalForce& nf : model.nodal_forces) {
    load_node(nf.node, nf.force, sol.a_dof[nf.node] >= 0 ? node_h(nf.node) : 0);
  }
  for (const EdgeTraction& tr : model.tractions) {
    const Point& pa = mesh.nodes[tr.node_a];
    const Point& pb = mesh.nodes[tr.node_b];
    const double len = (pb - pa).norm();
    for (double s : {-g, g}) {
      const double na = 0.5 * (1.0 - s);
      const Point p = na * pa + (1.0 - na) * pb;
      int h = 0;
      if (model.crack && (sol.a_dof[tr.node_a] >= 0 || sol.a_dof[tr.node_b] >= 0)) {
        h = heaviside(model.crack->signed_distance(p));
      }
      load_node(tr.node_a, tr.traction * na * 0.5 * len, h);
      load_node(tr.node_b, tr.traction * (1.0 - na) * 0.5 * len, h);
    }
  }

  Eigen::SparseMatrix<double> k(ndof, ndof);
  k.setFromTriplets(trip.begin(), trip.end());
  {
    const Eigen::SparseMatrix<double> kt = k.transpose();
    sol.symmetry_error = (k - kt).norm() / std::max(k.norm(), 1e-300);
  }

  // Dirichlet elimination. A condition on an enriched node holds on both faces.
  std::vector<char> fixed(ndof, 0);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(ndof);
  for (const DirichletCondition& c : model.constraints) {
    if (sol.u_dof[c.node] < 0) throw Error(ErrorKind::InvalidArgument, "constraint on a node inside the SBFEM region");
    fixed[sol.u_dof[c.node] + c.component] = 1;
    u[sol.u_dof[c.node] + c.component] = c.value;
    if (sol.a_dof[c.node] >= 0) fixed[sol.a_dof[c.node] + c.component] = 1;
  }
  std::vector<int> free_index(ndof, -1);
  int nf = 0;
  for (int i = 0; i < ndof; ++i) {
    if (!fixed[i]) free_index[i] = nf++;
  }
  sol.free_size = nf;
  std::vector<Eigen::Triplet<double>> ff;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int i = 0; i < ndof; ++i) {
    if (free_index[i] >= 0) rhs[free_index[i]] = f[i];
  }
  for (int col = 0; col < k.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (free_index[r] < 0) continue;
      if (free_index[c] >= 0) {
        ff.emplace_back(free_index[r], free_index[c], it.value());
      } else {
        rhs[free_index[r]] -= it.value() * u[c];
      }
    }
  }
  Eigen::SparseMatrix<double> kff(nf, nf);
  kff.setFromTriplets(ff.begin(), ff.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(kff);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::UnderConstrained, "factorisation of the reduced system failed");
  const Eigen::VectorXd dd = ldlt.vectorD().cwiseAbs();
  if (nf > 0 && dd.minCoeff() <= 1e-9 * dd.maxCoeff()) {
    throw Error(ErrorKind::UnderConstrained, "reduced stiffness is singular: add constraints against rigid motion");
  }
  const Eigen::VectorXd x = ldlt.solve(rhs);
  const double rn = rhs.norm();
  sol.residual = rn > 0.0 ? (kff * x - rhs).norm() / rn : (kff * x).norm();
  for (int i = 0; i < ndof; ++i) {
    if (free_index[i] >= 0) u[i] = x[free_index[i]];
  }
  sol.dofs = u;

  sol.u_boundary.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double v = 0.0;
    for (const auto& [di, wi] : rows[i].terms) v += wi * u[di];
    sol.u_boundary[static_cast<Eigen::Index>(i)] = v;
  }
  sol.constants = integration_constants(modes, sol.u_boundary);
  sol.modes = modes;
  return sol;
}

Eigen::Vector3d element_stress(const GlobalModel& model, const Solution& sol, std::size_t element, double s, double t) {
  const Classification& cls = sol.classification;
  if (cls.classes.at(element) == ElementClass::ScaledBoundary) {
    throw Error(ErrorKind::InvalidArgument, "element belongs to the SBFEM region");
  }
  const Quad& q = model.mesh.quads[element];
  const auto x = model.mesh.corners(element);
  const BilinearValues bv = bilinear(x, s, t);
  int h = 0;
  Point p = Point::Zero();
  for (int a = 0; a < 4; ++a) p += bv.n[a] * x[a];
  Eigen::Vector3d strain = Eigen::Vector3d::Zero();
  for (int a = 0; a < 4; ++a) {
    Eigen::Vector2d ua = sol.dofs.segment<2>(sol.u_dof[q[a]]);
    if (sol.a_dof[q[a]] >= 0) {
      if (h == 0) h = heaviside(model.crack->signed_distance(p));
      ua += h * sol.dofs.segment<2>(sol.a_dof[q[a]]);
    }
    strain += strain_block(bv.dn_dx, a) * ua;
  }
  return constitutive_matrix(model.materials[model.element_material[element]]) * strain;
}

}  // namespace xsbfem
