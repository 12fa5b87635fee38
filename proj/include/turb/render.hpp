#pragma once

#include <turb/polyhedron.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

namespace turb {

struct Rendering {
  std::size_t dimension = 0;
  std::string format;  // "svg" or "obj"
  std::string text;
};

namespace detail {

using Point = std::vector<double>;

struct AffineFrame {
  Point origin;
  std::vector<Point> axes;  // orthonormal

  Point project(const Point& x) const {
    Point y;
    for (auto& a : axes) {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - origin[i]) * a[i];
      y.push_back(s);
    }
    return y;
  }
};

inline Point to_double(const Vec& v) {
  Point p;
  for (auto& q : v) p.push_back(q.convert_to<double>());
  return p;
}

// Gram-Schmidt over vertex differences then rays, in lexicographic order.
inline AffineFrame affine_frame(const Presentation& p) {
  AffineFrame f;
  if (p.vertices.empty()) return f;
  const Vec& o = *p.vertices.begin();
  f.origin = to_double(o);
  std::vector<Vec> dirs;
  for (auto& v : p.vertices) {
    Vec d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i] - o[i];
    dirs.push_back(d);
  }
  for (auto& r : p.rays) dirs.push_back(r);
  std::sort(dirs.begin(), dirs.end());
  // exact rank decides the dimension; doubles only place the picture
  Matrix m(dirs.begin(), dirs.end());
  std::size_t dim = m.empty() ? 0 : linalg::rank(m);
  for (auto& d : dirs) {
    if (f.axes.size() == dim) break;
    Point x = to_double(d);
    for (auto& a : f.axes) {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * a[i];
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= s * a[i];
    }
    double n = 0;
    for (auto c : x) n += c * c;
    n = std::sqrt(n);
    if (n < 1e-9) continue;
    for (auto& c : x) c /= n;
    f.axes.push_back(std::move(x));
  }
  return f;
}

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline std::vector<Point> convex_hull_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return std::abs(a[0] - b[0]) < 1e-9 && std::abs(a[1] - b[1]) < 1e-9; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 1e-12) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline std::string fmt(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << (std::abs(x) < 5e-4 ? 0.0 : x);
  return s.str();
}

inline std::string vec_label(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

}  // namespace detail

// Projects F1 and its cells to the affine span of F1. Rays are drawn with length `ray_length`.
inline Rendering render_projection(const Chart& c, const Presentation& p, const std::vector<Bundle>& cells, double ray_length = 1.5) {
  using detail::Point;
  auto frame = detail::affine_frame(p);
  Rendering out;
  out.dimension = frame.axes.size();
  if (out.dimension > 3) fail(ErrorCode::DimensionTooHigh, "F1 has dimension " + std::to_string(out.dimension) + "; at most 3 can be drawn");

  auto pad = [&](Point x) {
    x.resize(std::max<std::size_t>(out.dimension, 2), 0.0);
    return x;
  };
  auto place = [&](const Vec& v) { return pad(frame.project(detail::to_double(v))); };
  auto place_dir = [&](const Vec& r) {
    Point x = detail::to_double(r);
    double n = 0;
    for (auto q : x) n += q * q;
    n = std::sqrt(n);
    Point y;
    for (auto& a : frame.axes) {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * a[i];
      y.push_back(n > 0 ? s / n : 0);
    }
    return pad(y);
  };

  if (out.dimension == 3) {
    out.format = "obj";
    std::ostringstream s;
    s << "# " << c.name() << " F1 projected to its affine span\n";
    std::map<Vec, std::size_t> index;
    std::vector<Point> pts;
    auto add = [&](const Vec& key, const Point& x) {
      auto [it, fresh] = index.emplace(key, pts.size() + 1);
      if (fresh) pts.push_back(x);
      return it->second;
    };
    for (auto& v : p.vertices) add(v, place(v));
    for (auto& r : p.rays) s << "# ray " << detail::vec_label(r) << "\n";
    std::vector<std::string> faces;
    std::size_t cell_id = 0;
    for (auto& b : cells) {
      std::vector<std::size_t> ids;
      for (auto& t : b.routes) ids.push_back(add(indicator_vec(c, t), place(indicator_vec(c, t))));
      for (auto& t : b.bands) {
        Point d = place_dir(indicator_vec(c, t));
        for (auto& route : b.routes) {
          Vec key = indicator_vec(c, route);
          Vec ind = indicator_vec(c, t);
          key.insert(key.end(), ind.begin(), ind.end());  // distinct key for the clipped point
          Point base = place(indicator_vec(c, route));
          for (std::size_t i = 0; i < 3; ++i) base[i] += ray_length * d[i];
          ids.push_back(add(key, base));
        }
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      faces.push_back("g cell" + std::to_string(cell_id++));
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
          for (std::size_t k = j + 1; k < ids.size(); ++k)
            faces.push_back("f " + std::to_string(ids[i]) + " " + std::to_string(ids[j]) + " " + std::to_string(ids[k]));
    }
    for (auto& x : pts) s << "v " << detail::fmt(x[0]) << " " << detail::fmt(x[1]) << " " << detail::fmt(x[2]) << "\n";
    for (auto& f : faces) s << f << "\n";
    out.text = s.str();
    return out;
  }

  out.format = "svg";
  std::vector<std::pair<std::vector<Point>, bool>> polys;  // (outline, is_wall)
  std::vector<Point> all;
  for (auto& b : cells) {
    std::vector<Point> pts;
    for (auto& t : b.routes) pts.push_back(place(indicator_vec(c, t)));
    std::size_t base_count = pts.size();
    for (auto& t : b.bands) {
      Point d = place_dir(indicator_vec(c, t));
      for (std::size_t i = 0; i < base_count; ++i) pts.push_back({pts[i][0] + ray_length * d[0], pts[i][1] + ray_length * d[1]});
    }
    auto hull = detail::convex_hull_2d(pts);
    double area = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      auto& a = hull[i];
      auto& z = hull[(i + 1) % hull.size()];
      area += a[0] * z[1] - z[0] * a[1];
    }
    polys.push_back({hull, std::abs(area) < 1e-9});
    all.insert(all.end(), hull.begin(), hull.end());
  }
  std::vector<std::pair<Point, Point>> arrows;
  for (auto& v : p.vertices)
    for (auto& r : p.rays) {
      Point a = place(v), d = place_dir(r);
      Point z{a[0] + ray_length * d[0], a[1] + ray_length * d[1]};
      arrows.push_back({a, z});
      all.push_back(z);
    }
  for (auto& v : p.vertices) all.push_back(place(v));
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  if (!all.empty()) {
    minx = maxx = all[0][0];
    miny = maxy = all[0][1];
    for (auto& x : all) {
      minx = std::min(minx, x[0]);
      maxx = std::max(maxx, x[0]);
      miny = std::min(miny, x[1]);
      maxy = std::max(maxy, x[1]);
    }
  }
  const double scale = 100, margin = 40;
  double w = (maxx - minx) * scale + 2 * margin, h = (maxy - miny) * scale + 2 * margin;
  auto X = [&](const Point& x) { return detail::fmt((x[0] - minx) * scale + margin); };
  auto Y = [&](const Point& x) { return detail::fmt((maxy - x[1]) * scale + margin); };  // y up

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::fmt(w) << "\" height=\"" << detail::fmt(h)
    << "\">\n";
  s << "<title>" << c.name() << "</title>\n";
  s << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\">"
       "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n";
  std::size_t id = 0;
  for (auto& [hull, wall] : polys) {
    std::string cls = "cell" + std::to_string(id++);
    if (wall || hull.size() < 3) {
      if (hull.size() >= 2)
        s << "<line id=\"" << cls << "\" x1=\"" << X(hull.front()) << "\" y1=\"" << Y(hull.front()) << "\" x2=\"" << X(hull.back())
          << "\" y2=\"" << Y(hull.back()) << "\" stroke=\"black\" stroke-dasharray=\"4,3\"/>\n";
      continue;
    }
    s << "<polygon id=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) s << (i ? " " : "") << X(hull[i]) << "," << Y(hull[i]);
    s << "\" fill=\"#cfe3f7\" fill-opacity=\"0.6\" stroke=\"black\"/>\n";
  }
  for (auto& [a, z] : arrows)
    s << "<line x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(z) << "\" y2=\"" << Y(z)
      << "\" stroke=\"black\" marker-end=\"url(#head)\"/>\n";
  for (auto& v : p.vertices) {
    Point x = place(v);
    s << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(x) << "\" r=\"3\"/>\n";
    s << "<text x=\"" << X(x) << "\" y=\"" << Y(x) << "\" font-size=\"10\" dx=\"5\" dy=\"-5\">" << detail::vec_label(v) << "</text>\n";
  }
  s << "</svg>\n";
  out.text = s.str();
  return out;
}

}  // namespace turb
