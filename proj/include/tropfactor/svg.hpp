#pragma once

// Static SVG renderings: Newton polygon with lattice points, the normal fan
// as rays from an origin, an overlay of two fans with common rays
// highlighted, and the polar-sampled amoeba of a linear polynomial.
// Fixed 800x800 viewport, lattice autoscaled.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tropfactor/polygon.hpp"
#include "tropfactor/polynomial.hpp"

namespace tropfactor {

namespace detail {

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SvgCanvas {
  std::string body;
  void line(double x1, double y1, double x2, double y2, const std::string& cls) {
    body += "<line class=\"" + cls + "\" x1=\"" + svg_num(x1) + "\" y1=\"" +
            svg_num(y1) + "\" x2=\"" + svg_num(x2) + "\" y2=\"" + svg_num(y2) +
            "\"/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& cls) {
    body += "<circle class=\"" + cls + "\" cx=\"" + svg_num(cx) + "\" cy=\"" +
            svg_num(cy) + "\" r=\"" + svg_num(r) + "\"/>\n";
  }
  std::string finish() const {
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n"
        "<style>\n"
        ".support{fill:#444}.vertex{fill:#c22}.hull{stroke:#c22;stroke-width:2;"
        "fill:none}.ray{stroke:#26c;stroke-width:2}.ray2{stroke:#2a2;"
        "stroke-width:2}.common{stroke:#c22;stroke-width:4}.amoeba{fill:#26c;"
        "fill-opacity:0.35}.axis{stroke:#bbb;stroke-width:1}\n"
        "</style>\n";
    out += body;
    out += "</svg>\n";
    return out;
  }
};

struct LatticeMap {
  double min_i = 0, min_j = 0, scale = 1, x0 = 0, y0 = 0;
  double x(double i) const { return x0 + (i - min_i) * scale; }
  double y(double j) const { return y0 - (j - min_j) * scale; }
};

inline LatticeMap fit_lattice(const std::vector<Exponent>& pts, double left,
                              double width) {
  long long lo_i = pts[0].i, hi_i = pts[0].i, lo_j = pts[0].j, hi_j = pts[0].j;
  for (const Exponent& e : pts) {
    lo_i = std::min(lo_i, e.i);
    hi_i = std::max(hi_i, e.i);
    lo_j = std::min(lo_j, e.j);
    hi_j = std::max(hi_j, e.j);
  }
  const double span = std::max<double>({1.0, static_cast<double>(hi_i - lo_i),
                                        static_cast<double>(hi_j - lo_j)});
  LatticeMap m;
  m.min_i = static_cast<double>(lo_i);
  m.min_j = static_cast<double>(lo_j);
  m.scale = (width - 80.0) / span;
  m.x0 = left + 40.0;
  m.y0 = 760.0 - (800.0 - width) / 2.0;
  return m;
}

inline void draw_fan(SvgCanvas& canvas, const Tropicalization& trop, double cx,
                     double cy, double len, const std::string& cls) {
  for (const Tropism& t : trop.normals) {
    const double norm = std::hypot(static_cast<double>(t.u), static_cast<double>(t.v));
    canvas.line(cx, cy, cx + len * t.u / norm, cy - len * t.v / norm, cls);
  }
}

}  // namespace detail

/// Newton polygon (lattice points + hull) and/or its normal fan.
inline std::string svg_polygon_fan(const SparsePoly& p, bool show_polygon,
                                   bool show_fan) {
  detail::SvgCanvas canvas;
  const NewtonPolygon hull = newton_polygon(p);
  const Tropicalization trop = inner_normals(hull);
  const bool both = show_polygon && show_fan;
  if (show_polygon) {
    const double width = both ? 400.0 : 800.0;
    const auto support = p.support();
    const detail::LatticeMap m = detail::fit_lattice(support, 0.0, width);
    const auto& v = hull.vertices;
    if (v.size() >= 2) {
      const std::size_t edges = v.size() == 2 ? 1 : v.size();
      for (std::size_t a = 0; a < edges; ++a) {
        const Exponent& p1 = v[a];
        const Exponent& p2 = v[(a + 1) % v.size()];
        canvas.line(m.x(static_cast<double>(p1.i)), m.y(static_cast<double>(p1.j)),
                    m.x(static_cast<double>(p2.i)), m.y(static_cast<double>(p2.j)),
                    "hull");
      }
    }
    for (const Exponent& e : support)
      canvas.circle(m.x(static_cast<double>(e.i)), m.y(static_cast<double>(e.j)),
                    4.0, "support");
    for (const Exponent& e : v)
      canvas.circle(m.x(static_cast<double>(e.i)), m.y(static_cast<double>(e.j)),
                    6.0, "vertex");
  }
  if (show_fan) {
    const double cx = both ? 600.0 : 400.0;
    canvas.line(cx - 150.0, 400.0, cx + 150.0, 400.0, "axis");
    canvas.line(cx, 250.0, cx, 550.0, "axis");
    detail::draw_fan(canvas, trop, cx, 400.0, 140.0, "ray");
  }
  return canvas.finish();
}

/// Two normal fans drawn over one origin; tropisms shared by both are
/// re-drawn with the "common" class.
inline std::string svg_fan_overlay(const SparsePoly& f, const SparsePoly& g) {
  detail::SvgCanvas canvas;
  const Tropicalization tf = tropicalization(f);
  const Tropicalization tg = tropicalization(g);
  canvas.line(100.0, 400.0, 700.0, 400.0, "axis");
  canvas.line(400.0, 100.0, 400.0, 700.0, "axis");
  detail::draw_fan(canvas, tf, 400.0, 400.0, 260.0, "ray");
  detail::draw_fan(canvas, tg, 400.0, 400.0, 220.0, "ray2");
  Tropicalization common{tropism_intersection(tf, tg)};
  detail::draw_fan(canvas, common, 400.0, 400.0, 290.0, "common");
  return canvas.finish();
}

struct AmoebaSample {
  double lx = 0.0;
  double ly = 0.0;
};

/// Polar sampling of the amoeba of (1/2)x + (1/5)y - 1: with x = r e^{It},
/// the log image is (ln|r|, ln|(5/2) r e^{It} - 5|).  The radius range stays
/// away from 0 and near-roots are skipped, so no sample is singular.
inline std::vector<AmoebaSample> amoeba_samples(int n_theta = 60, int n_radii = 120,
                                                double r_min = 0.01,
                                                double r_max = 100.0) {
  std::vector<AmoebaSample> out;
  const double log_min = std::log(r_min), log_max = std::log(r_max);
  for (int a = 0; a < n_theta; ++a) {
    const double theta = std::numbers::pi * a / n_theta;
    const Complex dir(std::cos(theta), std::sin(theta));
    for (int sgn : {1, -1}) {
      for (int s = 0; s < n_radii; ++s) {
        const double r =
            std::exp(log_min + (log_max - log_min) * s / (n_radii - 1));
        const Complex x = static_cast<double>(sgn) * r * dir;
        const double mag_y = std::abs(2.5 * x - 5.0);
        if (mag_y < 1e-12) continue;
        out.push_back({std::log(r), std::log(mag_y)});
      }
    }
  }
  return out;
}

inline std::string svg_amoeba(const std::vector<AmoebaSample>& samples) {
  detail::SvgCanvas canvas;
  double lo_x = samples[0].lx, hi_x = lo_x, lo_y = samples[0].ly, hi_y = lo_y;
  for (const AmoebaSample& s : samples) {
    lo_x = std::min(lo_x, s.lx);
    hi_x = std::max(hi_x, s.lx);
    lo_y = std::min(lo_y, s.ly);
    hi_y = std::max(hi_y, s.ly);
  }
  const double sx = 720.0 / std::max(1e-9, hi_x - lo_x);
  const double sy = 720.0 / std::max(1e-9, hi_y - lo_y);
  for (const AmoebaSample& s : samples)
    canvas.circle(40.0 + (s.lx - lo_x) * sx, 760.0 - (s.ly - lo_y) * sy, 2.0,
                  "amoeba");
  return canvas.finish();
}

}  // namespace tropfactor
