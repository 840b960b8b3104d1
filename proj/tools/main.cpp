// Command-line front end: analyze a pair of polynomial files through the
// staged pipeline, generate seeded instances, and emit SVG plots.
//
// Exit codes for analyze: 0 = factor likely, 1 = no factor (any negative
// status), 2 = input error.  Other commands use 0 / 2.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropfactor/pipeline.hpp"
#include "tropfactor/serialize.hpp"
#include "tropfactor/svg.hpp"

namespace tf = tropfactor;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

tf::SparsePoly load_poly(const std::string& path, double drop_tol) {
  const std::string text = read_file(path);
  try {
    return tf::parse_poly(text, drop_tol);
  } catch (const tf::ParseError& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
}

std::string complex_str(tf::Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string text_report(const tf::Certificate& cert) {
  std::ostringstream out;
  out << "status: " << tf::to_string(cert.status) << "\n";
  if (!cert.note.empty()) out << "note: " << cert.note << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "timings: stage1 %.3f ms, stage2 %.3f ms, stage3 %.3f ms\n",
                cert.timings.stage1_ms, cert.timings.stage2_ms,
                cert.timings.stage3_ms);
  out << buf;
  out << "stage 1: " << cert.tropisms.size() << " tropism(s)\n";
  for (const tf::Tropism& t : cert.tropisms)
    out << "  (" << t.u << ", " << t.v << ")\n";
  out << "stage 2: initial roots per tropism\n";
  for (const tf::TropismRoots& tr : cert.roots) {
    out << "  (" << tr.tropism.u << ", " << tr.tropism.v << "):";
    if (tr.roots.empty()) out << " none";
    out << "\n";
    for (const tf::InitialRoot& r : tr.roots) {
      std::snprintf(buf, sizeof(buf), " (residuals %.2e, %.2e)\n", r.residual_f,
                    r.residual_g);
      out << "    z = " << complex_str(r.z) << buf;
    }
  }
  out << "stage 3: " << cert.germs.size() << " germ(s)\n";
  for (const tf::CertifiedGerm& cg : cert.germs) {
    out << "  (" << cg.germ.tropism.u << ", " << cg.germ.tropism.v
        << "): X = t^" << cg.germ.d << ", Y = c0 + c1*t^" << to_string(cg.germ.w)
        << (cg.germ.w.is_integer() ? "" : " (non-integer w)")
        << ", c0 = " << complex_str(cg.germ.c0)
        << ", c1 = " << complex_str(cg.germ.c1);
    std::snprintf(buf, sizeof(buf), ", slopes (%.3f, %.3f)\n", cg.slope_f,
                  cg.slope_g);
    out << buf;
  }
  for (const tf::StageThreeReject& r : cert.rejects) {
    out << "  rejected (" << r.tropism.u << ", " << r.tropism.v
        << ") at z = " << complex_str(r.c0) << ": " << r.reason;
    if (r.have_data)
      out << "  [k=" << r.data.k << " l=" << r.data.l << " a1=" << r.data.a1
          << " b1=" << r.data.b1 << "]";
    out << "\n";
  }
  return out.str();
}

struct CommonOpts {
  tf::Config cfg;
  std::string format = "text";
  std::string out;
};

void add_config_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--tolerance-rank", opts.cfg.rank_tolerance,
                  "relative SVD rank tolerance");
  cmd->add_option("--tolerance-root", opts.cfg.root_tolerance,
                  "relative residual bound for initial roots");
  cmd->add_option("--drop-tol", opts.cfg.drop_tolerance,
                  "relative coefficient drop tolerance");
  cmd->add_option("--seed", opts.cfg.seed, "seed for all random choices");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "staged preprocessing for common factors of two bivariate polynomials "
      "with approximate coefficients"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* analyze = app.add_subcommand(
      "analyze", "decide whether two polynomial files can share a factor");
  std::string file_f, file_g;
  analyze->add_option("f", file_f, "file with the first polynomial")->required();
  analyze->add_option("g", file_g, "file with the second polynomial")->required();
  add_config_flags(analyze, opts);
  analyze->add_option("--format", opts.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  analyze->add_option("--out", opts.out, "also write the report to this path");

  auto* gen = app.add_subcommand("gen", "generate a seeded instance pair");
  int deg_factor = 5, deg_cofactor = 10;
  bool planted = true;
  double sparsity = 1.0;
  std::string out_prefix;
  gen->add_option("--deg-factor", deg_factor, "degree of the planted factor");
  gen->add_option("--deg-cofactor", deg_cofactor, "degree of the cofactors");
  gen->add_flag("--planted,!--unplanted", planted,
                "plant a common factor (default) or draw f, g independently");
  gen->add_option("--sparsity", sparsity, "support keep probability in (0,1]");
  gen->add_option("--seed", opts.cfg.seed, "instance seed");
  gen->add_option("--out", out_prefix, "output prefix")->required();

  auto* plot = app.add_subcommand("plot", "render a polygon and/or normal fan");
  std::string plot_file, overlay_file, what = "both";
  plot->add_option("f", plot_file, "polynomial file")->required();
  plot->add_option("--what", what, "polygon, fan or both")
      ->check(CLI::IsMember({"polygon", "fan", "both"}));
  plot->add_option("--overlay", overlay_file,
                   "second polynomial: draw both fans, highlight common rays");
  plot->add_option("--drop-tol", opts.cfg.drop_tolerance, "parse drop tolerance");
  plot->add_option("--out", opts.out, "output SVG path")->required();

  auto* demo = app.add_subcommand(
      "demo-amoeba", "polar sampling of the amoeba of (1/2)x + (1/5)y - 1");
  int n_theta = 60, n_radii = 120;
  demo->add_option("--thetas", n_theta, "number of angular samples");
  demo->add_option("--radii", n_radii, "number of radial samples per branch");
  demo->add_option("--out", opts.out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze)) {
      const tf::SparsePoly f = load_poly(file_f, opts.cfg.drop_tolerance);
      const tf::SparsePoly g = load_poly(file_g, opts.cfg.drop_tolerance);
      const tf::Certificate cert = tf::preprocess(f, g, opts.cfg);
      const std::string report = opts.format == "structured"
                                     ? tf::certificate_to_json(cert).dump(2) + "\n"
                                     : text_report(cert);
      std::cout << report;
      if (!opts.out.empty()) write_file(opts.out, report);
      return cert.status == tf::Status::FactorLikely ? 0 : 1;
    }
    if (app.got_subcommand(gen)) {
      const tf::Instance inst =
          tf::gen_instance(deg_factor, deg_cofactor, planted, sparsity, opts.cfg.seed);
      write_file(out_prefix + "_f.txt", tf::format_poly(inst.f) + "\n");
      write_file(out_prefix + "_g.txt", tf::format_poly(inst.g) + "\n");
      tf::Json truth;
      truth["planted"] = inst.truth.planted;
      truth["factor"] = inst.truth.planted ? tf::poly_to_json(inst.truth.factor)
                                           : tf::Json(nullptr);
      write_file(out_prefix + "_truth.json", truth.dump(2) + "\n");
      std::cout << "wrote " << out_prefix << "_{f,g,truth}\n";
      return 0;
    }
    if (app.got_subcommand(plot)) {
      const tf::SparsePoly f = load_poly(plot_file, opts.cfg.drop_tolerance);
      std::string svg;
      if (!overlay_file.empty()) {
        const tf::SparsePoly g = load_poly(overlay_file, opts.cfg.drop_tolerance);
        svg = tf::svg_fan_overlay(f, g);
      } else {
        svg = tf::svg_polygon_fan(f, what != "fan", what != "polygon");
      }
      write_file(opts.out, svg);
      return 0;
    }
    if (app.got_subcommand(demo)) {
      const auto samples = tf::amoeba_samples(n_theta, n_radii);
      write_file(opts.out, tf::svg_amoeba(samples));
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
