#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hrnr/io.hpp"
#include "hrnr/matrix_range.hpp"
#include "hrnr/poly_range.hpp"
#include "hrnr/sylvester.hpp"

namespace {

constexpr int kExitIn = 0;
constexpr int kExitOut = 1;
constexpr int kExitBorder = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNotIsometry = 65;
constexpr int kExitInternal = 70;
constexpr int kExitCantWrite = 73;

using hrnr::Complex;

std::vector<std::string> split_fields(const std::string& raw) {
  std::vector<std::string> out;
  size_t pos = 0;
  for (;;) {
    const size_t comma = raw.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(raw.substr(pos));
      return out;
    }
    out.push_back(raw.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

Complex parse_point(const std::string& raw, const std::string& flag) {
  const auto parts = split_fields(raw);
  if (parts.size() != 2) {
    throw hrnr::ParseError(flag + ": expected RE,IM");
  }
  return Complex(hrnr::parse_double_text(parts[0], flag),
                 hrnr::parse_double_text(parts[1], flag));
}

hrnr::GridWindow parse_window(const std::string& raw) {
  const auto parts = split_fields(raw);
  if (parts.size() != 4) {
    throw hrnr::ParseError("--window: expected X0,X1,Y0,Y1");
  }
  return {hrnr::parse_double_text(parts[0], "--window"),
          hrnr::parse_double_text(parts[1], "--window"),
          hrnr::parse_double_text(parts[2], "--window"),
          hrnr::parse_double_text(parts[3], "--window")};
}

std::pair<int, int> parse_res(const std::string& raw) {
  const auto parts = split_fields(raw);
  if (parts.size() != 2) {
    throw hrnr::ParseError("--res: expected NX,NY");
  }
  const double nx = hrnr::parse_double_text(parts[0], "--res");
  const double ny = hrnr::parse_double_text(parts[1], "--res");
  if (nx != static_cast<int>(nx) || ny != static_cast<int>(ny)) {
    throw hrnr::ParseError("--res: counts must be integers");
  }
  return {static_cast<int>(nx), static_cast<int>(ny)};
}

std::string slurp_input(const std::string& path) {
  try {
    return hrnr::read_file(path);
  } catch (const hrnr::FileError& e) {
    throw hrnr::ParseError(std::string("--input: ") + e.what());
  }
}

hrnr::MatrixPolynomial load_polynomial(const std::string& path) {
  return hrnr::parse_polynomial_document(slurp_input(path));
}

// Accepts a frame whose orthonormality defect is at most 1e-8 as given,
// re-orthonormalizes one with defect in (1e-8, 1e-6], and rejects the rest.
hrnr::Isometry load_isometry(const std::string& path, int expect_n, int expect_k) {
  std::string text;
  try {
    text = hrnr::read_file(path);
  } catch (const hrnr::FileError& e) {
    throw hrnr::ParseError(std::string("--isometry: ") + e.what());
  }
  hrnr::CMatrix q = hrnr::parse_isometry_document(text);
  if (q.rows() != expect_n || q.cols() != expect_k) {
    throw hrnr::ParseError("--isometry: expected a " + std::to_string(expect_n) +
                           "x" + std::to_string(expect_k) + " frame, got " +
                           std::to_string(q.rows()) + "x" + std::to_string(q.cols()));
  }
  hrnr::CMatrix gram = hrnr::adjoint(q) * q;
  for (int i = 0; i < gram.rows(); ++i) gram(i, i) -= Complex(1.0, 0.0);
  const double defect = hrnr::frobenius_norm(gram);
  if (defect <= 1e-8) {
    return hrnr::Isometry(std::move(q));
  }
  if (defect <= 1e-6) {
    return hrnr::Isometry(hrnr::orthonormalize_columns(q));
  }
  throw hrnr::IsometryError("--isometry: orthonormality defect " +
                            hrnr::format_double(defect) + " exceeds 1e-6");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit_artifact(const std::string& path, const std::string& content,
                   const hrnr::RunManifest& manifest) {
  hrnr::write_file(path, content);
  hrnr::write_file(hrnr::manifest_path_for(path), hrnr::manifest_json(manifest));
}

struct MemberArgs {
  std::string input;
  int k = 1;
  std::string point;
  int ntheta = 256;
  double margin = 0.0;
};

int run_member(const MemberArgs& a) {
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const Complex z = parse_point(a.point, "--point");
  hrnr::MemberOptions opts;
  opts.n_theta = a.ntheta;
  opts.margin = a.margin;
  const hrnr::MemberResult r = hrnr::member(l, a.k, z, opts);
  if (r.status == hrnr::Ternary::Out) {
    std::cout << "OUT witness_theta=" << hrnr::format_double(r.witness_theta)
              << "\n";
    return kExitOut;
  }
  std::cout << hrnr::to_string(r.status) << "\n";
  return r.status == hrnr::Ternary::In ? kExitIn : kExitBorder;
}

struct GridArgs {
  std::string input;
  int k = 1;
  std::string window;
  std::string res;
  std::string out_csv;
  std::string out_svg;
};

int run_grid(const GridArgs& a) {
  Timer timer;
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const hrnr::GridWindow w = parse_window(a.window);
  const auto [nx, ny] = parse_res(a.res);
  const hrnr::RegionGrid grid = hrnr::grid_scan(l, a.k, w, nx, ny);
  hrnr::RunManifest manifest;
  manifest.command = "grid";
  manifest.options = {{"input", a.input},
                      {"k", std::to_string(a.k)},
                      {"window", a.window},
                      {"res", a.res},
                      {"out-csv", a.out_csv}};
  if (!a.out_svg.empty()) manifest.options.emplace_back("out-svg", a.out_svg);
  manifest.wall_seconds = timer.seconds();
  emit_artifact(a.out_csv, hrnr::grid_csv(grid), manifest);
  if (!a.out_svg.empty()) {
    emit_artifact(a.out_svg, hrnr::grid_svg(grid), manifest);
  }
  std::cout << "grid " << nx << "x" << ny << " written to " << a.out_csv << "\n";
  return kExitIn;
}

struct MonteArgs {
  std::string input;
  int k = 1;
  int samples = 1;
  std::uint64_t seed = 0;
  std::string window;
  std::string res;
  std::string out_csv;
};

int run_montecarlo(const MonteArgs& a) {
  Timer timer;
  if (a.samples < 1) throw hrnr::ParseError("--samples: must be >= 1");
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const hrnr::GridWindow w = parse_window(a.window);
  const auto [nx, ny] = parse_res(a.res);
  const hrnr::RegionGrid grid =
      hrnr::montecarlo_region(l, a.k, a.samples, w, nx, ny, a.seed);
  hrnr::RunManifest manifest;
  manifest.command = "montecarlo";
  manifest.options = {{"input", a.input},          {"k", std::to_string(a.k)},
                      {"samples", std::to_string(a.samples)},
                      {"seed", std::to_string(a.seed)},
                      {"window", a.window},        {"res", a.res},
                      {"out-csv", a.out_csv}};
  manifest.seed = a.seed;
  manifest.wall_seconds = timer.seconds();
  emit_artifact(a.out_csv, hrnr::grid_csv(grid), manifest);
  std::cout << "montecarlo " << nx << "x" << ny << " (" << a.samples
            << " samples) written to " << a.out_csv << "\n";
  return kExitIn;
}

struct MatrixRangeArgs {
  std::string input;
  int k = 1;
  int ntheta = 256;
  std::string out_csv;
};

int run_matrix_range(const MatrixRangeArgs& a) {
  Timer timer;
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  hrnr::CMatrix mat(1, 1);
  if (l.degree() == 0) {
    mat = l.coeff(0);
  } else if (l.degree() == 1) {
    hrnr::CMatrix lead = l.coeff(1);
    for (int i = 0; i < lead.rows(); ++i) lead(i, i) -= Complex(1.0, 0.0);
    if (hrnr::max_abs(lead) > 1e-12) {
      throw hrnr::ParseError(
          "--input: matrix-range needs m=0 or the pencil I*lambda - A");
    }
    mat = Complex(-1.0, 0.0) * l.coeff(0);
  } else {
    throw hrnr::ParseError(
        "--input: matrix-range needs m=0 or the pencil I*lambda - A");
  }
  const hrnr::ConvexRegion region = hrnr::region_polygon(mat, a.k, a.ntheta);
  hrnr::RunManifest manifest;
  manifest.command = "matrix-range";
  manifest.options = {{"input", a.input},
                      {"k", std::to_string(a.k)},
                      {"ntheta", std::to_string(a.ntheta)},
                      {"out-csv", a.out_csv}};
  manifest.wall_seconds = timer.seconds();
  emit_artifact(a.out_csv, hrnr::polygon_csv(region.vertices), manifest);
  switch (region.status) {
    case hrnr::RegionStatus::Empty:
      std::cout << "EMPTY\n";
      break;
    case hrnr::RegionStatus::Point:
      std::cout << "POINT\n";
      break;
    case hrnr::RegionStatus::Segment:
      std::cout << "SEGMENT\n";
      break;
    case hrnr::RegionStatus::Unbounded:
      std::cout << "UNBOUNDED\n";
      break;
    default:
      std::cout << "POLYGON " << region.vertices.size() << " vertices\n";
      break;
  }
  return kExitIn;
}

struct SylvesterArgs {
  std::string input;
  int k = 1;
  std::string isometry;
  double tol = 1e-8;
};

int run_sylvester(const SylvesterArgs& a) {
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const hrnr::Isometry q = load_isometry(a.isometry, l.n(), a.k);
  const auto entries = hrnr::scalar_entries(l, q);
  try {
    const hrnr::SylvesterRecord rec = hrnr::build_sylvester(entries);
    const int threshold = 2 * l.degree();
    std::cout << "sigma=" << rec.sigma << " tau=" << rec.tau
              << " rank=" << rec.rank << " delta=" << rec.delta << "\n";
    std::cout << "rank " << rec.rank
              << (rec.rank < threshold ? " < " : " not < ") << "2m=" << threshold
              << "\n";
  } catch (const hrnr::DegenerateAllZero&) {
    std::cout << "all entry polynomials are zero: every complex number is a "
                 "member\n";
    return kExitIn;
  }
  const hrnr::CommonRootsResult roots = hrnr::common_roots(l, a.k, q, a.tol);
  if (roots.roots.empty()) {
    std::cout << "no certified common roots\n";
  }
  for (const hrnr::CertifiedRoot& r : roots.roots) {
    std::cout << "root " << hrnr::format_double(r.root.real()) << ","
              << hrnr::format_double(r.root.imag())
              << " entry_residual=" << hrnr::format_double(r.max_entry_residual)
              << " matrix_residual=" << hrnr::format_double(r.matrix_residual)
              << "\n";
  }
  return kExitIn;
}

struct SharpArgs {
  std::string input;
  int k = 1;
  std::string window;
  std::string res;
  int window_len = 2;
  double angle_threshold = 0.6;
  std::string out_csv;
};

int run_sharp(const SharpArgs& a) {
  Timer timer;
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const hrnr::GridWindow w = parse_window(a.window);
  const auto [nx, ny] = parse_res(a.res);
  const hrnr::RegionGrid grid = hrnr::grid_scan(l, a.k, w, nx, ny);
  const hrnr::BoundarySample boundary = hrnr::boundary_trace(grid);
  const auto candidates =
      hrnr::sharp_points_poly(boundary, a.window_len, a.angle_threshold);
  std::cout << "boundary polylines: " << boundary.polylines.size()
            << (boundary.clipped ? " (clipped by window)" : "") << "\n";
  for (const auto& c : candidates) {
    std::cout << "candidate " << hrnr::format_double(c.point.real()) << ","
              << hrnr::format_double(c.point.imag())
              << " turning=" << hrnr::format_double(c.turning_angle) << "\n";
  }
  if (candidates.empty()) std::cout << "no sharp-point candidates\n";
  if (!a.out_csv.empty()) {
    std::string csv = "x,y,turning\n";
    for (const auto& c : candidates) {
      csv += hrnr::format_double(c.point.real());
      csv += ',';
      csv += hrnr::format_double(c.point.imag());
      csv += ',';
      csv += hrnr::format_double(c.turning_angle);
      csv += '\n';
    }
    hrnr::RunManifest manifest;
    manifest.command = "sharp";
    manifest.options = {{"input", a.input},
                        {"k", std::to_string(a.k)},
                        {"window", a.window},
                        {"res", a.res},
                        {"window-len", std::to_string(a.window_len)},
                        {"angle-threshold", hrnr::format_double(a.angle_threshold)},
                        {"out-csv", a.out_csv}};
    manifest.wall_seconds = timer.seconds();
    emit_artifact(a.out_csv, csv, manifest);
  }
  return kExitIn;
}

struct CompanionArgs {
  std::string input;
  int k = 1;
  std::vector<std::string> points;
  std::string out_json;
};

int run_companion(const CompanionArgs& a) {
  Timer timer;
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  std::vector<Complex> pts;
  pts.reserve(a.points.size());
  for (const std::string& raw : a.points) {
    pts.push_back(parse_point(raw, "--point"));
  }
  const hrnr::InclusionReport rep = hrnr::companion_inclusion_check(l, a.k, pts);
  const hrnr::MatrixPolynomial lifted = hrnr::companion(l).to_polynomial();
  std::cout << "companion pencil size " << lifted.n() << "x" << lifted.n() << "\n";
  for (const auto& p : rep.points) {
    std::cout << "point " << hrnr::format_double(p.point.real()) << ","
              << hrnr::format_double(p.point.imag()) << " poly="
              << hrnr::to_string(p.status_poly)
              << " companion=" << hrnr::to_string(p.status_companion) << " "
              << (p.checked ? (p.pass ? "PASS" : "FAIL") : "not constrained")
              << "\n";
  }
  if (rep.zero_checked) {
    std::cout << "origin companion=" << hrnr::to_string(rep.zero_status) << " "
              << (rep.zero_pass ? "PASS" : "FAIL") << "\n";
  } else {
    std::cout << "origin companion=" << hrnr::to_string(rep.zero_status)
              << " (not constrained for a pencil)\n";
  }
  std::cout << (rep.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  if (!a.out_json.empty()) {
    hrnr::RunManifest manifest;
    manifest.command = "companion";
    manifest.options = {{"input", a.input},
                        {"k", std::to_string(a.k)},
                        {"out-json", a.out_json}};
    for (size_t i = 0; i < a.points.size(); ++i) {
      manifest.options.emplace_back("point[" + std::to_string(i) + "]", a.points[i]);
    }
    manifest.wall_seconds = timer.seconds();
    emit_artifact(a.out_json, hrnr::serialize_polynomial_document(lifted), manifest);
  }
  return kExitIn;
}

struct ProbeArgs {
  std::string input;
  int k = 1;
  int samples = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

int run_probe(const ProbeArgs& a) {
  if (a.samples < 1) throw hrnr::ParseError("--samples: must be >= 1");
  const hrnr::MatrixPolynomial l = load_polynomial(a.input);
  const hrnr::ProbeResult res =
      hrnr::nonemptiness_probe(l, a.k, a.samples, a.seed, a.tol);
  if (res.all_of_c_seen) {
    std::cout << "a compression vanished identically: every complex number is "
                 "a member\n";
  }
  for (const hrnr::ProbeHit& h : res.hits) {
    std::cout << "point " << hrnr::format_double(h.point.real()) << ","
              << hrnr::format_double(h.point.imag()) << " sample="
              << h.sample_index
              << " entry_residual=" << hrnr::format_double(h.max_entry_residual)
              << " matrix_residual=" << hrnr::format_double(h.matrix_residual)
              << "\n";
  }
  if (res.hits.empty() && !res.all_of_c_seen) {
    std::cout << "no certified points found in " << res.samples
              << " samples (inconclusive)\n";
  }
  return kExitIn;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher rank numerical ranges of matrix polynomials"};
  app.require_subcommand(1);

  MemberArgs member_args;
  CLI::App* member = app.add_subcommand("member", "Point membership query");
  member->add_option("--input", member_args.input)->required();
  member->add_option("--k", member_args.k)->required();
  member->add_option("--point", member_args.point)->required();
  member->add_option("--ntheta", member_args.ntheta);
  member->add_option("--margin", member_args.margin);

  GridArgs grid_args;
  CLI::App* grid = app.add_subcommand("grid", "Membership raster over a window");
  grid->add_option("--input", grid_args.input)->required();
  grid->add_option("--k", grid_args.k)->required();
  grid->add_option("--window", grid_args.window)->required();
  grid->add_option("--res", grid_args.res)->required();
  grid->add_option("--out-csv", grid_args.out_csv)->required();
  grid->add_option("--out-svg", grid_args.out_svg);

  MonteArgs monte_args;
  CLI::App* monte =
      app.add_subcommand("montecarlo", "Intersection of sampled compression ranges");
  monte->add_option("--input", monte_args.input)->required();
  monte->add_option("--k", monte_args.k)->required();
  monte->add_option("--samples", monte_args.samples)->required();
  monte->add_option("--seed", monte_args.seed);
  monte->add_option("--window", monte_args.window)->required();
  monte->add_option("--res", monte_args.res)->required();
  monte->add_option("--out-csv", monte_args.out_csv)->required();

  MatrixRangeArgs mr_args;
  CLI::App* mr = app.add_subcommand("matrix-range", "Constant-matrix range polygon");
  mr->add_option("--input", mr_args.input)->required();
  mr->add_option("--k", mr_args.k)->required();
  mr->add_option("--ntheta", mr_args.ntheta);
  mr->add_option("--out-csv", mr_args.out_csv)->required();

  SylvesterArgs syl_args;
  CLI::App* syl = app.add_subcommand("sylvester", "Compressed-entry resultant report");
  syl->add_option("--input", syl_args.input)->required();
  syl->add_option("--k", syl_args.k)->required();
  syl->add_option("--isometry", syl_args.isometry)->required();
  syl->add_option("--tol", syl_args.tol);

  SharpArgs sharp_args;
  CLI::App* sharp = app.add_subcommand("sharp", "Boundary corner candidates");
  sharp->add_option("--input", sharp_args.input)->required();
  sharp->add_option("--k", sharp_args.k)->required();
  sharp->add_option("--window", sharp_args.window)->required();
  sharp->add_option("--res", sharp_args.res)->required();
  sharp->add_option("--window-len", sharp_args.window_len);
  sharp->add_option("--angle-threshold", sharp_args.angle_threshold);
  sharp->add_option("--out-csv", sharp_args.out_csv);

  CompanionArgs comp_args;
  CLI::App* comp = app.add_subcommand("companion", "Companion pencil and inclusion check");
  comp->add_option("--input", comp_args.input)->required();
  comp->add_option("--k", comp_args.k)->required();
  comp->add_option("--point", comp_args.points);
  comp->add_option("--out-json", comp_args.out_json);

  ProbeArgs probe_args;
  CLI::App* probe = app.add_subcommand("probe", "Random-compression membership search");
  probe->add_option("--input", probe_args.input)->required();
  probe->add_option("--k", probe_args.k)->required();
  probe->add_option("--samples", probe_args.samples)->required();
  probe->add_option("--seed", probe_args.seed);
  probe->add_option("--tol", probe_args.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (member->parsed()) return run_member(member_args);
    if (grid->parsed()) return run_grid(grid_args);
    if (monte->parsed()) return run_montecarlo(monte_args);
    if (mr->parsed()) return run_matrix_range(mr_args);
    if (syl->parsed()) return run_sylvester(syl_args);
    if (sharp->parsed()) return run_sharp(sharp_args);
    if (comp->parsed()) return run_companion(comp_args);
    if (probe->parsed()) return run_probe(probe_args);
  } catch (const hrnr::IsometryError& e) {
    std::cerr << e.what() << "\n";
    return kExitNotIsometry;
  } catch (const hrnr::FileError& e) {
    std::cerr << e.what() << "\n";
    return kExitCantWrite;
  } catch (const hrnr::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const hrnr::NumericError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
