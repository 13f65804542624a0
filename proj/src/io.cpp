#include "curveguide/io.hpp"

#include <cstdio>
#include <fstream>

namespace curveguide::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  return f;
}

void finish(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_curve_csv(const std::filesystem::path& path, const geometry::SampledCurve& curve) {
  auto f = open_out(path);
  f << (curve.is_planar ? "q1,x,y\n" : "q1,x,y,z\n");
  for (Index i = 0; i < curve.size(); ++i) {
    f << format_double(curve.arc_q1[i]) << ',' << format_double(curve.points(i, 0)) << ','
      << format_double(curve.points(i, 1));
    if (!curve.is_planar) f << ',' << format_double(curve.points(i, 2));
    f << '\n';
  }
  finish(f, path);
}

void write_intersections(const std::filesystem::path& path,
                         const std::vector<geometry::Intersection>& crossings) {
  auto f = open_out(path);
  f << "# multiple points: " << crossings.size() << "\n";
  f << "# q1_a q1_b x y" << "\n";
  for (const auto& c : crossings) {
    f << format_double(c.q1_a) << ' ' << format_double(c.q1_b) << ' ' << format_double(c.point.x())
      << ' ' << format_double(c.point.y());
    if (c.degenerate) f << " degenerate";
    f << '\n';
  }
  finish(f, path);
}

void write_validity(const std::filesystem::path& path, const geometry::ValidityReport& report) {
  auto f = open_out(path);
  const char* verdict = report.verdict == geometry::Verdict::Pass   ? "pass"
                        : report.verdict == geometry::Verdict::Warn ? "warn"
                                                                    : "fail";
  f << "verdict " << verdict << '\n';
  f << "max_kappa_sigma " << format_double(report.max_k_sigma) << '\n';
  f << "max_kprime_ratio " << format_double(report.max_kprime_ratio) << '\n';
  f << "max_kpp_ratio " << format_double(report.max_kpp_ratio) << '\n';
  if (report.evaluated_domain)
    f << "evaluated_domain " << format_double(report.evaluated_domain->first) << ' '
      << format_double(report.evaluated_domain->second) << '\n';
  else
    f << "evaluated_domain empty\n";
  finish(f, path);
}

void write_potential_csv(const std::filesystem::path& path, const potentials::PotentialGrid& v) {
  auto f = open_out(path);
  f << "q1,v\n";
  for (Index i = 0; i < v.grid.n; ++i)
    f << format_double(v.grid.point(i)) << ',' << format_double(v.v[i]) << '\n';
  finish(f, path);
}

void write_susy_pair_csv(const std::filesystem::path& path, const potentials::SusyPair& pair) {
  auto f = open_out(path);
  f << "q1,v_minus,v_plus,kappa_minus_sq,kappa_plus_sq\n";
  const auto& g = pair.v_minus.grid;
  for (Index i = 0; i < g.n; ++i)
    f << format_double(g.point(i)) << ',' << format_double(pair.v_minus.v[i]) << ','
      << format_double(pair.v_plus.v[i]) << ',' << format_double(pair.kappa_minus_sq[i]) << ','
      << format_double(pair.kappa_plus_sq[i]) << '\n';
  finish(f, path);
}

void write_scattering_csv(const std::filesystem::path& path,
                          const scattering::ScatteringResult& result) {
  auto f = open_out(path);
  f << "k,Re_R,Im_R,Re_T,Im_T,abs_T_sq,unitarity_residual\n";
  for (Index i = 0; i < result.k.size(); ++i)
    f << format_double(result.k[i]) << ',' << format_double(result.R[i].real()) << ','
      << format_double(result.R[i].imag()) << ',' << format_double(result.T[i].real()) << ','
      << format_double(result.T[i].imag()) << ',' << format_double(std::norm(result.T[i])) << ','
      << format_double(result.unitarity_residual) << '\n';
  finish(f, path);
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const scattering::BoundStateSpectrum& spectrum) {
  auto f = open_out(path);
  f << "index,energy\n";
  for (Index i = 0; i < spectrum.count(); ++i)
    f << i << ',' << format_double(spectrum.energies[i]) << '\n';
  finish(f, path);
}

void write_wavefunctions_csv(const std::filesystem::path& path,
                             const scattering::BoundStateSpectrum& spectrum) {
  auto f = open_out(path);
  f << "q1";
  for (Index s = 0; s < spectrum.count(); ++s) f << ",psi_" << s;
  f << '\n';
  for (Index i = 0; i < spectrum.grid.n; ++i) {
    f << format_double(spectrum.grid.point(i));
    for (Index s = 0; s < spectrum.count(); ++s) f << ',' << format_double(spectrum.wavefunctions(i, s));
    f << '\n';
  }
  finish(f, path);
}

void write_density_csv(const std::filesystem::path& path, const ArrayXd& q1, const ArrayXd& density) {
  write_columns_csv(path, "q1", q1, "density", density);
}

void write_fidelity_csv(const std::filesystem::path& path, const ArrayXd& t, const ArrayXd& fidelity) {
  write_columns_csv(path, "t", t, "F", fidelity);
}

void write_columns_csv(const std::filesystem::path& path, const std::string& header_a,
                       const ArrayXd& a, const std::string& header_b, const ArrayXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("write_columns_csv: column size mismatch");
  auto f = open_out(path);
  f << header_a << ',' << header_b << '\n';
  for (Index i = 0; i < a.size(); ++i) f << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
  finish(f, path);
}

void write_matrix_bin(const std::filesystem::path& path, const Eigen::MatrixXd& m, double row0,
                      double row_step, double col0, double col_step, double t) {
  auto f = open_out(path, true);
  f << "curveguide-matrix " << m.rows() << ' ' << m.cols() << ' ' << format_double(row0) << ' '
    << format_double(col0) << ' ' << format_double(row_step) << ' ' << format_double(col_step) << ' '
    << format_double(t) << '\n';
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      f.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
  finish(f, path);
}

void write_ppm_heatmap(const std::filesystem::path& path, const Eigen::MatrixXd& values) {
  const double vmax = std::max(values.maxCoeff(), 1e-300);
  auto f = open_out(path, true);
  f << "P6\n" << values.cols() << ' ' << values.rows() << "\n255\n";
  for (Index r = 0; r < values.rows(); ++r)
    for (Index c = 0; c < values.cols(); ++c) {
      const double u = std::clamp(values(r, c) / vmax, 0.0, 1.0);
      const unsigned char fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - u)));
      const unsigned char rgb[3] = {255, fade, fade};
      f.write(reinterpret_cast<const char*>(rgb), 3);
    }
  finish(f, path);
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for digest: " + path.string());
  uint64_t hash = 1469598103934665603ull;
  char buf[1 << 16];
  while (f) {
    f.read(buf, sizeof(buf));
    const std::streamsize got = f.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return out;
}

}  // namespace curveguide::io
