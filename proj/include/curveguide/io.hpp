#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveguide/dynamics.hpp"
#include "curveguide/geometry.hpp"
#include "curveguide/potentials.hpp"
#include "curveguide/scattering.hpp"

namespace curveguide::io {

/// CLI exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Locale-independent float formatting at 17 significant digits ("%.17g").
std::string format_double(double x);

/// Header `q1,x,y` (planar) or `q1,x,y,z`, one row per sample.
void write_curve_csv(const std::filesystem::path& path, const geometry::SampledCurve& curve);

/// One record per crossing: q1_a, q1_b and the crossing point.
void write_intersections(const std::filesystem::path& path,
                         const std::vector<geometry::Intersection>& crossings);

void write_validity(const std::filesystem::path& path, const geometry::ValidityReport& report);

/// Header `q1,v`.
void write_potential_csv(const std::filesystem::path& path, const potentials::PotentialGrid& v);

/// Header `q1,v_minus,v_plus,kappa_minus_sq,kappa_plus_sq`.
void write_susy_pair_csv(const std::filesystem::path& path, const potentials::SusyPair& pair);

/// Header `k,Re_R,Im_R,Re_T,Im_T,abs_T_sq,unitarity_residual`; the residual
/// column repeats the per-sweep maximum.
void write_scattering_csv(const std::filesystem::path& path,
                          const scattering::ScatteringResult& result);

/// Header `index,energy`.
void write_spectrum_csv(const std::filesystem::path& path,
                        const scattering::BoundStateSpectrum& spectrum);

/// Header `q1,psi_0,...,psi_{n-1}`.
void write_wavefunctions_csv(const std::filesystem::path& path,
                             const scattering::BoundStateSpectrum& spectrum);

/// Header `q1,density`.
void write_density_csv(const std::filesystem::path& path, const ArrayXd& q1, const ArrayXd& density);

/// Header `t,F`.
void write_fidelity_csv(const std::filesystem::path& path, const ArrayXd& t, const ArrayXd& fidelity);

/// Two-column CSV with custom headers.
void write_columns_csv(const std::filesystem::path& path, const std::string& header_a,
                       const ArrayXd& a, const std::string& header_b, const ArrayXd& b);

/// Row-major binary matrix: ASCII header line
/// `curveguide-matrix rows cols row0_coord col0_coord row_step col_step t\n`
/// followed by rows*cols little-endian doubles, row-major.
void write_matrix_bin(const std::filesystem::path& path, const Eigen::MatrixXd& m, double row0,
                      double row_step, double col0, double col_step, double t);

/// 8-bit binary PPM (P6) heatmap with a fixed white-to-red colormap: value 0
/// maps to white (255,255,255), the matrix maximum to red (255,0,0), with
/// green and blue falling linearly in between.  Row 0 is the top image row.
void write_ppm_heatmap(const std::filesystem::path& path, const Eigen::MatrixXd& values);

/// FNV-1a 64-bit digest of a file, as 16 hex digits.
std::string fnv1a64_file(const std::filesystem::path& path);

}  // namespace curveguide::io
