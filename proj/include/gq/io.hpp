#pragma once

#include <string>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/eval.hpp"
#include "gq/lloydmax.hpp"
#include "gq/types.hpp"
#include "gq/voronoi.hpp"

namespace gq {

/// Codebook JSON: {"scheme", "N", "sigma2", "centroids" [[re, im], ...],
/// "metadata"}. Centroids are listed in spiral-index order and every float
/// carries 17 significant digits, so load(save(cb)) reproduces cb bit for
/// bit.
void save_codebook(const Codebook& cb, const std::string& path);

/// Parses and validates a codebook file. Throws IoError when the file cannot
/// be read and FormatError (naming the offending field) on malformed input.
Codebook load_codebook(const std::string& path);

/// DistortionReport JSON; config entries are echoed under "config" for
/// provenance.
void save_report(const DistortionReport& report, const std::string& path,
                 const Metadata& config = {});

/// One sweep output row; error carries a message when the entry failed and
/// the numeric columns are left blank.
struct SweepRow {
  Scheme scheme = Scheme::HighRateGQ;
  int N = 0;
  Real rate_bits = 0;
  Real mse = 0;
  Real mse_db = 0;
  Real ci_halfwidth = 0;
  std::uint64_t seed = 0;
  Real analytic_d_hr = 0;
  Real analytic_r_hr_bits = 0;
  Real analytic_r_echr_bits = 0;
  Real rd_bound_mse = 0;
  std::string error;
};

struct ProfileRow {
  Scheme scheme = Scheme::HighRateGQ;
  int N = 0;
  int n = 0;
  Real magnitude = 0;
};

// CSV emitters. Each writes '# key=value' provenance lines, then a header
// row, then data; floats carry 17 significant digits.
void write_cells_csv(const std::vector<CellStats>& cells,
                     const std::string& path, const Metadata& config = {});
void write_voronoi_csv(const std::vector<Polygon>& cells,
                       const std::string& path, const Metadata& config = {});
void write_trace_csv(const LloydMaxState& state, const std::string& path,
                     const Metadata& config = {});
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& path, const Metadata& config = {});
void write_profile_csv(const std::vector<ProfileRow>& rows,
                       const std::string& path, const Metadata& config = {});
void write_rd_csv(const std::vector<std::pair<Real, Real>>& points,
                  Real sigma2, const std::string& path,
                  const Metadata& config = {});

namespace detail {
/// Shortest text that still round-trips a double: 17 significant digits.
std::string fp17(Real value);
std::string meta_to_string(const MetaValue& value);
}  // namespace detail

}  // namespace gq
