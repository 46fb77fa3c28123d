#pragma once

#include <cstdint>
#include <stdexcept>

namespace hypdet {

// Every tolerance and sample count the pipelines consult, in one place, so a
// run is reproducible from (input, seed, config) alone.
struct Config {
  double real_tol = 1e-7;       // allowed normalized imaginary part of a root
  double rank_tol = 1e-8;       // singular value cutoff, relative
  double eig_sep = 1e-6;        // distance from 1 separating the non-unit block
  double sos_tol = 1e-6;        // accepted certificate residual
  double boundary_tol = 1e-8;   // min/max ratio on the torus grid treated as a zero
  double pair_tol = 1e-8;       // Gram mismatch allowed when extending pairs
  double extend_tol = 1e-8;     // post-check tolerance for the extended unitary
  double psd_floor = 1e-10;     // magnitude of negative eigenvalue still accepted as PSD
  int n_samples = 200;
  int sos_max_iters = 5000;
  int grid_size = 11;           // residual grid points per torus axis
  double t_contraction = 0.995; // radial pullback when the torus minimum is small
  int variety_count = 40;       // zero-set samples per extraction
  std::uint64_t seed = 0;
};

inline void validate(const Config& c) {
  bool ok = c.real_tol > 0 && c.rank_tol > 0 && c.eig_sep > 0 && c.sos_tol > 0 &&
            c.boundary_tol > 0 && c.pair_tol > 0 && c.extend_tol > 0 && c.psd_floor > 0 &&
            c.n_samples > 0 && c.sos_max_iters > 0 && c.grid_size > 1 &&
            c.t_contraction > 0 && c.t_contraction <= 1 && c.variety_count > 0;
  if (!ok) throw std::invalid_argument("config: all tolerances and counts must be positive");
}

}  // namespace hypdet
