#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "burgers/es.hpp"
#include "burgers/pod.hpp"
#include "burgers/rom.hpp"
#include "burgers/types.hpp"

namespace burgers::csv {

// All writers format doubles with 17 significant digits so files round-trip
// losslessly through the loaders.

/// One row per (t, x): header `t,x,w,T` (or the given pair of field names).
void write_fields(const std::filesystem::path& path, const SnapshotSet& set,
                  const VectorXd& nodes, const std::string& name_w = "w",
                  const std::string& name_T = "T");

/// Loads a `t,x,<a>,<b>` file written by write_fields; recomputes the means.
SnapshotSet load_fields(const std::filesystem::path& path);

/// Header `i,lambda`.
void write_eigenvalues(const std::filesystem::path& path,
                       const pod::PodBasis& basis);

/// Header `x,phi_1..phi_r`.
void write_modes(const std::filesystem::path& path, const pod::PodBasis& basis,
                 const VectorXd& nodes);

/// Header `t,q_1..q_r`.
void write_coefficients(const std::filesystem::path& path,
                        const rom::RomTrajectory& traj);

/// Header `k,mu_e,mu_nl,Q`; mu_nl stays blank for single-channel histories.
void write_history(const std::filesystem::path& path,
                   const std::vector<es::HistoryRow>& history);

std::vector<es::HistoryRow> load_history(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace burgers::csv
