/**
 * @file md_io.hpp
 * @brief Snapshot and per-cycle record files.
 */
#pragma once

#include "msf/md/atom_system.hpp"
#include "msf/md/loading.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace msf::md {

/// Extended XYZ: species, x, y, z and, when given, per-atom von Mises (GPa).
void write_xyz(std::ostream& out, const AtomSystem& sys, const std::vector<double>& von_mises_gpa = {},
               const std::string& comment = "");
void write_xyz(const std::string& path, const AtomSystem& sys, const std::vector<double>& von_mises_gpa = {},
               const std::string& comment = "");

struct DumpOptions {
    /// LAMMPS types mapped to carbon; everything else is iron.
    std::vector<int> carbon_types{2};
    double lattice_constant = 2.85;
};

/// Reads the first frame of a LAMMPS text dump with at least the columns
/// id, type, x, y, z. Atoms are sorted by id and all marked mobile; the box
/// is periodic where the header says "pp".
AtomSystem read_lammps_dump(const std::string& path, const DumpOptions& options = {});

/// cycle, peak_strain, min_strain, sigma_y_tip_GPa, sigma_y_min_GPa, crack_len_A, tip_x_A, tip_y_A, valid.
/// Lines starting with '#' carry `header_comments`.
void write_cycle_csv(const std::string& path, const std::vector<CycleRecord>& records,
                     const std::vector<std::string>& header_comments = {});
/// Inverse of write_cycle_csv (rasters are not stored). Throws ConfigError.
std::vector<CycleRecord> read_cycle_csv(const std::string& path);

}  // namespace msf::md
