/**
 * @file xfem_io.hpp
 * @brief Plate model files, life curve and crack path CSV, legacy VTK fields.
 */
#pragma once

#include "msf/core/config.hpp"
#include "msf/xfem/fatigue.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace msf::xfem {

/// Reads keys L, H, a0, q, E, nu, G, sigma_c, thickness, mode, load_ratio,
/// crack from `section` ("" for top-level keys). Missing keys keep the
/// defaults of MacroModel.
MacroModel read_macro_model(const KeyValueConfig& config, const std::string& section = "");
/// Keys da, nx, ny, max_steps, boundary_margin, toughness, radius_factor,
/// snapshots.
FatigueOptions read_fatigue_options(const KeyValueConfig& config, const std::string& section,
                                    FatigueOptions defaults = {});

/// step, N, a_mm, dK, K_I, K_II, theta_deg; '#' lines carry `header_comments`.
void write_life_curve_csv(const std::filesystem::path& path, const FatigueHistory& history,
                          const std::vector<std::string>& header_comments = {});
void write_crack_path_csv(const std::filesystem::path& path, const CrackPolyline& crack,
                          const std::vector<std::string>& header_comments = {});

/// Unstructured grid of the mesh quads with nodal displacement (mm) and the
/// element-mean von Mises stress (MPa).
void write_vtk(const std::filesystem::path& path, const EnrichedMesh& em, const Solution& sol,
               const MacroModel& model, const std::string& title);

}  // namespace msf::xfem
