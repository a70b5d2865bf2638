/**
 * @file model.hpp
 * @brief Macroscopic plate: geometry, elastic constants and cyclic load.
 *
 * Lengths in mm, moduli in GPa, stresses in MPa, line load in N/mm. The
 * remote stress on the loaded edges is the line load over the thickness.
 */
#pragma once

#include <Eigen/Dense>

#include <string>

namespace msf::xfem {

enum class AnalysisMode { PlaneStress, PlaneStrain };
enum class CrackLayout { Edge, Center };

AnalysisMode parse_mode(const std::string& s);
std::string mode_name(AnalysisMode m);
CrackLayout parse_layout(const std::string& s);
std::string layout_name(CrackLayout c);

struct MacroModel {
    double width = 60.0;           ///< L, along x
    double height = 120.0;         ///< H, along y
    double initial_crack = 10.0;   ///< a0; full length for a center crack
    double line_load = 50.0;       ///< q, N/mm
    double youngs_modulus = 206.0; ///< GPa
    double poisson = 0.3;
    double shear_modulus = 80.0;   ///< GPa
    double yield_stress = 235.0;   ///< MPa
    double thickness = 1.0;        ///< mm
    AnalysisMode mode = AnalysisMode::PlaneStress;
    double load_ratio = 0.0;
    CrackLayout layout = CrackLayout::Edge;

    /// Throws InvalidArgument on non-physical values, a0 >= L, or a shear
    /// modulus more than 1% away from E / 2(1 + nu).
    void validate() const;

    double remote_stress() const { return line_load / thickness; }  ///< MPa
    double youngs_mpa() const { return youngs_modulus * 1e3; }
    double shear_mpa() const { return youngs_mpa() / (2.0 * (1.0 + poisson)); }
    /// Kolosov constant.
    double kappa() const;
    /// E for plane stress, E / (1 - nu^2) for plane strain (MPa).
    double effective_modulus() const;
    /// Stress-strain matrix for (xx, yy, engineering xy), MPa.
    Eigen::Matrix3d elasticity() const;
};

}  // namespace msf::xfem
