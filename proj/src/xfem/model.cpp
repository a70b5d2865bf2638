#include "msf/xfem/model.hpp"

#include "msf/core/error.hpp"

#include <cmath>

namespace msf::xfem {

AnalysisMode parse_mode(const std::string& s) {
    if (s == "plane_stress") return AnalysisMode::PlaneStress;
    if (s == "plane_strain") return AnalysisMode::PlaneStrain;
    throw ConfigError("unknown analysis mode '" + s + "' (expected plane_stress or plane_strain)");
}

std::string mode_name(AnalysisMode m) { return m == AnalysisMode::PlaneStress ? "plane_stress" : "plane_strain"; }

CrackLayout parse_layout(const std::string& s) {
    if (s == "edge") return CrackLayout::Edge;
    if (s == "center") return CrackLayout::Center;
    throw ConfigError("unknown crack layout '" + s + "' (expected edge or center)");
}

std::string layout_name(CrackLayout c) { return c == CrackLayout::Edge ? "edge" : "center"; }

void MacroModel::validate() const {
    MSF_REQUIRE(width > 0 && height > 0, "plate dimensions must be positive");
    MSF_REQUIRE(initial_crack > 0 && initial_crack < width, "initial crack must lie in (0, L)");
    MSF_REQUIRE(line_load > 0, "line load must be positive");
    MSF_REQUIRE(thickness > 0, "thickness must be positive");
    MSF_REQUIRE(youngs_modulus > 0, "Young's modulus must be positive");
    MSF_REQUIRE(poisson > -1 && poisson < 0.5, "Poisson ratio must lie in (-1, 0.5)");
    MSF_REQUIRE(load_ratio >= 0 && load_ratio < 1, "load ratio must lie in [0, 1)");
    const double g = youngs_modulus / (2.0 * (1.0 + poisson));
    MSF_REQUIRE(std::abs(shear_modulus - g) <= 0.01 * g, "shear modulus inconsistent with E and nu (beyond 1%)");
}

double MacroModel::kappa() const {
    return mode == AnalysisMode::PlaneStress ? (3.0 - poisson) / (1.0 + poisson) : 3.0 - 4.0 * poisson;
}

double MacroModel::effective_modulus() const {
    return mode == AnalysisMode::PlaneStress ? youngs_mpa() : youngs_mpa() / (1.0 - poisson * poisson);
}

Eigen::Matrix3d MacroModel::elasticity() const {
    const double E = youngs_mpa(), nu = poisson;
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
    if (mode == AnalysisMode::PlaneStress) {
        const double c = E / (1.0 - nu * nu);
        D << c, c * nu, 0, c * nu, c, 0, 0, 0, c * (1.0 - nu) / 2.0;
    } else {
        const double c = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
        D << c * (1.0 - nu), c * nu, 0, c * nu, c * (1.0 - nu), 0, 0, 0, c * (1.0 - 2.0 * nu) / 2.0;
    }
    return D;
}

}  // namespace msf::xfem
