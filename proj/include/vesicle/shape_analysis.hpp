#pragma once

#include <string>
#include <vector>

#include "vesicle/mesh.hpp"
#include "vesicle/vec3.hpp"

namespace vesicle {

/// Geometric summary of a closed shape along its symmetry axis, built from
/// the inertia axis, the scheme B curvature field and binned profiles.
/// Conventions (documented in the README):
///  - the axis is the most distinct principal axis of the area-weighted
///    second-moment tensor;
///  - h_groups are area-weighted mean curvature averages over near-axis
///    vertices (cylindrical radius < 0.45 max radius), grouped in axial
///    order; sign changes across groups detect invaginations;
///  - cavity_volume is the volume of the axial revolution envelope minus
///    the enclosed volume, which is positive for cup-like shapes;
///  - radius_maxima counts local maxima of the outer radius profile, two
///    of which indicate a dumbbell.
struct AxialProfile {
    Vec3 axis;
    double span = 0.0;
    double max_radius = 0.0;
    std::vector<double> group_z;
    std::vector<double> group_h;
    int h_sign_changes = 0;
    double pole_h_low = 0.0;
    double pole_h_high = 0.0;
    int radius_maxima = 0;
    double enclosed_volume = 0.0;
    double envelope_volume = 0.0;
    double cavity_volume = 0.0;
};

AxialProfile axial_profile(const TriMesh& mesh);

enum class ShapeClass { Sphere, Prolate, Dumbbell, Biconcave, Stomatocyte, Unknown };

ShapeClass classify_shape(const AxialProfile& profile);
const char* to_string(ShapeClass c);

}  // namespace vesicle
