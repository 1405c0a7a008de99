#include "vesicle/shape_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesicle/geometry.hpp"
#include "vesicle/schemes.hpp"

namespace vesicle {

namespace {

// Jacobi eigen-decomposition of a symmetric 3x3 matrix; returns eigenvalues
// ascending with matching eigenvectors as columns.
void eigen_sym3(double a[3][3], double eval[3], Vec3 evec[3]) {
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-14 * (std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]) + 1e-300)) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int x, int y) { return a[x][x] < a[y][y]; });
    for (int r = 0; r < 3; ++r) {
        eval[r] = a[order[r]][order[r]];
        evec[r] = {v[0][order[r]], v[1][order[r]], v[2][order[r]]};
    }
}

int sign_changes(const std::vector<double>& values, double dead_band) {
    int changes = 0;
    int prev = 0;
    for (double v : values) {
        const int s = v > dead_band ? 1 : (v < -dead_band ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

AxialProfile axial_profile(const TriMesh& mesh) {
    AxialProfile prof;
    const VertexField field = scheme_b_field(mesh);
    const int nv = mesh.num_vertices();

    Vec3 centroid{};
    double total_w = 0.0;
    for (int i = 0; i < nv; ++i) {
        centroid += field.A[i] * mesh.vertices[i];
        total_w += field.A[i];
    }
    centroid /= total_w;

    double m[3][3] = {};
    for (int i = 0; i < nv; ++i) {
        const Vec3 d = mesh.vertices[i] - centroid;
        const double w = field.A[i];
        const double dc[3] = {d.x, d.y, d.z};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += w * dc[r] * dc[c];
        }
    }
    double eval[3];
    Vec3 evec[3];
    eigen_sym3(m, eval, evec);
    // The symmetry axis is the most distinct principal direction: the large
    // eigenvalue for elongated shapes, the small one for flattened ones.
    prof.axis = (eval[2] - eval[1] >= eval[1] - eval[0]) ? evec[2] : evec[0];

    struct Entry {
        double z, rho, h, w;
    };
    std::vector<Entry> entries(nv);
    double zmin = 1e300, zmax = -1e300;
    for (int i = 0; i < nv; ++i) {
        const Vec3 d = mesh.vertices[i] - centroid;
        const double z = dot(d, prof.axis);
        const Vec3 radial = d - z * prof.axis;
        entries[i] = {z, norm(radial), field.H[i], field.A[i]};
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
        prof.max_radius = std::max(prof.max_radius, entries[i].rho);
    }
    prof.span = zmax - zmin;

    // Near-axis curvature profile in axial order.
    std::vector<Entry> near_axis;
    for (const Entry& e : entries) {
        if (e.rho < 0.45 * prof.max_radius) near_axis.push_back(e);
    }
    std::sort(near_axis.begin(), near_axis.end(), [](const Entry& a, const Entry& b) { return a.z < b.z; });
    const int group = std::max<int>(5, static_cast<int>(near_axis.size()) / 30);
    for (size_t start = 0; start < near_axis.size(); start += group) {
        const size_t stop = std::min(near_axis.size(), start + group);
        double hw = 0.0, w = 0.0, zc = 0.0;
        for (size_t k = start; k < stop; ++k) {
            hw += near_axis[k].h * near_axis[k].w;
            w += near_axis[k].w;
            zc += near_axis[k].z;
        }
        if (w <= 0.0) continue;
        prof.group_z.push_back(zc / (stop - start));
        prof.group_h.push_back(hw / w);
    }
    // Dead band: curvature magnitudes below a small fraction of the overall
    // scale do not count as a signed region.
    double h_scale = 0.0;
    for (double h : prof.group_h) h_scale = std::max(h_scale, std::abs(h));
    prof.h_sign_changes = sign_changes(prof.group_h, 0.02 * h_scale);
    if (!prof.group_h.empty()) {
        prof.pole_h_low = prof.group_h.front();
        prof.pole_h_high = prof.group_h.back();
    }

    // Outer radius profile for dumbbell detection and the revolution envelope.
    const int nbins = 40;
    std::vector<double> rho_max(nbins, 0.0);
    for (const Entry& e : entries) {
        int b = static_cast<int>((e.z - zmin) / prof.span * nbins);
        b = std::clamp(b, 0, nbins - 1);
        rho_max[b] = std::max(rho_max[b], e.rho);
    }
    for (int b = 0; b < nbins; ++b) {
        if (rho_max[b] == 0.0) {  // interpolate an empty bin from neighbors
            int lo = b - 1, hi = b + 1;
            while (lo >= 0 && rho_max[lo] == 0.0) --lo;
            while (hi < nbins && rho_max[hi] == 0.0) ++hi;
            const double a = lo >= 0 ? rho_max[lo] : 0.0;
            const double c = hi < nbins ? rho_max[hi] : 0.0;
            rho_max[b] = (lo >= 0 && hi < nbins) ? a + (c - a) * (b - lo) / (hi - lo) : std::max(a, c);
        }
    }
    const double dz = prof.span / nbins;
    for (int b = 0; b < nbins; ++b) {
        prof.envelope_volume += std::numbers::pi * rho_max[b] * rho_max[b] * dz;
    }
    // Smooth lightly, find local maxima, and merge peaks not separated by a
    // dip of at least 2% of the radius.
    std::vector<double> smooth(nbins);
    for (int b = 0; b < nbins; ++b) {
        const int lo = std::max(0, b - 1), hi = std::min(nbins - 1, b + 1);
        smooth[b] = (rho_max[lo] + rho_max[b] + rho_max[hi]) / (hi - lo + 1);
    }
    const double bump = 0.02 * prof.max_radius;
    std::vector<int> peaks;
    for (int b = 1; b + 1 < nbins; ++b) {
        if (smooth[b] > smooth[b - 1] && smooth[b] >= smooth[b + 1]) {
            if (peaks.empty()) {
                peaks.push_back(b);
                continue;
            }
            double valley = smooth[b];
            for (int k = peaks.back(); k <= b; ++k) valley = std::min(valley, smooth[k]);
            if (std::min(smooth[peaks.back()], smooth[b]) - valley > bump) {
                peaks.push_back(b);
            } else if (smooth[b] > smooth[peaks.back()]) {
                peaks.back() = b;
            }
        }
    }
    prof.radius_maxima = static_cast<int>(peaks.size());

    prof.enclosed_volume = total_volume(mesh);
    prof.cavity_volume = std::max(0.0, prof.envelope_volume - prof.enclosed_volume);
    return prof;
}

ShapeClass classify_shape(const AxialProfile& p) {
    const double aspect = p.span / (2.0 * p.max_radius);
    const bool pole_lo_neg = p.pole_h_low < 0.0;
    const bool pole_hi_neg = p.pole_h_high < 0.0;
    if (p.h_sign_changes >= 2 && p.cavity_volume > 0.02 * p.envelope_volume) return ShapeClass::Stomatocyte;
    if ((pole_lo_neg != pole_hi_neg) && p.cavity_volume > 0.10 * p.envelope_volume) {
        return ShapeClass::Stomatocyte;  // deep cup whose mouth lip lies off axis
    }
    if (pole_lo_neg && pole_hi_neg) return ShapeClass::Biconcave;
    if (p.radius_maxima >= 2) return ShapeClass::Dumbbell;
    if (aspect > 1.1) return ShapeClass::Prolate;
    if (aspect > 0.9) return ShapeClass::Sphere;
    return ShapeClass::Unknown;
}

const char* to_string(ShapeClass c) {
    switch (c) {
        case ShapeClass::Sphere: return "sphere";
        case ShapeClass::Prolate: return "prolate";
        case ShapeClass::Dumbbell: return "dumbbell";
        case ShapeClass::Biconcave: return "biconcave";
        case ShapeClass::Stomatocyte: return "stomatocyte";
        case ShapeClass::Unknown: return "unknown";
    }
    return "?";
}

}  // namespace vesicle
