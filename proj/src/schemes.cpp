#include "vesicle/schemes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vesicle {

Scheme parse_scheme(const std::string& name) {
    if (name == "A" || name == "a") return Scheme::A;
    if (name == "B" || name == "b") return Scheme::B;
    if (name == "C" || name == "c") return Scheme::C;
    if (name == "D" || name == "d") return Scheme::D;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::A: return "A";
        case Scheme::B: return "B";
        case Scheme::C: return "C";
        case Scheme::D: return "D";
    }
    return "?";
}

Moments moments(const VertexField& field) {
    Moments m;
    for (size_t i = 0; i < field.H.size(); ++i) {
        m.m0 += field.A[i];
        m.m1 += field.H[i] * field.A[i];
        m.m2 += field.H[i] * field.H[i] * field.A[i];
    }
    return m;
}

ForceField force_from_density(const ForceField& density, const std::vector<double>& vertex_area) {
    ForceField f(density.size());
    for (size_t i = 0; i < density.size(); ++i) f[i] = density[i] * vertex_area[i];
    return f;
}

ForceField density_from_force(const ForceField& force, const std::vector<double>& vertex_area) {
    ForceField f(force.size());
    for (size_t i = 0; i < force.size(); ++i) f[i] = force[i] / vertex_area[i];
    return f;
}

namespace {

// cot(phi_k) + cot(phi_l) over the two angles opposite each edge.
std::vector<double> edge_cot_weights(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    std::vector<double> w(mesh.num_edges());
    auto corner_of = [&](int tri, int vertex) {
        const auto& t = mesh.triangles[tri];
        for (int c = 0; c < 3; ++c) {
            if (t[c] == vertex) return c;
        }
        throw std::logic_error("vertex not in triangle");
    };
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        w[e] = prims[ed.t1].cot[corner_of(ed.t1, ed.k)] + prims[ed.t2].cot[corner_of(ed.t2, ed.l)];
    }
    return w;
}

// Outward angle-weighted normal sums m_i and the cotangent edge sums
// S_i = sum_e (cot phi_k + cot phi_l)(x_i - x_j); the scheme C/D mean
// curvature is H_i = S_i . mhat_i / (4 A_i).
struct CotanVertexData {
    std::vector<Vec3> m_raw;   // unnormalized angle-weighted outward normal
    std::vector<Vec3> s_sum;   // cotangent-weighted edge sums
};

CotanVertexData cotan_vertex_data(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    CotanVertexData data;
    data.m_raw.assign(mesh.num_vertices(), Vec3{});
    data.s_sum.assign(mesh.num_vertices(), Vec3{});
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const TrianglePrim& p = prims[t];
        for (int c = 0; c < 3; ++c) {
            const int i = tri[c], j = tri[(c + 1) % 3], k = tri[(c + 2) % 3];
            data.m_raw[i] += p.angle[c] * p.unit_normal;
            // edge (i,j) is opposite corner k within this triangle, (i,k) opposite j
            data.s_sum[i] += p.cot[(c + 2) % 3] * (mesh.vertices[i] - mesh.vertices[j]) +
                             p.cot[(c + 1) % 3] * (mesh.vertices[i] - mesh.vertices[k]);
        }
    }
    return data;
}

VertexField cotan_field(const TriMesh& mesh, Scheme scheme) {
    VertexField field;
    field.scheme = scheme;
    const auto prims = triangle_prims(mesh, &field.diagnostics);
    field.A = scheme == Scheme::C ? vertex_area_voronoi(mesh, prims, &field.diagnostics)
                                  : vertex_area_mixed(mesh, prims);
    const auto data = cotan_vertex_data(mesh, prims);
    const int nv = mesh.num_vertices();
    field.H.resize(nv);
    field.n.resize(nv);
    for (int i = 0; i < nv; ++i) {
        const Vec3 mhat = normalized(data.m_raw[i]);
        field.n[i] = -mhat;  // inward
        field.H[i] = dot(data.s_sum[i], mhat) / (4.0 * field.A[i]);
    }
    if (scheme == Scheme::D) {
        field.G.resize(nv);
        std::vector<double> angle_sum(nv, 0.0);
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            for (int c = 0; c < 3; ++c) angle_sum[mesh.triangles[t][c]] += prims[t].angle[c];
        }
        for (int i = 0; i < nv; ++i) {
            field.G[i] = (2.0 * std::numbers::pi - angle_sum[i]) / field.A[i];
        }
    }
    return field;
}

}  // namespace

// --- scheme A ----------------------------------------------------------------

double scheme_a_energy(const TriMesh& mesh, double kappa_tilde, double theta0, bool linearized) {
    const auto prims = triangle_prims(mesh);
    const auto eprims = edge_prims(mesh, prims);
    double energy = 0.0;
    for (const EdgePrim& e : eprims) {
        const double d = e.theta - theta0;
        energy += linearized ? d * d : 2.0 * (1.0 - std::cos(d));
    }
    return kappa_tilde * energy;
}

ForceField scheme_a_force(const TriMesh& mesh, double kappa_tilde, double theta0, bool linearized) {
    const auto prims = triangle_prims(mesh);
    const auto eprims = edge_prims(mesh, prims);
    ForceField force(mesh.num_vertices(), Vec3{});
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        const double d = eprims[e].theta - theta0;
        const double w = -2.0 * kappa_tilde * (linearized ? d : std::sin(d));
        const auto dth = d_dihedral(mesh, e);
        force[ed.i] += w * dth[0];
        force[ed.j] += w * dth[1];
        force[ed.k] += w * dth[2];
        force[ed.l] += w * dth[3];
    }
    return force;
}

std::vector<double> scheme_a_vertex_energy(const TriMesh& mesh, double kappa_tilde, double theta0,
                                           bool linearized) {
    const auto prims = triangle_prims(mesh);
    const auto eprims = edge_prims(mesh, prims);
    std::vector<double> per_vertex(mesh.num_vertices(), 0.0);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const double d = eprims[e].theta - theta0;
        const double half = 0.5 * kappa_tilde * (linearized ? d * d : 2.0 * (1.0 - std::cos(d)));
        per_vertex[mesh.edges[e].i] += half;
        per_vertex[mesh.edges[e].j] += half;
    }
    return per_vertex;
}

// --- fields -------------------------------------------------------------------

VertexField scheme_b_field(const TriMesh& mesh) {
    VertexField field;
    field.scheme = Scheme::B;
    const auto prims = triangle_prims(mesh, &field.diagnostics);
    const auto eprims = edge_prims(mesh, prims);
    field.A = vertex_area_barycentric(mesh, prims);
    field.H.assign(mesh.num_vertices(), 0.0);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const double le_theta = eprims[e].length * eprims[e].theta;
        field.H[mesh.edges[e].i] += le_theta;
        field.H[mesh.edges[e].j] += le_theta;
    }
    for (int i = 0; i < mesh.num_vertices(); ++i) field.H[i] /= 4.0 * field.A[i];
    return field;
}

VertexField scheme_c_field(const TriMesh& mesh) { return cotan_field(mesh, Scheme::C); }

VertexField scheme_d_field(const TriMesh& mesh) { return cotan_field(mesh, Scheme::D); }

VertexField scheme_field(const TriMesh& mesh, Scheme scheme) {
    switch (scheme) {
        case Scheme::B: return scheme_b_field(mesh);
        case Scheme::C: return scheme_c_field(mesh);
        case Scheme::D: return scheme_d_field(mesh);
        case Scheme::A: break;
    }
    throw std::invalid_argument("scheme A defines no vertex field");
}

// --- scheme B force -------------------------------------------------------------

ForceField scheme_b_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials) {
    if (field.scheme != Scheme::B) throw std::invalid_argument("scheme_b_force needs a scheme B field");
    const int nv = mesh.num_vertices();

    // dE = sum_i [wa_i dA_i + wh_i sum_{e at i} (theta dl + l dtheta)]
    std::vector<double> wa(nv), wh(nv);
    for (int i = 0; i < nv; ++i) {
        wa[i] = partials.dm0 - partials.dm2 * field.H[i] * field.H[i];
        wh[i] = 0.25 * (partials.dm1 + 2.0 * partials.dm2 * field.H[i]);
    }

    std::vector<Vec3> grad(nv, Vec3{});
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double s = (wa[tri[0]] + wa[tri[1]] + wa[tri[2]]) / 3.0;
        const auto da = d_tri_area(mesh, t);
        for (int c = 0; c < 3; ++c) grad[tri[c]] += s * da[c];
    }

    const auto prims = triangle_prims(mesh);
    const auto eprims = edge_prims(mesh, prims);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        const double w = wh[ed.i] + wh[ed.j];
        const auto dl = d_length(mesh, e);
        const auto dth = d_dihedral(mesh, e);
        grad[ed.i] += w * (eprims[e].theta * dl[0] + eprims[e].length * dth[0]);
        grad[ed.j] += w * (eprims[e].theta * dl[1] + eprims[e].length * dth[1]);
        grad[ed.k] += w * eprims[e].length * dth[2];
        grad[ed.l] += w * eprims[e].length * dth[3];
    }

    ForceField force(nv);
    for (int i = 0; i < nv; ++i) force[i] = -grad[i];
    return force;
}

// --- scheme C force -------------------------------------------------------------

ForceField scheme_c_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials) {
    if (field.scheme != Scheme::C) throw std::invalid_argument("scheme_c_force needs a scheme C field");
    const int nv = mesh.num_vertices();
    for (int i = 0; i < nv; ++i) {
        if (field.A[i] <= 0.0) {
            throw std::runtime_error("scheme C force undefined: non-positive Voronoi area at vertex " +
                                     std::to_string(i));
        }
    }

    const auto prims = triangle_prims(mesh);
    const auto data = cotan_vertex_data(mesh, prims);

    // E = F(M0, M1, M2) with M0 = sum A_i, M1 = sum h_i, M2 = sum h_i^2/A_i,
    // h_i = S_i . mhat_i / 4. Per vertex: dE = alpha_i dA_i + beta_i dh_i.
    std::vector<double> alpha(nv), beta(nv);
    std::vector<Vec3> mhat(nv), qvec(nv);
    for (int i = 0; i < nv; ++i) {
        alpha[i] = partials.dm0 - partials.dm2 * field.H[i] * field.H[i];
        beta[i] = partials.dm1 + 2.0 * partials.dm2 * field.H[i];
        const double mlen = norm(data.m_raw[i]);
        mhat[i] = data.m_raw[i] / mlen;
        // d(mhat) pulled back onto d(m_raw): S . d(mhat) = qvec . d(m_raw)
        qvec[i] = (data.s_sum[i] - dot(data.s_sum[i], mhat[i]) * mhat[i]) / mlen;
    }

    std::vector<Vec3> grad(nv, Vec3{});
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const TrianglePrim& p = prims[t];
        const double two_area = 2.0 * p.area;
        const Vec3& u = p.unit_normal;
        const Vec3 pos[3] = {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
        // dA w.r.t. corner c, and the cross factor g_c of the normal variation
        const Vec3 darea[3] = {0.5 * cross(u, pos[2] - pos[1]), 0.5 * cross(u, pos[0] - pos[2]),
                               0.5 * cross(u, pos[1] - pos[0])};
        const Vec3 gvec[3] = {pos[1] - pos[2], pos[2] - pos[0], pos[0] - pos[1]};

        for (int ci = 0; ci < 3; ++ci) {
            const int cj = (ci + 1) % 3, ck = (ci + 2) % 3;
            const int i = tri[ci], j = tri[cj], k = tri[ck];
            const Vec3 ej = pos[ci] - pos[cj];
            const Vec3 ek = pos[ci] - pos[ck];
            const double sj2 = norm2(ej), sk2 = norm2(ek);
            const double cotj = p.cot[cj], cotk = p.cot[ck];
            const double a8 = alpha[i] / 8.0;
            const double b4 = beta[i] / 4.0;
            const Vec3& mh = mhat[i];
            const Vec3& q = qvec[i];

            // d(s^2) and d(e) terms
            grad[i] += (2.0 * a8) * (cotk * ej + cotj * ek) + (b4 * (cotk + cotj)) * mh;
            grad[j] -= (2.0 * a8 * cotk) * ej + (b4 * cotk) * mh;
            grad[k] -= (2.0 * a8 * cotj) * ek + (b4 * cotj) * mh;

            // d(cot) terms; cot at corner j uses rays a = x_i - x_j, b = x_k - x_j
            {
                const double w_cj = a8 * sk2 + b4 * dot(mh, ek);
                const Vec3 a = ej;                    // x_i - x_j
                const Vec3 bvec = pos[ck] - pos[cj];  // x_k - x_j
                // d(a.b): d/dx_i = b, d/dx_k = a, d/dx_j = -(a+b)
                grad[i] += (w_cj / two_area) * (bvec - 2.0 * cotj * darea[ci]);
                grad[k] += (w_cj / two_area) * (a - 2.0 * cotj * darea[ck]);
                grad[j] += (w_cj / two_area) * (-(a + bvec) - 2.0 * cotj * darea[cj]);
            }
            {
                const double w_ck = a8 * sj2 + b4 * dot(mh, ej);
                const Vec3 a = ek;                    // x_i - x_k
                const Vec3 bvec = pos[cj] - pos[ck];  // x_j - x_k
                grad[i] += (w_ck / two_area) * (bvec - 2.0 * cotk * darea[ci]);
                grad[j] += (w_ck / two_area) * (a - 2.0 * cotk * darea[cj]);
                grad[k] += (w_ck / two_area) * (-(a + bvec) - 2.0 * cotk * darea[ck]);
            }

            // d(phi_i) term
            {
                const double w_phi = b4 * dot(q, u);
                const Vec3 gj = cross(u, ej) / sj2;
                const Vec3 gk = -1.0 * cross(u, ek) / sk2;
                grad[j] += w_phi * gj;
                grad[k] += w_phi * gk;
                grad[i] -= w_phi * (gj + gk);
            }

            // d(u) term: w . du with w = b4 * phi_i * q
            {
                const Vec3 w = (b4 * p.angle[ci]) * q;
                const Vec3 pw = w - dot(w, u) * u;
                for (int c = 0; c < 3; ++c) {
                    grad[tri[c]] += cross(gvec[c], pw) / two_area;
                }
            }
        }
    }

    ForceField force(nv);
    for (int i = 0; i < nv; ++i) force[i] = -grad[i];
    return force;
}

// --- scheme D ---------------------------------------------------------------------

std::vector<double> laplace_beltrami(const TriMesh& mesh, const std::vector<double>& values,
                                     const std::vector<double>& vertex_area) {
    const auto prims = triangle_prims(mesh);
    const auto w = edge_cot_weights(mesh, prims);
    std::vector<double> lap(mesh.num_vertices(), 0.0);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        const double flow = w[e] * (values[ed.j] - values[ed.i]);
        lap[ed.i] += flow;
        lap[ed.j] -= flow;
    }
    for (int i = 0; i < mesh.num_vertices(); ++i) lap[i] /= 2.0 * vertex_area[i];
    return lap;
}

std::vector<double> scheme_d_force_density(const TriMesh& mesh, const VertexField& field,
                                           const MomentPartials& partials) {
    if (field.scheme != Scheme::D) throw std::invalid_argument("scheme_d_force_density needs a scheme D field");
    const auto lap_h = laplace_beltrami(mesh, field.H, field.A);
    std::vector<double> f(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const double H = field.H[i], G = field.G[i];
        const double f0 = 2.0 * H;
        const double f1 = G;
        const double f2 = -2.0 * H * (H * H - G) - lap_h[i];
        f[i] = partials.dm0 * f0 + partials.dm1 * f1 + partials.dm2 * f2;
    }
    return f;
}

ForceField scheme_d_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials) {
    const auto density = scheme_d_force_density(mesh, field, partials);
    ForceField force(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        force[i] = density[i] * field.A[i] * field.n[i];
    }
    return force;
}

}  // namespace vesicle
