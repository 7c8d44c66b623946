// Copyright 2026 The vrdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vrd/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "vrd/eig.hpp"

namespace vrd::sdp {

namespace {

using qmath::cholesky;
using qmath::hermitian_eigenvalues;
using qmath::lower_triangular_inverse;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Triplet {
    int r, c;
    Complex v;
};

struct BlockCoeff {
    int block;
    std::vector<Triplet> entries;
};

struct Row {
    std::vector<BlockCoeff> coeffs;  // sorted by block index
    double rhs;
};

// The problem after conversion to pure equality form over PSD blocks:
// <= rows gain a 1x1 slack block, free scalars split into u - v pairs.
struct Compiled {
    std::vector<int> dims;
    std::vector<ComplexMatrix> cost;
    std::vector<Row> rows;
    int n_orig_blocks = 0;
    int first_aux_block = 0;  // slacks and scalar splits start here
    int first_scalar_block = 0;
};

std::vector<Triplet> to_triplets(const ComplexMatrix &a) {
    std::vector<Triplet> t;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != Complex(0.0, 0.0)) t.push_back({i, j, a(i, j)});
    return t;
}

Compiled compile(const SdpProblem &p) {
    Compiled c;
    c.dims = p.block_dims;
    c.n_orig_blocks = static_cast<int>(p.block_dims.size());
    c.cost = p.objective;
    c.cost.resize(c.n_orig_blocks);
    for (int b = 0; b < c.n_orig_blocks; ++b)
        if (c.cost[b].rows() == 0) c.cost[b] = ComplexMatrix::zero(p.block_dims[b], p.block_dims[b]);

    c.first_aux_block = c.n_orig_blocks;
    int n_le = 0;
    for (const auto &con : p.constraints)
        if (con.relation == Relation::LessEqual) ++n_le;
    for (int i = 0; i < n_le; ++i) {
        c.dims.push_back(1);
        c.cost.push_back(ComplexMatrix::zero(1, 1));
    }
    c.first_scalar_block = c.first_aux_block + n_le;
    for (int f = 0; f < p.free_scalars; ++f) {
        const double cf =
            f < static_cast<int>(p.objective_scalars.size()) ? p.objective_scalars[f] : 0.0;
        ComplexMatrix cu(1, 1), cv(1, 1);
        cu(0, 0) = cf;
        cv(0, 0) = -cf;
        c.dims.push_back(1);
        c.cost.push_back(cu);
        c.dims.push_back(1);
        c.cost.push_back(cv);
    }

    int slack = 0;
    for (const auto &con : p.constraints) {
        Row row;
        row.rhs = con.rhs;
        for (const auto &[b, mat] : con.block_coeffs) {
            auto t = to_triplets(mat);
            if (!t.empty()) row.coeffs.push_back({b, std::move(t)});
        }
        for (const auto &[f, val] : con.scalar_coeffs) {
            if (val == 0.0) continue;
            row.coeffs.push_back({c.first_scalar_block + 2 * f, {{0, 0, val}}});
            row.coeffs.push_back({c.first_scalar_block + 2 * f + 1, {{0, 0, -val}}});
        }
        if (con.relation == Relation::LessEqual) {
            row.coeffs.push_back({c.first_aux_block + slack, {{0, 0, 1.0}}});
            ++slack;
        }
        std::sort(row.coeffs.begin(), row.coeffs.end(),
                  [](const BlockCoeff &a, const BlockCoeff &b) { return a.block < b.block; });
        c.rows.push_back(std::move(row));
    }
    return c;
}

double row_dot(const Row &row, const std::vector<ComplexMatrix> &x) {
    double s = 0.0;
    for (const auto &bc : row.coeffs) {
        const ComplexMatrix &xb = x[bc.block];
        for (const auto &t : bc.entries) s += (t.v * xb(t.c, t.r)).real();
    }
    return s;
}

std::vector<double> apply_A(const Compiled &c, const std::vector<ComplexMatrix> &x) {
    std::vector<double> out(c.rows.size());
    for (std::size_t i = 0; i < c.rows.size(); ++i) out[i] = row_dot(c.rows[i], x);
    return out;
}

std::vector<ComplexMatrix> apply_At(const Compiled &c, const std::vector<double> &y) {
    std::vector<ComplexMatrix> out(c.dims.size());
    for (std::size_t b = 0; b < c.dims.size(); ++b) out[b] = ComplexMatrix::zero(c.dims[b], c.dims[b]);
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const double yi = y[i];
        if (yi == 0.0) continue;
        for (const auto &bc : c.rows[i].coeffs)
            for (const auto &t : bc.entries) out[bc.block](t.r, t.c) += yi * t.v;
    }
    return out;
}

double blocks_inner(const std::vector<ComplexMatrix> &a, const std::vector<ComplexMatrix> &b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += qmath::hs_inner(a[k], b[k]);
    return s;
}

// W A W for sparse A given dense Hermitian W.
ComplexMatrix sandwich_sparse(const ComplexMatrix &w, const std::vector<Triplet> &a) {
    const int d = w.rows();
    ComplexMatrix out(d, d);
    for (const auto &t : a) {
        for (int i = 0; i < d; ++i) {
            const Complex wi = w(i, t.r) * t.v;
            if (wi == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < d; ++j) out(i, j) += wi * w(t.c, j);
        }
    }
    return out;
}

double sparse_inner(const std::vector<Triplet> &a, const ComplexMatrix &x) {
    double s = 0.0;
    for (const auto &t : a) s += (t.v * x(t.c, t.r)).real();
    return s;
}

// Dense symmetric positive definite Cholesky, in place (lower triangle).
bool dense_cholesky(std::vector<double> &m, int n) {
    for (int j = 0; j < n; ++j) {
        double d = m[j * n + j];
        for (int k = 0; k < j; ++k) d -= m[j * n + k] * m[j * n + k];
        if (!(d > 0.0)) return false;
        const double r = std::sqrt(d);
        m[j * n + j] = r;
        for (int i = j + 1; i < n; ++i) {
            double s = m[i * n + j];
            for (int k = 0; k < j; ++k) s -= m[i * n + k] * m[j * n + k];
            m[i * n + j] = s / r;
        }
    }
    return true;
}

void dense_chol_solve(const std::vector<double> &l, int n, std::vector<double> &b) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) b[i] -= l[i * n + j] * b[j];
        b[i] /= l[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= l[j * n + i] * b[j];
        b[i] /= l[i * n + i];
    }
}

struct Scaling {
    ComplexMatrix r;        // R with X = R Lambda R^dag, S = R^-dag Lambda R^-1
    ComplexMatrix r_inv;
    ComplexMatrix w;        // R R^dag
    std::vector<double> lambda;
    bool ok = false;
};

Scaling nt_scaling(const ComplexMatrix &x, const ComplexMatrix &s) {
    Scaling sc;
    const int d = x.rows();
    ComplexMatrix lx, ls;
    if (!cholesky(x, lx) || !cholesky(s, ls)) return sc;

    // K = Ls^dag Lx; eigendecompose K^dag K = Lx^dag S Lx = V Sigma^2 V^dag.
    const ComplexMatrix k = ls.adjoint() * lx;
    qmath::EigResult eig;
    try {
        eig = qmath::hermitian_eig((k.adjoint() * k).symmetrized(), 1e-6);
    } catch (const std::invalid_argument &) {
        return sc;
    }
    sc.lambda.resize(d);
    ComplexMatrix v_scaled = eig.eigenvectors;  // V Sigma^{-1/2}
    for (int j = 0; j < d; ++j) {
        const double sig2 = eig.eigenvalues[j];
        if (!(sig2 > 0.0)) return sc;
        const double sig = std::sqrt(sig2);
        sc.lambda[j] = sig;
        const double f = 1.0 / std::sqrt(sig);
        for (int i = 0; i < d; ++i) v_scaled(i, j) *= f;
    }
    sc.r = lx * v_scaled;

    // R^{-1} = Sigma^{1/2} V^dag Lx^{-1}
    const ComplexMatrix lx_inv = lower_triangular_inverse(lx);
    ComplexMatrix vh_scaled = eig.eigenvectors.adjoint();  // rows scaled by Sigma^{1/2}
    for (int i = 0; i < d; ++i) {
        const double f = std::sqrt(sc.lambda[i]);
        for (int j = 0; j < d; ++j) vh_scaled(i, j) *= f;
    }
    sc.r_inv = vh_scaled * lx_inv;
    sc.w = (sc.r * sc.r.adjoint()).symmetrized();
    sc.ok = true;
    return sc;
}

// Largest alpha with Lambda + alpha * d >= 0, via eigenvalues of the
// Lambda^{-1/2}-scaled direction.
double step_to_boundary(const std::vector<double> &lambda, const ComplexMatrix &d) {
    const int n = static_cast<int>(lambda.size());
    ComplexMatrix scaled = d.symmetrized();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scaled(i, j) /= std::sqrt(lambda[i]) * std::sqrt(lambda[j]);
    double emin;
    try {
        emin = hermitian_eigenvalues(scaled, 1e-3).back();
    } catch (const std::invalid_argument &) {
        return 0.0;
    }
    if (emin >= 0.0) return kInf;
    return 1.0 / (-emin);
}

struct Observer {
    std::mutex mutex;
    SolveObserver fn = nullptr;
};
Observer &observer() {
    static Observer obs;
    return obs;
}

struct Direction {
    std::vector<ComplexMatrix> dx, ds, dlx, dls;
    std::vector<double> dy;
    double dtau = 0.0, dkappa = 0.0;
};

}  // namespace

void SdpProblem::validate() const {
    if (block_dims.empty() && free_scalars == 0)
        throw std::invalid_argument("SdpProblem: no variables");
    for (int d : block_dims)
        if (d <= 0) throw std::invalid_argument("SdpProblem: nonpositive block dimension");
    if (objective.size() > block_dims.size())
        throw std::invalid_argument("SdpProblem: more objective matrices than blocks");
    for (std::size_t b = 0; b < objective.size(); ++b) {
        if (objective[b].rows() == 0) continue;
        if (objective[b].rows() != block_dims[b] || objective[b].cols() != block_dims[b])
            throw std::invalid_argument("SdpProblem: objective shape mismatch");
        if (objective[b].hermiticity_defect() > 1e-12)
            throw std::invalid_argument("SdpProblem: objective matrix not Hermitian");
    }
    for (const auto &con : constraints) {
        for (const auto &[b, mat] : con.block_coeffs) {
            if (b < 0 || b >= static_cast<int>(block_dims.size()))
                throw std::invalid_argument("SdpProblem: constraint block index out of range");
            if (mat.rows() != block_dims[b] || mat.cols() != block_dims[b])
                throw std::invalid_argument("SdpProblem: constraint coefficient shape mismatch");
            if (mat.hermiticity_defect() > 1e-12)
                throw std::invalid_argument("SdpProblem: constraint coefficient not Hermitian");
        }
        for (const auto &[f, val] : con.scalar_coeffs) {
            (void)val;
            if (f < 0 || f >= free_scalars)
                throw std::invalid_argument("SdpProblem: scalar index out of range");
        }
    }
}

void SdpProblem::dump(std::ostream &os) const {
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    os << "sdp-problem v1\n";
    os << "blocks " << block_dims.size() << "\n";
    for (std::size_t b = 0; b < block_dims.size(); ++b)
        os << "block " << b << " " << block_dims[b] << "\n";
    os << "scalars " << free_scalars << "\n";
    for (std::size_t b = 0; b < objective.size(); ++b) {
        if (objective[b].rows() == 0) continue;
        os << "objective block " << b << "\n";
        for (int i = 0; i < objective[b].rows(); ++i)
            for (int j = 0; j < objective[b].cols(); ++j) {
                const Complex v = objective[b](i, j);
                if (v == Complex(0.0, 0.0)) continue;
                os << i << " " << j << " " << num(v.real()) << " " << num(v.imag()) << "\n";
            }
    }
    if (!objective_scalars.empty()) {
        os << "objective scalars";
        for (double v : objective_scalars) os << " " << num(v);
        os << "\n";
    }
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        const auto &con = constraints[k];
        os << "constraint " << k << " " << (con.relation == Relation::Equal ? "EQ" : "LE") << " "
           << num(con.rhs) << "\n";
        for (const auto &[b, mat] : con.block_coeffs) {
            os << "block " << b << "\n";
            for (int i = 0; i < mat.rows(); ++i)
                for (int j = 0; j < mat.cols(); ++j) {
                    const Complex v = mat(i, j);
                    if (v == Complex(0.0, 0.0)) continue;
                    os << i << " " << j << " " << num(v.real()) << " " << num(v.imag()) << "\n";
                }
        }
        for (const auto &[f, val] : con.scalar_coeffs)
            os << "scalar " << f << " " << num(val) << "\n";
    }
    os << "end\n";
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

void set_solve_observer(SolveObserver fn) {
    std::lock_guard<std::mutex> lock(observer().mutex);
    observer().fn = fn;
}

SdpSolution solve(const SdpProblem &problem, const SdpSettings &settings) {
    problem.validate();
    const Compiled c = compile(problem);
    const int nb = static_cast<int>(c.dims.size());
    const int m = static_cast<int>(c.rows.size());

    SdpSolution sol;

    // Homogeneous self-dual iterate.
    std::vector<ComplexMatrix> x(nb), s(nb);
    for (int b = 0; b < nb; ++b) {
        x[b] = ComplexMatrix::identity(c.dims[b]);
        s[b] = ComplexMatrix::identity(c.dims[b]);
    }
    std::vector<double> y(m, 0.0);
    double tau = 1.0, kappa = 1.0;

    double nu = 1.0;
    for (int b = 0; b < nb; ++b) nu += c.dims[b];

    std::vector<double> bvec(m);
    double bmax = 0.0;
    for (int i = 0; i < m; ++i) {
        bvec[i] = c.rows[i].rhs;
        bmax = std::max(bmax, std::abs(bvec[i]));
    }
    double cmax = 0.0;
    for (int b = 0; b < nb; ++b) cmax = std::max(cmax, c.cost[b].max_abs());

    auto finish_optimal = [&]() {
        sol.status = SolveStatus::Optimal;
        sol.primal_blocks.assign(x.begin(), x.begin() + c.n_orig_blocks);
        for (auto &blk : sol.primal_blocks) {
            blk *= Complex(1.0 / tau, 0.0);
            blk = blk.symmetrized();
        }
        sol.scalars.resize(static_cast<std::size_t>(problem.free_scalars));
        for (int f = 0; f < problem.free_scalars; ++f) {
            const int ub = c.first_scalar_block + 2 * f;
            sol.scalars[f] = (x[ub](0, 0).real() - x[ub + 1](0, 0).real()) / tau;
        }
        sol.dual_multipliers.resize(m);
        for (int i = 0; i < m; ++i) sol.dual_multipliers[i] = y[i] / tau;
        sol.dual_blocks.assign(s.begin(), s.begin() + c.n_orig_blocks);
        for (auto &blk : sol.dual_blocks) {
            blk *= Complex(1.0 / tau, 0.0);
            blk = blk.symmetrized();
        }
        double pv = 0.0;
        for (int b = 0; b < c.n_orig_blocks; ++b)
            pv += qmath::hs_inner(c.cost[b], sol.primal_blocks[b]);
        for (int f = 0; f < problem.free_scalars; ++f)
            pv += (f < static_cast<int>(problem.objective_scalars.size())
                       ? problem.objective_scalars[f]
                       : 0.0) *
                  sol.scalars[f];
        sol.primal_value = pv;
        double dv = 0.0;
        for (int i = 0; i < m; ++i) dv += bvec[i] * sol.dual_multipliers[i];
        sol.dual_value = dv;
    };

    for (int iter = 0; iter <= settings.max_iter; ++iter) {
        sol.iterations = iter;

        // Residuals of the homogeneous system.
        const std::vector<double> ax = apply_A(c, x);
        const std::vector<ComplexMatrix> aty = apply_At(c, y);
        std::vector<double> rp(m);
        for (int i = 0; i < m; ++i) rp[i] = ax[i] - bvec[i] * tau;
        std::vector<ComplexMatrix> rd(nb);
        for (int b = 0; b < nb; ++b)
            rd[b] = aty[b] + s[b] - c.cost[b] * Complex(tau, 0.0);
        double cx = 0.0;
        for (int b = 0; b < nb; ++b) cx += qmath::hs_inner(c.cost[b], x[b]);
        double by = 0.0;
        for (int i = 0; i < m; ++i) by += bvec[i] * y[i];
        const double rg = cx - by + kappa;
        const double mu = (blocks_inner(x, s) + tau * kappa) / nu;

        // Convergence on the de-homogenized point.
        double pres = 0.0;
        for (int i = 0; i < m; ++i) pres = std::max(pres, std::abs(ax[i] / tau - bvec[i]));
        pres /= 1.0 + bmax;
        double dres = 0.0;
        for (int b = 0; b < nb; ++b) {
            ComplexMatrix viol = aty[b] * Complex(1.0 / tau, 0.0) + s[b] * Complex(1.0 / tau, 0.0) -
                                 c.cost[b];
            dres = std::max(dres, viol.max_abs());
        }
        dres /= 1.0 + cmax;
        const double pobj = cx / tau, dobj = by / tau;
        const double relgap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));

        if (settings.verbose) {
            std::cerr << "sdp iter " << iter << " mu=" << mu << " pres=" << pres
                      << " dres=" << dres << " gap=" << relgap << " tau=" << tau
                      << " kappa=" << kappa << "\n";
        }

        if (pres <= settings.feas_tol && dres <= settings.feas_tol && relgap <= settings.gap_tol) {
            finish_optimal();
            break;
        }

        // Homogeneous embedding verdict: tau -> 0 with kappa > 0 certifies
        // that no complementary solution with tau > 0 exists.
        if (tau / std::max(kappa, 1e-300) < 1e-10) {
            if (by > 1e-12) {
                sol.status = SolveStatus::Infeasible;
            } else if (cx < -1e-12) {
                sol.status = SolveStatus::Unbounded;
            } else {
                sol.status = SolveStatus::NumericalFailure;
            }
            break;
        }
        if (iter == settings.max_iter) {
            sol.status = SolveStatus::NumericalFailure;
            break;
        }

        // Nesterov-Todd scalings.
        std::vector<Scaling> sc(nb);
        bool scaling_ok = true;
        for (int b = 0; b < nb; ++b) {
            sc[b] = nt_scaling(x[b], s[b]);
            if (!sc[b].ok) scaling_ok = false;
        }
        if (!scaling_ok) {
            sol.status = SolveStatus::NumericalFailure;
            break;
        }

        // Schur complement M_ij = sum_b tr(A_i W A_j W).
        std::vector<std::vector<std::pair<int, ComplexMatrix>>> sandwiched(m);
        for (int j = 0; j < m; ++j)
            for (const auto &bc : c.rows[j].coeffs)
                sandwiched[j].push_back({bc.block, sandwich_sparse(sc[bc.block].w, bc.entries)});

        std::vector<double> mmat(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j <= i; ++j) {
                double v = 0.0;
                auto it_i = c.rows[i].coeffs.begin();
                auto it_j = sandwiched[j].begin();
                while (it_i != c.rows[i].coeffs.end() && it_j != sandwiched[j].end()) {
                    if (it_i->block < it_j->first) ++it_i;
                    else if (it_j->first < it_i->block) ++it_j;
                    else {
                        v += sparse_inner(it_i->entries, it_j->second);
                        ++it_i;
                        ++it_j;
                    }
                }
                mmat[static_cast<std::size_t>(i) * m + j] = v;
                mmat[static_cast<std::size_t>(j) * m + i] = v;
            }
        }
        std::vector<double> mchol = mmat;
        if (!dense_cholesky(mchol, m)) {
            // Mild regularization; encodings occasionally sit on rank boundaries.
            double dmax = 0.0;
            for (int i = 0; i < m; ++i)
                dmax = std::max(dmax, mmat[static_cast<std::size_t>(i) * m + i]);
            mchol = mmat;
            for (int i = 0; i < m; ++i)
                mchol[static_cast<std::size_t>(i) * m + i] += 1e-12 * (1.0 + dmax);
            if (!dense_cholesky(mchol, m)) {
                sol.status = SolveStatus::NumericalFailure;
                break;
            }
        }

        // Iteration-constant pieces of the reduced system.
        std::vector<ComplexMatrix> wcw(nb), wrdw(nb);
        for (int b = 0; b < nb; ++b) {
            wcw[b] = (sc[b].w * c.cost[b] * sc[b].w).symmetrized();
            wrdw[b] = (sc[b].w * rd[b] * sc[b].w).symmetrized();
        }
        const std::vector<double> a_wcw = apply_A(c, wcw);
        const std::vector<double> a_wrdw = apply_A(c, wrdw);
        double c_wcw = 0.0, wcw_rd = 0.0;
        for (int b = 0; b < nb; ++b) {
            c_wcw += qmath::hs_inner(c.cost[b], wcw[b]);
            wcw_rd += qmath::hs_inner(wcw[b], rd[b]);
        }
        std::vector<double> h(m), u2(m);
        for (int i = 0; i < m; ++i) h[i] = a_wcw[i] + bvec[i];
        u2 = h;
        dense_chol_solve(mchol, m, u2);
        double h2b_u2 = 0.0;
        for (int i = 0; i < m; ++i) h2b_u2 += (h[i] - 2.0 * bvec[i]) * u2[i];
        const double dtau_denom = h2b_u2 - c_wcw - kappa / tau;

        auto newton = [&](double eta, const std::vector<ComplexMatrix> &hmat,
                          double e_tk) -> Direction {
            Direction d;
            std::vector<ComplexMatrix> g(nb);
            for (int b = 0; b < nb; ++b)
                g[b] = (sc[b].r * hmat[b] * sc[b].r.adjoint()).symmetrized();
            const std::vector<double> ag = apply_A(c, g);
            double cg = 0.0;
            for (int b = 0; b < nb; ++b) cg += qmath::hs_inner(c.cost[b], g[b]);

            std::vector<double> r1(m);
            for (int i = 0; i < m; ++i) r1[i] = -eta * rp[i] - ag[i] - eta * a_wrdw[i];
            const double r2 = -eta * rg - cg - eta * wcw_rd - e_tk / tau;

            std::vector<double> u1 = r1;
            dense_chol_solve(mchol, m, u1);
            double h2b_u1 = 0.0;
            for (int i = 0; i < m; ++i) h2b_u1 += (h[i] - 2.0 * bvec[i]) * u1[i];
            d.dtau = (r2 - h2b_u1) / dtau_denom;

            d.dy.resize(m);
            for (int i = 0; i < m; ++i) d.dy[i] = u1[i] + d.dtau * u2[i];

            const std::vector<ComplexMatrix> at_dy = apply_At(c, d.dy);
            d.ds.resize(nb);
            d.dx.resize(nb);
            d.dlx.resize(nb);
            d.dls.resize(nb);
            for (int b = 0; b < nb; ++b) {
                d.ds[b] = rd[b] * Complex(-eta, 0.0) - at_dy[b] + c.cost[b] * Complex(d.dtau, 0.0);
                d.dls[b] = (sc[b].r.adjoint() * d.ds[b] * sc[b].r).symmetrized();
                d.dlx[b] = hmat[b] - d.dls[b];
                d.dx[b] = (sc[b].r * d.dlx[b] * sc[b].r.adjoint()).symmetrized();
            }
            d.dkappa = (e_tk - kappa * d.dtau) / tau;
            return d;
        };

        auto max_step = [&](const Direction &d) {
            double alpha = kInf;
            for (int b = 0; b < nb; ++b) {
                alpha = std::min(alpha, step_to_boundary(sc[b].lambda, d.dlx[b]));
                alpha = std::min(alpha, step_to_boundary(sc[b].lambda, d.dls[b]));
            }
            if (d.dtau < 0.0) alpha = std::min(alpha, -tau / d.dtau);
            if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa / d.dkappa);
            return alpha;
        };

        // Predictor.
        std::vector<ComplexMatrix> h_aff(nb);
        for (int b = 0; b < nb; ++b) {
            const int dim = c.dims[b];
            h_aff[b] = ComplexMatrix(dim, dim);
            for (int i = 0; i < dim; ++i) h_aff[b](i, i) = -sc[b].lambda[i];
        }
        const Direction aff = newton(1.0, h_aff, -tau * kappa);
        const double alpha_aff = std::min(1.0, max_step(aff));

        double gap_aff = (tau + alpha_aff * aff.dtau) * (kappa + alpha_aff * aff.dkappa);
        for (int b = 0; b < nb; ++b) {
            const int dim = c.dims[b];
            ComplexMatrix lx_new = aff.dlx[b] * Complex(alpha_aff, 0.0);
            ComplexMatrix ls_new = aff.dls[b] * Complex(alpha_aff, 0.0);
            for (int i = 0; i < dim; ++i) {
                lx_new(i, i) += sc[b].lambda[i];
                ls_new(i, i) += sc[b].lambda[i];
            }
            gap_aff += qmath::hs_inner(lx_new, ls_new);
        }
        const double mu_aff = gap_aff / nu;
        double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3);
        sigma = std::min(std::max(sigma, 0.0), 1.0);

        // Corrector.
        std::vector<ComplexMatrix> h_cor(nb);
        for (int b = 0; b < nb; ++b) {
            const int dim = c.dims[b];
            const ComplexMatrix prod = aff.dlx[b] * aff.dls[b];
            ComplexMatrix target(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    Complex t = -0.5 * (prod(i, j) + std::conj(prod(j, i)));
                    if (i == j) t += sigma * mu - sc[b].lambda[i] * sc[b].lambda[i];
                    target(i, j) = 2.0 * t / (sc[b].lambda[i] + sc[b].lambda[j]);
                }
            h_cor[b] = target;
        }
        const double e_tk = sigma * mu - tau * kappa - aff.dtau * aff.dkappa;
        const Direction dir = newton(1.0 - sigma, h_cor, e_tk);

        double alpha = std::min(1.0, 0.98 * max_step(dir));
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            sol.status = SolveStatus::NumericalFailure;
            break;
        }

        for (int b = 0; b < nb; ++b) {
            x[b] = (x[b] + dir.dx[b] * Complex(alpha, 0.0)).symmetrized();
            s[b] = (s[b] + dir.ds[b] * Complex(alpha, 0.0)).symmetrized();
        }
        for (int i = 0; i < m; ++i) y[i] += alpha * dir.dy[i];
        tau += alpha * dir.dtau;
        kappa += alpha * dir.dkappa;
    }

    {
        std::lock_guard<std::mutex> lock(observer().mutex);
        if (observer().fn) observer().fn(problem, sol);
    }
    return sol;
}

CertificateReport verify_certificate(const SdpProblem &problem, const SdpSolution &solution,
                                     const SdpSettings &settings) {
    CertificateReport rep;
    const int nb = static_cast<int>(problem.block_dims.size());
    const int m = static_cast<int>(problem.constraints.size());

    // Primal feasibility, recomputed from the reported blocks and scalars.
    for (int i = 0; i < m; ++i) {
        const auto &con = problem.constraints[i];
        double v = -con.rhs;
        for (const auto &[b, mat] : con.block_coeffs)
            v += qmath::hs_inner(mat, solution.primal_blocks[b]);
        for (const auto &[f, val] : con.scalar_coeffs) v += val * solution.scalars[f];
        const double viol = con.relation == Relation::Equal ? std::abs(v) : std::max(0.0, v);
        rep.primal_residual = std::max(rep.primal_residual, viol);
    }
    rep.psd_margin = 0.0;
    for (int b = 0; b < nb; ++b)
        rep.psd_margin =
            std::min(rep.psd_margin, qmath::min_eigenvalue(solution.primal_blocks[b], 1e-6));

    // Dual feasibility: Z_b = C_b - sum_i y_i A_{i,b} must be PSD, multipliers
    // of <= rows must be <= 0, and free-scalar stationarity must hold.
    for (int b = 0; b < nb; ++b) {
        ComplexMatrix z = b < static_cast<int>(problem.objective.size()) &&
                                  problem.objective[b].rows() > 0
                              ? problem.objective[b]
                              : ComplexMatrix::zero(problem.block_dims[b], problem.block_dims[b]);
        for (int i = 0; i < m; ++i) {
            const auto &con = problem.constraints[i];
            auto it = con.block_coeffs.find(b);
            if (it == con.block_coeffs.end()) continue;
            z -= it->second * Complex(solution.dual_multipliers[i], 0.0);
        }
        rep.dual_residual =
            std::max(rep.dual_residual, std::max(0.0, -qmath::min_eigenvalue(z.symmetrized(), 1e-6)));
    }
    for (int i = 0; i < m; ++i)
        if (problem.constraints[i].relation == Relation::LessEqual)
            rep.dual_residual = std::max(rep.dual_residual, solution.dual_multipliers[i]);
    for (int f = 0; f < problem.free_scalars; ++f) {
        double st = f < static_cast<int>(problem.objective_scalars.size())
                        ? problem.objective_scalars[f]
                        : 0.0;
        for (int i = 0; i < m; ++i) {
            const auto &con = problem.constraints[i];
            auto it = con.scalar_coeffs.find(f);
            if (it != con.scalar_coeffs.end()) st -= solution.dual_multipliers[i] * it->second;
        }
        rep.dual_residual = std::max(rep.dual_residual, std::abs(st));
    }

    rep.gap = std::abs(solution.primal_value - solution.dual_value);
    const double scale = 1.0 + std::abs(solution.primal_value) + std::abs(solution.dual_value);
    rep.accepted = solution.status == SolveStatus::Optimal &&
                   rep.primal_residual <= 10.0 * settings.feas_tol &&
                   rep.dual_residual <= 10.0 * settings.feas_tol &&
                   rep.psd_margin >= -10.0 * settings.feas_tol &&
                   rep.gap <= 10.0 * settings.gap_tol * scale;
    return rep;
}

}  // namespace vrd::sdp
