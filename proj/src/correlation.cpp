// SPDX-License-Identifier: Apache-2.0
//
// risemi - simulation of electromagnetic interference in RIS-aided links
// Copyright (C) 2026 The risemi developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risemi/correlation.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

extern "C" void zheevr_(const char *jobz, const char *range, const char *uplo, const int *n, std::complex<double> *a,
                        const int *lda, const double *vl, const double *vu, const int *il, const int *iu,
                        const double *abstol, int *m, double *w, std::complex<double> *z, const int *ldz, int *isuppz,
                        std::complex<double> *work, const int *lwork, double *rwork, const int *lrwork, int *iwork,
                        const int *liwork, int *info, std::size_t, std::size_t, std::size_t);

namespace risemi
{
    HermitianEigen hermitian_eigen(const arma::cx_mat &m)
    {
        if (m.n_rows != m.n_cols)
            throw std::invalid_argument("Eigendecomposition needs a square matrix.");
        HermitianEigen out;
        if (m.n_rows == 0)
            return out;
        if (m.n_rows > static_cast<arma::uword>(std::numeric_limits<int>::max()))
            throw std::invalid_argument("Matrix too large for the LAPACK eigensolver.");

        // zheevr (MRRR). Avoids the divide-and-conquer drivers, which go through real GEMM.
        const int n = static_cast<int>(m.n_rows);
        arma::cx_mat a = m;
        out.values.set_size(m.n_rows);
        out.vectors.set_size(m.n_rows, m.n_rows);
        std::vector<int> isuppz(2 * m.n_rows);
        const double vl = 0.0, vu = 0.0, abstol = 0.0;
        const int il = 0, iu = 0;
        int found = 0, info = 0;

        int lwork = -1, lrwork = -1, liwork = -1, iwork_query = 0;
        cx work_query;
        double rwork_query = 0.0;
        zheevr_("V", "A", "U", &n, a.memptr(), &n, &vl, &vu, &il, &iu, &abstol, &found, out.values.memptr(),
                out.vectors.memptr(), &n, isuppz.data(), &work_query, &lwork, &rwork_query, &lrwork,
                &iwork_query, &liwork, &info, 1, 1, 1);
        if (info != 0)
            throw NotCorrelationError("Hermitian eigendecomposition failed (workspace query).");
        lwork = static_cast<int>(work_query.real());
        lrwork = static_cast<int>(rwork_query);
        liwork = iwork_query;
        std::vector<cx> work(static_cast<std::size_t>(lwork));
        std::vector<double> rwork(static_cast<std::size_t>(lrwork));
        std::vector<int> iwork(static_cast<std::size_t>(liwork));
        zheevr_("V", "A", "U", &n, a.memptr(), &n, &vl, &vu, &il, &iu, &abstol, &found, out.values.memptr(),
                out.vectors.memptr(), &n, isuppz.data(), work.data(), &lwork, rwork.data(), &lrwork,
                iwork.data(), &liwork, &info, 1, 1, 1);
        if (info != 0 || found != n)
            throw NotCorrelationError("Hermitian eigendecomposition failed (zheevr info " + std::to_string(info) + ").");
        return out;
    }

    arma::cx_mat sqrt_factor(const HermitianEigen &eig)
    {
        const std::size_t n = eig.values.n_elem;
        if (n == 0)
            return {};
        const double lmax = eig.values.max();
        const double lmin = eig.values.min();
        if (!(lmax > 0.0))
            throw NotCorrelationError("Not a correlation matrix: largest eigenvalue is not positive.");
        if (lmin < -psd_clip_tolerance * lmax)
        {
            std::ostringstream os;
            os << "Not a correlation matrix: eigenvalue " << lmin << " below -" << psd_clip_tolerance << " * " << lmax;
            throw NotCorrelationError(os.str());
        }
        arma::vec s = arma::sqrt(arma::clamp(eig.values, 0.0, arma::datum::inf));
        arma::cx_mat f = eig.vectors;
        f.each_row() %= arma::conv_to<arma::cx_rowvec>::from(s.t());
        return f;
    }

    arma::cx_mat sqrt_factor(const arma::cx_mat &r)
    {
        return sqrt_factor(hermitian_eigen(r));
    }

    CorrelationMatrix::CorrelationMatrix(arma::cx_mat entries, CorrelationSource source, std::string description, std::string warning)
        : entries_(std::move(entries)), source_(source), description_(std::move(description)), warning_(std::move(warning))
    {
        if (entries_.n_rows != entries_.n_cols)
            throw std::invalid_argument("Correlation matrix must be square.");
    }

    const HermitianEigen &CorrelationMatrix::eigen() const
    {
        std::call_once(cache_->eig_once, [this]
                       { cache_->eig = hermitian_eigen(entries_); });
        return cache_->eig;
    }

    const arma::cx_mat &CorrelationMatrix::sqrt_factor() const
    {
        std::call_once(cache_->factor_once, [this]
                       { cache_->factor = risemi::sqrt_factor(eigen()); });
        return cache_->factor;
    }

    double CorrelationMatrix::spectral_norm() const
    {
        const auto &e = eigen();
        return e.values.is_empty() ? 0.0 : arma::abs(e.values).max();
    }

    double CorrelationMatrix::trace_over_n() const
    {
        return dim() == 0 ? 0.0 : std::real(arma::trace(entries_)) / static_cast<double>(dim());
    }

    double sinc(double x)
    {
        if (x == 0.0)
            return 1.0;
        const double px = pi * x;
        return std::sin(px) / px;
    }

    CorrelationMatrix sinc_correlation(const RisGeometry &geometry)
    {
        const std::size_t n = geometry.n_elements;
        if (geometry.positions.n_cols != n)
            throw std::invalid_argument("Geometry positions do not match the element count.");

        arma::cx_mat r(n, n);
        for (std::size_t col = 0; col < n; ++col)
        {
            r(col, col) = 1.0;
            for (std::size_t row = 0; row < col; ++row)
            {
                const double dist = arma::norm(geometry.positions.col(row) - geometry.positions.col(col));
                const double v = sinc(2.0 * dist / geometry.wavelength);
                r(row, col) = v;
                r(col, row) = v;
            }
        }
        return {std::move(r), CorrelationSource::sinc_isotropic, "sinc-isotropic"};
    }

    namespace
    {
        // Plane-wave phasors exp(j k_q^T u_n) for one block of quadrature nodes, N x block.
        // The grid is separable: the phase is k_y x_n + k_z y_n.
        arma::cx_mat node_phasors(const RisGeometry &geometry, const QuadratureRule &rule,
                                  const arma::uvec &nodes)
        {
            const std::size_t n = geometry.n_elements;
            const std::size_t side = geometry.side();
            const double d = geometry.spacing();
            const double center = 0.5 * static_cast<double>(side - 1);
            const double k = 2.0 * pi / geometry.wavelength;

            arma::cx_mat e(n, nodes.n_elem);
            std::vector<cx> col_phase(side), row_phase(side);
            for (std::size_t b = 0; b < nodes.n_elem; ++b)
            {
                const std::size_t q = nodes[b];
                const double ky = k * std::cos(rule.elevation[q]) * std::sin(rule.azimuth[q]);
                const double kz = k * std::sin(rule.elevation[q]);
                for (std::size_t i = 0; i < side; ++i)
                {
                    const double off = static_cast<double>(i) - center;
                    col_phase[i] = std::polar(1.0, surface_phase(arma::vec3{0.0, ky, kz}, d * off, 0.0));
                    row_phase[i] = std::polar(1.0, surface_phase(arma::vec3{0.0, ky, kz}, 0.0, -d * off));
                }
                cx *out = e.colptr(b);
                for (std::size_t m = 0; m < n; ++m)
                    out[m] = col_phase[m % side] * row_phase[m / side];
            }
            return e;
        }

        arma::uvec active_nodes(const arma::vec &wf)
        {
            return arma::find(wf != 0.0);
        }

        constexpr std::size_t node_block = 1024;

        // Full matrix sum_q wf_q e_q e_q^H, accumulated over node blocks.
        arma::cx_mat accumulate_full(const RisGeometry &geometry, const QuadratureRule &rule, const arma::vec &wf)
        {
            const std::size_t n = geometry.n_elements;
            const arma::uvec active = active_nodes(wf);
            arma::cx_mat r(n, n, arma::fill::zeros);
            for (std::size_t start = 0; start < active.n_elem; start += node_block)
            {
                const std::size_t stop = std::min<std::size_t>(active.n_elem, start + node_block);
                const arma::uvec blk = active.subvec(start, stop - 1);
                arma::cx_mat e = node_phasors(geometry, rule, blk);
                arma::cx_mat ew = e;
                ew.each_row() %= arma::conv_to<arma::cx_rowvec>::from(wf.elem(blk).t());
                r += ew * e.t();
            }
            return r;
        }

        // First row only: sum_q wf_q e_q[0] conj(e_q[m]).
        arma::cx_rowvec accumulate_first_row(const RisGeometry &geometry, const QuadratureRule &rule, const arma::vec &wf)
        {
            const std::size_t n = geometry.n_elements;
            const arma::uvec active = active_nodes(wf);
            arma::cx_rowvec row(n, arma::fill::zeros);
            for (std::size_t start = 0; start < active.n_elem; start += node_block)
            {
                const std::size_t stop = std::min<std::size_t>(active.n_elem, start + node_block);
                const arma::uvec blk = active.subvec(start, stop - 1);
                arma::cx_mat e = node_phasors(geometry, rule, blk);
                arma::cx_rowvec coef = e.row(0) % arma::conv_to<arma::cx_rowvec>::from(wf.elem(blk).t());
                row += coef * e.t();
            }
            return row;
        }

        arma::vec weighted_density(const AngularDensity &density, const QuadratureRule &rule)
        {
            arma::vec wf = rule.weight % density.at_nodes(rule);
            if (!wf.is_finite())
                throw IntegrationError("Non-finite density value on the quadrature rule for " + density.key());
            return wf;
        }
    } // namespace

    CorrelationMatrix quadrature_correlation(const RisGeometry &geometry, const AngularDensity &density,
                                             const QuadratureRule &rule, const QuadratureOptions &options)
    {
        const std::size_t n = geometry.n_elements;
        if (geometry.positions.n_cols != n)
            throw std::invalid_argument("Geometry positions do not match the element count.");
        if (rule.size() == 0)
            throw std::invalid_argument("Empty quadrature rule.");

        const arma::vec wf = weighted_density(density, rule);
        arma::cx_mat r = accumulate_full(geometry, rule, wf);

        // Upper triangle is authoritative; the lower one is its conjugate mirror.
        for (std::size_t col = 0; col < n; ++col)
        {
            r(col, col) = 1.0;
            for (std::size_t row = col + 1; row < n; ++row)
                r(row, col) = std::conj(r(col, row));
        }

        std::string warning;
        if (options.check_convergence && n > 1)
        {
            const QuadratureRule fine = QuadratureRule::gauss_legendre(2 * rule.nodes_per_axis);
            AngularDensity fine_density = density;
            if (density.kind == DensityKind::gaussian)
                fine_density = gaussian_density(density.mean_azimuth, density.mean_elevation,
                                                density.std_azimuth, density.std_elevation, fine);
            const arma::cx_rowvec fine_row = accumulate_first_row(geometry, fine, weighted_density(fine_density, fine));
            arma::cx_rowvec coarse_row = r.row(0);
            const double diff = arma::abs(fine_row.cols(1, n - 1) - coarse_row.cols(1, n - 1)).max();
            if (!(diff <= options.convergence_tolerance))
            {
                std::ostringstream os;
                os << "quadrature self-convergence failed: doubling nodes changes entries by " << diff
                   << " (tolerance " << options.convergence_tolerance << ", " << rule.nodes_per_axis << " nodes/axis)";
                warning = os.str();
            }
        }

        std::ostringstream desc;
        desc << "quadrature(" << density.key() << "," << rule.nodes_per_axis << ")";
        return {std::move(r), CorrelationSource::quadrature, desc.str(), warning};
    }

    void write_correlation_csv(const CorrelationMatrix &r, std::ostream &os)
    {
        os << "# risemi correlation matrix N=" << r.dim() << " source=" << r.description() << "\n";
        os << "row,col,re,im\n";
        char buf[96];
        for (std::size_t i = 0; i < r.dim(); ++i)
            for (std::size_t j = 0; j < r.dim(); ++j)
            {
                std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", i + 1, j + 1,
                              r.entries()(i, j).real(), r.entries()(i, j).imag());
                os << buf;
            }
    }

} // namespace risemi
