#include "chernlink/lattice.hpp"

#include <Eigen/Dense>
#include <array>
#include <algorithm>
#include <limits>
#include <string>

#include "chernlink/errors.hpp"

namespace chernlink {

namespace {

constexpr std::size_t kMaxDenseDimension = 2048;

bool triplet_less(const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// d.sigma as a 2x2 matrix, row-major: [[dz, dx - i dy], [dx + i dy, -dz]].
std::array<Complex, 4> pauli_block(const CVec3& d) {
    const Complex i(0.0, 1.0);
    return {d.z, d.x - i * d.y, d.x + i * d.y, -d.z};
}

std::array<Complex, 4> pauli_block(const Vec3& r) { return pauli_block(CVec3{r.x, r.y, r.z}); }

CVec3 scaled(const CVec3& d, double s) { return {d.x * s, d.y * s, d.z * s}; }

void check_size(const SeparableModel& model, int n) {
    if (n <= 2 * model.range()) {
        throw ContractViolation("lattice of " + std::to_string(n) + " cells too small for coupling range " +
                                std::to_string(model.range()) + " (need n > 2 * range)");
    }
}

// Adds block . psi_{from}^dagger ... psi_{to} + H.c.
void add_bond(LatticeMatrix& h, std::size_t from, std::size_t to, const std::array<Complex, 4>& b) {
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            const Complex v = b[2 * s + t];
            if (v == Complex{}) continue;
            h.add(from + s, to + t, v);
            h.add(to + t, from + s, std::conj(v));
        }
    }
}

void add_onsite(LatticeMatrix& h, std::size_t at, const Vec3& r) {
    const auto b = pauli_block(r);
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            if (b[2 * s + t] != Complex{}) h.add(at + s, at + t, b[2 * s + t]);
        }
    }
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Minimal-image displacement on a ring of n cells.
int displacement(int from, int to, int n) {
    int d = wrap(to - from, n);
    if (d > n / 2) d -= n;
    return d;
}

double block_deviation(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
    double worst = 0.0;
    for (int e = 0; e < 4; ++e) worst = std::max(worst, std::abs(a[e] - b[e]));
    return worst;
}

} // namespace

void LatticeMatrix::add(std::size_t row, std::size_t col, Complex value) {
    if (row >= dimension_ || col >= dimension_) throw ContractViolation("LatticeMatrix: index out of range");
    entries_.push_back({row, col, value});
    finalized_ = false;
}

void LatticeMatrix::finalize() {
    if (finalized_) return;
    std::stable_sort(entries_.begin(), entries_.end(), triplet_less);
    std::vector<Triplet> merged;
    merged.reserve(entries_.size());
    for (const auto& t : entries_) {
        if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
            merged.back().value += t.value;
        } else {
            merged.push_back(t);
        }
    }
    entries_ = std::move(merged);
    finalized_ = true;
}

Complex LatticeMatrix::at(std::size_t row, std::size_t col) const {
    const Triplet key{row, col, {}};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, triplet_less);
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return {};
}

void LatticeMatrix::set(std::size_t row, std::size_t col, Complex value) {
    finalize();
    const Triplet key{row, col, value};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, triplet_less);
    if (it != entries_.end() && it->row == row && it->col == col) {
        it->value = value;
    } else {
        entries_.insert(it, key);
    }
}

double LatticeMatrix::hermiticity_residual() const {
    double worst = 0.0;
    for (const auto& t : entries_) worst = std::max(worst, std::abs(t.value - std::conj(at(t.col, t.row))));
    return worst;
}

std::vector<double> LatticeMatrix::eigenvalues() const {
    if (dimension_ > kMaxDenseDimension) {
        throw ContractViolation("LatticeMatrix::eigenvalues: dimension " + std::to_string(dimension_) +
                                " exceeds the dense limit");
    }
    const auto dim = static_cast<Eigen::Index>(dimension_);
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : entries_) dense(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

LatticeMatrix build_real_space(const SeparableModel& model, int n) {
    check_size(model, n);
    LatticeMatrix h(2 * static_cast<std::size_t>(n) * n);
    const Vec3 onsite = model.chain1.onsite() - model.chain2.onsite();
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const std::size_t here = site_index(l, j, 0, n);
            add_onsite(h, here, onsite);
            for (const auto& hop : model.chain1.hoppings()) {
                add_bond(h, here, site_index(wrap(l + hop.range, n), j, 0, n), pauli_block(hop.d));
            }
            for (const auto& hop : model.chain2.hoppings()) {
                add_bond(h, here, site_index(l, wrap(j + hop.range, n), 0, n), pauli_block(scaled(hop.d, -1.0)));
            }
        }
    }
    h.finalize();
    return h;
}

LatticeMatrix build_chain(const ChainSpec& chain, int n) {
    if (n <= 2 * chain.range()) {
        throw ContractViolation("ring of " + std::to_string(n) + " cells too small for coupling range " +
                                std::to_string(chain.range()));
    }
    LatticeMatrix h(2 * static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        const std::size_t here = 2 * static_cast<std::size_t>(l);
        add_onsite(h, here, chain.onsite());
        for (const auto& hop : chain.hoppings()) {
            add_bond(h, here, 2 * static_cast<std::size_t>(wrap(l + hop.range, n)), pauli_block(hop.d));
        }
    }
    h.finalize();
    return h;
}

std::pair<LatticeMatrix, LatticeMatrix> extract_chains(const SeparableModel& model, int n) {
    check_size(model, n);
    // H2 = -(y couplings of the 2D lattice) = +chain2 couplings.
    return {build_chain(model.chain1, n), build_chain(model.chain2, n)};
}

double separability_deviation(const LatticeMatrix& h, const SeparableModel& model, int n) {
    if (h.dimension() != 2 * static_cast<std::size_t>(n) * n) {
        throw ContractViolation("separability_deviation: matrix dimension does not match lattice size");
    }
    std::vector<Vec3> r1(n), r2(n);
    for (int i = 0; i < n; ++i) {
        r1[i] = bloch_vector_1d(model.chain1, kTwoPi * i / n);
        r2[i] = bloch_vector_1d(model.chain2, kTwoPi * i / n);
    }

    // Row blocks grouped by source cell; entries are sorted by row.
    const auto& entries = h.entries();
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    double worst = 0.0;
    std::size_t cursor = 0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const int l0 = static_cast<int>(cell % n);
        const int j0 = static_cast<int>(cell / n);
        const std::size_t begin = cursor;
        while (cursor < entries.size() && entries[cursor].row / 2 == cell) ++cursor;

        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const double kx = kTwoPi * ix / n;
                const double ky = kTwoPi * iy / n;
                std::array<Complex, 4> block{};
                for (std::size_t e = begin; e < cursor; ++e) {
                    const auto& t = entries[e];
                    const std::size_t to = t.col / 2;
                    const int dl = displacement(l0, static_cast<int>(to % n), n);
                    const int dj = displacement(j0, static_cast<int>(to / n), n);
                    block[2 * (t.row % 2) + (t.col % 2)] += t.value * std::polar(1.0, kx * dl + ky * dj);
                }
                worst = std::max(worst, block_deviation(block, pauli_block(r1[ix] - r2[iy])));
            }
        }
    }
    return worst;
}

double verify_separability(const SeparableModel& model, int n) {
    return separability_deviation(build_real_space(model, n), model, n);
}

double chain_decomposition_deviation(const LatticeMatrix& h, const ChainSpec& chain, int n) {
    if (h.dimension() != 2 * static_cast<std::size_t>(n)) {
        throw ContractViolation("chain_decomposition_deviation: matrix dimension does not match ring size");
    }
    const auto& entries = h.entries();
    double worst = 0.0;
    std::size_t cursor = 0;
    for (int cell = 0; cell < n; ++cell) {
        const std::size_t begin = cursor;
        while (cursor < entries.size() && entries[cursor].row / 2 == static_cast<std::size_t>(cell)) ++cursor;
        for (int ik = 0; ik < n; ++ik) {
            const double k = kTwoPi * ik / n;
            std::array<Complex, 4> block{};
            for (std::size_t e = begin; e < cursor; ++e) {
                const auto& t = entries[e];
                const int dl = displacement(cell, static_cast<int>(t.col / 2), n);
                block[2 * (t.row % 2) + (t.col % 2)] += t.value * std::polar(1.0, k * dl);
            }
            worst = std::max(worst, block_deviation(block, pauli_block(bloch_vector_1d(chain, k))));
        }
    }
    return worst;
}

std::vector<double> bloch_spectrum_1d(const ChainSpec& chain, int n) {
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double e = norm(bloch_vector_1d(chain, kTwoPi * i / n));
        out.push_back(e);
        out.push_back(-e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> bloch_spectrum_2d(const SeparableModel& model, int n) {
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double e = norm(bloch_vector_2d(model, kTwoPi * ix / n, kTwoPi * iy / n));
            out.push_back(e);
            out.push_back(-e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double spectrum_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace chernlink
