#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chernlink/model.hpp"

namespace chernlink {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    Complex value;
};

/// Sparse complex matrix in triplet form, sorted by (row, col) with
/// duplicates merged.
class LatticeMatrix {
public:
    explicit LatticeMatrix(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<Triplet>& entries() const noexcept { return entries_; }

    /// Adds `value` at (row, col). Call finalize() before reading entries.
    void add(std::size_t row, std::size_t col, Complex value);
    void finalize();

    /// Entry accessor (binary search); zero when absent.
    Complex at(std::size_t row, std::size_t col) const;
    /// Overwrites or inserts one entry; keeps the matrix finalized.
    void set(std::size_t row, std::size_t col, Complex value);

    /// max |H_ij - conj(H_ji)|.
    double hermiticity_residual() const;

    /// Sorted eigenvalues via dense diagonalization; dimension capped at 2048.
    std::vector<double> eigenvalues() const;

private:
    std::size_t dimension_;
    std::vector<Triplet> entries_;
    bool finalized_ = true;
};

/// Index of orbital `s` (0 = A, 1 = B) in unit cell (l, j) of an n x n torus.
inline std::size_t site_index(int l, int j, int s, int n) {
    return 2 * (static_cast<std::size_t>(j) * n + l) + s;
}

/// Real-space Hamiltonian of the 2D model on an n x n periodic lattice:
/// x couplings d_n^x = chain1 hoppings, y couplings d_n^y = -chain2 hoppings,
/// on-site term onsite1 - onsite2. Requires n > 2 * model.range().
LatticeMatrix build_real_space(const SeparableModel& model, int n);

/// The two 1D chains H1 (chain1 couplings) and H2 (minus the 2D y couplings,
/// i.e. chain2), each on an n-cell ring.
std::pair<LatticeMatrix, LatticeMatrix> extract_chains(const SeparableModel& model, int n);

/// Real-space ring Hamiltonian of a single chain.
LatticeMatrix build_chain(const ChainSpec& chain, int n);

/// Fourier-transforms each unit cell's row blocks of a 2D lattice matrix,
///   h_R(k) = sum_{R'} B(R, R') e^{i k.(R' - R)},
/// and returns max over cells R and the n x n grid of the max-entry norm of
/// h_R(k) - (r1(kx) - r2(ky)).sigma.
double separability_deviation(const LatticeMatrix& h, const SeparableModel& model, int n);
/// Builds the 2D lattice and checks it.
double verify_separability(const SeparableModel& model, int n);

/// Same per-cell transform for a ring Hamiltonian against chain.
double chain_decomposition_deviation(const LatticeMatrix& h, const ChainSpec& chain, int n);

/// Sorted multiset {+-|r(k)|} over k = 2 pi i / n.
std::vector<double> bloch_spectrum_1d(const ChainSpec& chain, int n);
/// Sorted multiset {+-|r(kx, ky)|} over the n x n grid.
std::vector<double> bloch_spectrum_2d(const SeparableModel& model, int n);

/// max |a_i - b_i| of two sorted spectra; infinity if sizes differ.
double spectrum_deviation(const std::vector<double>& a, const std::vector<double>& b);

} // namespace chernlink
