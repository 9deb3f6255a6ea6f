#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dunkl/linalg.hpp"

namespace dunkl {

enum class RootFamily { A1Product, Dihedral, BRank2, Custom };

std::string to_string(RootFamily family);
RootFamily root_family_from_string(const std::string& name);

/// Family-specific construction parameters.
///
/// A1Product: `dimension` d, `k` of size 1 (broadcast) or d.
/// Dihedral:  `order` n >= 2, `k` of size 1 or 2 (even/odd root classes).
/// BRank2:    `k` of size 1 or 2 (short, long).
/// Custom:    `dimension`, `roots` (|alpha|^2 = 2), `k` of size 1 or |roots|.
struct RootSystemParams {
    int dimension = 0;
    int order = 0;
    std::vector<double> k;
    std::vector<Vec> roots;
};

/// Finite root system with a W-invariant multiplicity function.
///
/// Only positive roots are stored (one representative per +-pair, the one
/// whose first nonzero coordinate is positive). Every root has squared
/// length 2. Instances are immutable once built.
class RootSystem {
public:
    static RootSystem build(RootFamily family, const RootSystemParams& params);

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] RootFamily family() const noexcept { return family_; }
    [[nodiscard]] std::span<const Vec> positive_roots() const noexcept { return roots_; }
    [[nodiscard]] std::span<const double> multiplicities() const noexcept { return k_; }
    [[nodiscard]] std::size_t size() const noexcept { return roots_.size(); }

    /// The full system R = R_+ u (-R_+), positives first.
    [[nodiscard]] std::vector<Vec> full_system() const;
    [[nodiscard]] std::vector<double> full_multiplicities() const;

    /// m = d + sum over the full system of k(alpha).
    [[nodiscard]] double effective_dimension() const noexcept { return m_; }

    /// w_k(x) = prod over the full system of |<x, alpha>|^k(alpha).
    [[nodiscard]] double weight(const Vec& x) const;

private:
    RootSystem() = default;

    RootFamily family_ = RootFamily::Custom;
    int dimension_ = 0;
    std::vector<Vec> roots_;
    std::vector<double> k_;
    double m_ = 0.0;
};

/// sigma_alpha(x) = x - 2 <alpha, x> / |alpha|^2 alpha
Vec reflect(const Vec& alpha, const Vec& x);

/// I - 2 alpha alpha^T / |alpha|^2
Mat reflection_matrix(const Vec& alpha);

struct GroupElement {
    Mat matrix;
    int word_length = 0;
};

inline constexpr std::size_t kDefaultGroupCap = 10000;

/// Breadth-first closure of the generator reflections. The identity comes
/// first; elements are deduplicated at matrix distance 1e-8.
std::vector<GroupElement> enumerate_group(const RootSystem& sys, std::size_t cap = kDefaultGroupCap);

inline double effective_dimension(const RootSystem& sys) noexcept {
    return sys.effective_dimension();
}

}  // namespace dunkl
