// Frequency tuples on the zero-sum hyperplane: the index set of the
// multilinear lattice functionals. Slot convention: odd slots (1-based
// 1,3,5) pair with plain factors, even slots with conjugated ones, and the
// membership constraint is xi_1 + ... + xi_k = 0.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace imlab {

using Vec3 = std::array<double, 3>;

inline Vec3 vadd(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 vsub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 vneg(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec3 vscale(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline double vdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double vnorm2(const Vec3& a) { return vdot(a, a); }
inline double vnorm(const Vec3& a) { return std::sqrt(vnorm2(a)); }

class FrequencyTuple {
public:
    // Validating constructor: |sum| <= 1e-12 * max(1, max_j |xi_j|).
    FrequencyTuple(int k, const std::array<Vec3, 6>& xs) : k_(k), xs_(xs) {
        if (k != 4 && k != 6) throw std::invalid_argument("FrequencyTuple: arity must be 4 or 6");
        Vec3 sum{0.0, 0.0, 0.0};
        double scale = 1.0;
        for (int j = 0; j < k; ++j) {
            sum = vadd(sum, xs_[j]);
            scale = std::max(scale, vnorm(xs_[j]));
        }
        if (vnorm(sum) > 1.0e-12 * scale)
            throw std::invalid_argument("FrequencyTuple: frequencies do not sum to zero");
    }

    // For callers whose construction is zero-sum by algebra (lattice drivers,
    // slot permutations); skips the tolerance check.
    static FrequencyTuple unchecked(int k, const std::array<Vec3, 6>& xs) {
        return FrequencyTuple(k, xs, 0);
    }

    static FrequencyTuple quad(const Vec3& x1, const Vec3& x2, const Vec3& x3, const Vec3& x4) {
        return FrequencyTuple(4, {x1, x2, x3, x4, Vec3{}, Vec3{}});
    }

    int arity() const { return k_; }
    const Vec3& xi(int slot) const { return xs_[static_cast<std::size_t>(slot - 1)]; }  // 1-based

    Vec3 xi12() const { return vadd(xs_[0], xs_[1]); }
    Vec3 xi14() const { return vadd(xs_[0], xs_[3]); }
    Vec3 xi123() const { return vadd(vadd(xs_[0], xs_[1]), xs_[2]); }

private:
    FrequencyTuple(int k, const std::array<Vec3, 6>& xs, int) : k_(k), xs_(xs) {}

    int k_;
    std::array<Vec3, 6> xs_;
};

}  // namespace imlab
