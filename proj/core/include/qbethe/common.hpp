#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbethe {

using Complex = std::complex<double>;

/// A lattice point in Z^n (n = size()).
using Point = std::vector<int>;

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ull ^ p.size();
        for (int x : p) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ull +
                 (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Error taxonomy. Everything user-facing derives from Error so the CLI can
// map failures onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct SingularityError : Error {
    using Error::Error;
};

struct InsufficientSupportError : Error {
    Point where;
    explicit InsufficientSupportError(Point p)
        : Error("lattice function evaluated outside its stored support"), where(std::move(p)) {}
};

struct ConvergenceError : Error {
    std::vector<double> last_iterate;
    ConvergenceError(const std::string& msg, std::vector<double> xi)
        : Error(msg), last_iterate(std::move(xi)) {}
};

struct DependencyCycleError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

/// Axis-aligned integer box, used as probe window for lattice functions.
struct Box {
    Point lo, hi;  // inclusive bounds, same dimension

    bool contains(const Point& p) const {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }

    long long point_count() const {
        long long c = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) c *= static_cast<long long>(hi[i] - lo[i] + 1);
        return c;
    }

    Box grown(int margin) const {
        Box b = *this;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            b.lo[i] -= margin;
            b.hi[i] += margin;
        }
        return b;
    }

    template <class F>
    void for_each(F&& f) const {
        Point p = lo;
        if (lo.empty()) {
            f(p);
            return;
        }
        while (true) {
            f(p);
            std::size_t i = 0;
            while (i < p.size()) {
                if (++p[i] <= hi[i]) break;
                p[i] = lo[i];
                ++i;
            }
            if (i == p.size()) return;
        }
    }
};

/// Deterministic low-discrepancy point set (additive Weyl recurrence on
/// irrational multiples). Used for reproducible parameter grids.
class LowDiscrepancy {
public:
    explicit LowDiscrepancy(std::uint64_t seed) : seed_(seed) {}

    /// Component i of point k, in [0,1).
    double component(std::uint64_t k, int i) const;

private:
    std::uint64_t seed_;
};

/// Worker cap from QBETHE_THREADS (0 = hardware default).
int thread_cap();

/// Runs fn(0..count-1), possibly concurrently. Results must be written to
/// pre-sized slots indexed by the argument so output stays deterministic.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace qbethe
