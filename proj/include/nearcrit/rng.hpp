#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace nearcrit {

/// Thrown when a computation exceeds a hard resource cap (tree size,
/// walk iterations, enumeration work). CLI maps this to exit code 3.
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic seeded stream: xoshiro256** whose state is filled by
/// SplitMix64 of master_seed XOR a mixed stream_index. Equal
/// (master_seed, stream_index) pairs reproduce the exact draw sequence;
/// distinct stream indices give independent streams for practical purposes.
/// Single-owner: not safe for concurrent use.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64();
    double uniform01();  // 53-bit uniform in [0,1)
    std::uint64_t uniform_below(std::uint64_t n);  // unbiased in [0,n)

    std::uint64_t poisson(double rate);
    /// Geom(1-mu) on {1,2,...}: P(Y=k) = (1-mu) mu^(k-1).
    std::uint64_t geometric_path_length(double mu);
    double normal(double mean, double variance);
    std::uint64_t binomial(std::uint64_t trials, double p);

private:
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
    std::array<std::uint64_t, 4> s_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Solves mu e^(-mu) = (1+eps) e^(-(1+eps)) on (0,1) by bisection
/// (x e^(-x) is strictly increasing there). Residual <= 1e-14.
double conjugate_mu(double epsilon);

/// Borel(gamma) pmf k^(k-1) (gamma e^(-gamma))^k / (gamma k!),
/// evaluated in log space for k > 20.
double borel_pmf(double gamma, std::uint64_t k);

enum class Regime { supercritical, subcritical };

struct ModelParams {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    Regime regime = Regime::supercritical;
    double lambda = 0.0;  // eps^3 * n
    double mu = 0.0;      // conjugate parameter; meaningful in the supercritical regime only

    static ModelParams supercritical(std::uint64_t n, double epsilon);
    static ModelParams subcritical(std::uint64_t n, double epsilon);
};

}  // namespace nearcrit
