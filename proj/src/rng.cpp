#include "nearcrit/rng.hpp"

#include <cmath>
#include <limits>

namespace nearcrit {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t sm = master_seed ^ (stream_index * 0xBF58476D1CE4E5B9ull + 0x9E3779B97F4A7C15ull);
    for (auto& word : s_) word = splitmix64(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    // rejection to kill modulo bias
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

std::uint64_t RngStream::poisson(double rate) {
    if (rate < 0 || !std::isfinite(rate)) throw std::invalid_argument("poisson: rate must be >= 0");
    std::uint64_t total = 0;
    // Poisson(a+b) = Poisson(a) + Poisson(b): peel off bounded chunks so the
    // product method below never underflows
    while (rate > 30.0) {
        double chunk = 30.0;
        const double threshold = std::exp(-chunk);
        std::uint64_t k = 0;
        double prod = 1.0;
        do {
            prod *= uniform01();
            ++k;
        } while (prod > threshold);
        total += k - 1;
        rate -= chunk;
    }
    if (rate == 0.0) return total;
    const double threshold = std::exp(-rate);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
        prod *= uniform01();
        ++k;
    } while (prod > threshold);
    return total + k - 1;
}

std::uint64_t RngStream::geometric_path_length(double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("geometric_path_length: mu must be in (0,1)");
    const double v = 1.0 - uniform01();  // (0,1]
    const double y = std::floor(std::log(v) / std::log(mu));
    if (y >= 9.0e18) throw std::overflow_error("geometric_path_length: overflow");
    return 1 + static_cast<std::uint64_t>(y);
}

double RngStream::normal(double mean, double variance) {
    if (variance < 0) throw std::invalid_argument("normal: variance must be >= 0");
    if (variance == 0) return mean;
    double z;
    if (has_spare_) {
        has_spare_ = false;
        z = spare_normal_;
    } else {
        double x, y, s;
        do {
            x = 2.0 * uniform01() - 1.0;
            y = 2.0 * uniform01() - 1.0;
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        z = x * f;
        spare_normal_ = y * f;
        has_spare_ = true;
    }
    return mean + z * std::sqrt(variance);
}

std::uint64_t RngStream::binomial(std::uint64_t trials, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial: p must be in [0,1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - binomial(trials, 1.0 - p);
    // split so the inversion loop mean stays bounded
    std::uint64_t total = 0;
    while (static_cast<double>(trials) * p > 30.0) {
        const std::uint64_t half = trials / 2;
        total += binomial(half, p);
        trials -= half;
    }
    // BINV inversion
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = static_cast<double>(trials + 1) * s;
    double r = std::exp(static_cast<double>(trials) * std::log1p(-p));
    double u = uniform01();
    std::uint64_t x = 0;
    while (u > r) {
        u -= r;
        ++x;
        if (x > trials) {  // numeric tail guard
            x = trials;
            break;
        }
        r *= (a / static_cast<double>(x) - s);
    }
    return total + x;
}

double conjugate_mu(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0)
        throw std::invalid_argument("conjugate_mu: epsilon must be in (0,2]");
    const double target = (1.0 + epsilon) * std::exp(-(1.0 + epsilon));
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double val = mid * std::exp(-mid);
        if (val < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-17) break;
    }
    return 0.5 * (lo + hi);
}

double borel_pmf(double gamma, std::uint64_t k) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("borel_pmf: gamma in (0,1)");
    if (k == 0) throw std::invalid_argument("borel_pmf: k must be >= 1");
    const double log_core = std::log(gamma) - gamma;  // log(gamma e^-gamma)
    if (k <= 20) {
        double kfact = 1.0;
        for (std::uint64_t i = 2; i <= k; ++i) kfact *= static_cast<double>(i);
        return std::pow(static_cast<double>(k), static_cast<double>(k - 1)) *
               std::exp(log_core * static_cast<double>(k)) / (gamma * kfact);
    }
    const double kd = static_cast<double>(k);
    const double log_p = (kd - 1.0) * std::log(kd) + kd * log_core - std::log(gamma) -
                         std::lgamma(kd + 1.0);
    return std::exp(log_p);
}

ModelParams ModelParams::supercritical(std::uint64_t n, double epsilon) {
    if (n == 0) throw std::invalid_argument("ModelParams: n must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ModelParams: epsilon must be in (0,1)");
    ModelParams p;
    p.n = n;
    p.epsilon = epsilon;
    p.regime = Regime::supercritical;
    p.lambda = epsilon * epsilon * epsilon * static_cast<double>(n);
    p.mu = conjugate_mu(epsilon);
    return p;
}

ModelParams ModelParams::subcritical(std::uint64_t n, double epsilon) {
    if (n == 0) throw std::invalid_argument("ModelParams: n must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ModelParams: epsilon must be in (0,1)");
    ModelParams p;
    p.n = n;
    p.epsilon = epsilon;
    p.regime = Regime::subcritical;
    p.lambda = epsilon * epsilon * epsilon * static_cast<double>(n);
    p.mu = std::numeric_limits<double>::quiet_NaN();
    return p;
}

}  // namespace nearcrit
