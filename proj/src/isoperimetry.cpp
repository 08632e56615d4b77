#include "nearcrit/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nearcrit {

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

bool rational_less(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational isoperimetric_number(const MultiGraph& g) {
    const VertexId n = g.vertex_count();
    if (n > 24)
        throw std::invalid_argument(
            "isoperimetric_number: exhaustive enumeration limited to 24 vertices; "
            "use conductance_profile sampling for larger graphs");
    if (n == 0) throw std::invalid_argument("isoperimetric_number: empty graph");
    const std::uint64_t e = g.edge_count();

    std::vector<char> in_s(n, 0);
    std::int64_t vol = 0, boundary = 0;
    bool found = false;
    Rational best{0, 1};
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t i = 1; i < limit; ++i) {
        const int v = std::countr_zero(i);  // Gray code neighbor: flip bit ctz(i)
        if (!in_s[v]) {
            in_s[v] = 1;
            vol += g.degree(v);
            for (const HalfEdge& h : g.incident(v)) {
                if (h.neighbor == static_cast<VertexId>(v)) continue;
                boundary += in_s[h.neighbor] ? -1 : 1;
            }
        } else {
            in_s[v] = 0;
            vol -= g.degree(v);
            for (const HalfEdge& h : g.incident(v)) {
                if (h.neighbor == static_cast<VertexId>(v)) continue;
                boundary += in_s[h.neighbor] ? 1 : -1;
            }
        }
        if (vol == 0 || vol > static_cast<std::int64_t>(e)) continue;
        const Rational frac = Rational::make(boundary, vol);
        if (!found || rational_less(frac, best)) {
            best = frac;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("isoperimetric_number: no admissible subset");
    return best;
}

namespace {

/// Phi(S) = |dS| e / (vol (2e - vol)) for the lazy walk; exact in integers
/// up to the final division.
double phi_of(std::uint64_t boundary, std::uint64_t vol, std::uint64_t e) {
    return static_cast<double>(boundary) * static_cast<double>(e) /
           (static_cast<double>(vol) * static_cast<double>(2 * e - vol));
}

int bucket_count(const MultiGraph& g) {
    const std::uint64_t two_e = 2ull * g.edge_count();
    std::uint64_t dmin = ~0ull;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        dmin = std::min<std::uint64_t>(dmin, g.degree(v));
    if (dmin == 0) throw std::invalid_argument("conductance_profile: zero-degree vertex");
    int j = 0;
    while ((dmin << j) < two_e) ++j;  // smallest j with 2^j >= 1/pi_min
    return std::max(j, 1);
}

bool in_bucket(std::uint64_t vol, std::uint64_t two_e, int j) {
    // 2^(-j-1) <= vol/2e <= 2^(-j), tested in exact integers
    if (j + 1 >= 63) return false;
    return (vol << (j + 1)) >= two_e && (vol << j) <= two_e;
}

struct ProfileAccumulator {
    std::uint64_t two_e;
    std::uint64_t e;
    int buckets;
    std::vector<double> best;

    explicit ProfileAccumulator(const MultiGraph& g)
        : two_e(2ull * g.edge_count()), e(g.edge_count()), buckets(bucket_count(g)),
          best(buckets, 1.0) {}

    void offer(std::uint64_t boundary, std::uint64_t vol) {
        if (vol == 0 || vol >= two_e) return;
        for (int j = 1; j <= buckets; ++j)
            if (in_bucket(vol, two_e, j))
                best[j - 1] = std::min(best[j - 1], phi_of(boundary, vol, e));
    }
};

constexpr std::uint64_t kEnumerationCap = 50'000'000;

class ConnectedEnumerator {
public:
    ConnectedEnumerator(const MultiGraph& g, ProfileAccumulator& acc)
        : g_(g), acc_(acc), in_s_(g.vertex_count(), 0), banned_(g.vertex_count(), 0) {}

    void run() {
        const VertexId n = g_.vertex_count();
        for (VertexId root = 0; root < n; ++root) {
            // sets whose minimum vertex is `root`: vertices below it stay banned
            std::fill(banned_.begin(), banned_.end(), 0);
            for (VertexId v = 0; v < root; ++v) banned_[v] = 1;
            add(root);
            std::vector<VertexId> ext;
            for (const HalfEdge& h : g_.incident(root))
                if (!banned_[h.neighbor] && !in_s_[h.neighbor] && h.neighbor != root) {
                    ext.push_back(h.neighbor);
                    banned_[h.neighbor] = 1;  // queued: do not re-add to later frontiers
                }
            extend(ext);
            remove(root);
        }
    }

private:
    void add(VertexId v) {
        in_s_[v] = 1;
        vol_ += g_.degree(v);
        for (const HalfEdge& h : g_.incident(v)) {
            if (h.neighbor == v) continue;
            boundary_ += in_s_[h.neighbor] ? -1 : 1;
        }
        if (++reported_ > kEnumerationCap)
            throw ResourceCapError(
                "conductance_profile: exact enumeration work cap exceeded; use sampled mode");
        acc_.offer(static_cast<std::uint64_t>(boundary_), static_cast<std::uint64_t>(vol_));
    }

    void remove(VertexId v) {
        in_s_[v] = 0;
        vol_ -= g_.degree(v);
        for (const HalfEdge& h : g_.incident(v)) {
            if (h.neighbor == v) continue;
            boundary_ += in_s_[h.neighbor] ? 1 : -1;
        }
    }

    /// Branch over the frontier: each candidate is either taken (extending
    /// the frontier with its new neighbors) or dropped for good.
    void extend(const std::vector<VertexId>& ext) {
        for (std::size_t i = 0; i < ext.size(); ++i) {
            const VertexId u = ext[i];
            add(u);
            std::vector<VertexId> next(ext.begin() + i + 1, ext.end());
            std::vector<VertexId> newly;
            for (const HalfEdge& h : g_.incident(u))
                if (!banned_[h.neighbor] && !in_s_[h.neighbor]) {
                    next.push_back(h.neighbor);
                    newly.push_back(h.neighbor);
                    banned_[h.neighbor] = 1;
                }
            extend(next);
            for (VertexId w : newly) banned_[w] = 0;
            remove(u);
        }
    }

    const MultiGraph& g_;
    ProfileAccumulator& acc_;
    std::vector<char> in_s_, banned_;
    std::int64_t vol_ = 0, boundary_ = 0;
    std::uint64_t reported_ = 0;
};

/// Connected set under local edits, with an incrementally maintained
/// frontier (the frontier list may hold stale entries; validate on use).
struct LocalSet {
    const MultiGraph& g;
    std::vector<char> in_s;
    std::vector<std::uint32_t> inside_neighbors;  // # in-S neighbors, all vertices
    std::vector<VertexId> members;
    std::vector<VertexId> frontier;
    std::uint64_t vol = 0;
    std::int64_t boundary = 0;

    explicit LocalSet(const MultiGraph& graph)
        : g(graph), in_s(graph.vertex_count(), 0), inside_neighbors(graph.vertex_count(), 0) {}

    bool frontier_valid(VertexId v) const { return !in_s[v] && inside_neighbors[v] > 0; }

    void add(VertexId v) {
        in_s[v] = 1;
        members.push_back(v);
        vol += g.degree(v);
        for (const HalfEdge& h : g.incident(v)) {
            if (h.neighbor == v) continue;
            boundary += in_s[h.neighbor] ? -1 : 1;
            if (++inside_neighbors[h.neighbor] == 1 && !in_s[h.neighbor])
                frontier.push_back(h.neighbor);
        }
    }

    /// Only induced-degree <= 1 members are removable (keeps S connected).
    void remove_member(std::size_t member_idx) {
        const VertexId v = members[member_idx];
        in_s[v] = 0;
        members[member_idx] = members.back();
        members.pop_back();
        vol -= g.degree(v);
        for (const HalfEdge& h : g.incident(v)) {
            if (h.neighbor == v) continue;
            boundary += in_s[h.neighbor] ? 1 : -1;
            --inside_neighbors[h.neighbor];
        }
        if (inside_neighbors[v] > 0) frontier.push_back(v);
    }

    VertexId random_frontier(RngStream& stream) {
        while (!frontier.empty()) {
            const std::size_t i = stream.uniform_below(frontier.size());
            const VertexId v = frontier[i];
            if (frontier_valid(v)) return v;
            frontier[i] = frontier.back();
            frontier.pop_back();
        }
        return kNoVertex;
    }
};

void sampled_profile(const MultiGraph& g, ProfileAccumulator& acc, RngStream& stream) {
    const VertexId n = g.vertex_count();
    const std::uint64_t two_e = acc.two_e;
    for (int seed = 0; seed < 512; ++seed) {
        const int target_bucket = 1 + seed % acc.buckets;
        LocalSet s(g);
        s.add(static_cast<VertexId>(stream.uniform_below(n)));
        acc.offer(static_cast<std::uint64_t>(s.boundary), s.vol);
        // random growth until the set reaches the target bucket's mass range
        while ((s.vol << (target_bucket + 1)) < two_e) {
            const VertexId v = s.random_frontier(stream);
            if (v == kNoVertex) break;
            s.add(v);
            acc.offer(static_cast<std::uint64_t>(s.boundary), s.vol);
        }
        // greedy swaps: best of a bounded sample of additions and safe
        // (induced-leaf) removals, while pi(S) stays at most 1/2
        for (int iter = 0; iter < 200; ++iter) {
            const double current = phi_of(static_cast<std::uint64_t>(s.boundary), s.vol, acc.e);
            double best_phi = current;
            VertexId best_add = kNoVertex;
            std::size_t best_remove = ~std::size_t{0};
            for (int probe = 0; probe < 48; ++probe) {
                const VertexId cand = s.random_frontier(stream);
                if (cand == kNoVertex) break;
                const std::uint64_t vol2 = s.vol + g.degree(cand);
                if (vol2 > acc.e) continue;
                std::int64_t b2 = s.boundary;
                for (const HalfEdge& h : g.incident(cand)) {
                    if (h.neighbor == cand) continue;
                    b2 += s.in_s[h.neighbor] ? -1 : 1;
                }
                const double phi2 = phi_of(static_cast<std::uint64_t>(b2), vol2, acc.e);
                if (phi2 < best_phi) {
                    best_phi = phi2;
                    best_add = cand;
                    best_remove = ~std::size_t{0};
                }
            }
            if (s.members.size() > 1) {
                for (int probe = 0; probe < 16; ++probe) {
                    const std::size_t idx = stream.uniform_below(s.members.size());
                    const VertexId v = s.members[idx];
                    if (s.inside_neighbors[v] > 1) continue;
                    const std::uint64_t vol2 = s.vol - g.degree(v);
                    if (vol2 == 0) continue;
                    std::int64_t b2 = s.boundary;
                    for (const HalfEdge& h : g.incident(v)) {
                        if (h.neighbor == v) continue;
                        b2 += s.in_s[h.neighbor] ? 1 : -1;
                    }
                    const double phi2 = phi_of(static_cast<std::uint64_t>(b2), vol2, acc.e);
                    if (phi2 < best_phi) {
                        best_phi = phi2;
                        best_remove = idx;
                        best_add = kNoVertex;
                    }
                }
            }
            if (best_add != kNoVertex)
                s.add(best_add);
            else if (best_remove != ~std::size_t{0})
                s.remove_member(best_remove);
            else
                break;
            acc.offer(static_cast<std::uint64_t>(s.boundary), s.vol);
        }
    }
}

}  // namespace

double set_conductance(const MultiGraph& g, const VertexSet& s) {
    if (s.empty() || s.size() >= g.vertex_count())
        throw std::invalid_argument("set_conductance: S must be proper and nonempty");
    const EdgeCut cut = boundary_and_induced(g, s);
    const std::uint64_t vol = volume(g, s);
    const std::uint64_t two_e = 2ull * g.edge_count();
    if (vol == 0 || vol >= two_e)
        throw std::invalid_argument("set_conductance: degenerate stationary mass");
    return phi_of(cut.boundary, vol, g.edge_count());
}

ConductanceProfile conductance_profile(const MultiGraph& g, ProfileMode mode, RngStream* stream) {
    if (g.vertex_count() == 0) throw std::invalid_argument("conductance_profile: empty graph");
    ProfileAccumulator acc(g);
    if (mode == ProfileMode::exact) {
        ConnectedEnumerator enumerator(g, acc);
        enumerator.run();
    } else {
        if (!stream) throw std::invalid_argument("conductance_profile: sampled mode needs a stream");
        sampled_profile(g, acc, *stream);
    }
    ConductanceProfile profile;
    profile.phi = std::move(acc.best);
    std::uint64_t dmin = ~0ull;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        dmin = std::min<std::uint64_t>(dmin, g.degree(v));
    profile.pi_min = static_cast<double>(dmin) / static_cast<double>(acc.two_e);
    profile.certified = (mode == ProfileMode::exact);
    return profile;
}

double fr_upper_bound(const ConductanceProfile& profile) {
    if (profile.phi.empty()) throw std::invalid_argument("fr_upper_bound: empty profile");
    double sum = 0.0;
    for (double phi : profile.phi) {
        if (!(phi > 0.0)) throw std::domain_error("fr_upper_bound: nonpositive Phi bucket");
        sum += 1.0 / (phi * phi);
    }
    return sum;
}

}  // namespace nearcrit
