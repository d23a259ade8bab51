#include "bell/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "bell/errors.hpp"

namespace bell {

void HalfspaceSystem::validate() const {
    if (rows.size() != rhs.size()) {
        fail(ErrorCode::DimensionMismatch,
             "halfspace system has " + std::to_string(rows.size()) + " rows but " +
                 std::to_string(rhs.size()) + " right-hand sides");
    }
    for (const RatVec& row : rows) {
        if (row.size() != dimension()) {
            fail(ErrorCode::DimensionMismatch, "halfspace system rows have unequal lengths");
        }
    }
}

DualPolytope DualPolytope::of_model(const ModelMatrix& matrix) {
    DualPolytope polytope{matrix, {}};
    const std::size_t d = matrix.rows();
    polytope.system.rows.reserve(matrix.cols() + d);
    for (std::size_t column = 0; column < matrix.cols(); ++column) {
        polytope.system.rows.push_back(matrix.column(column));
        polytope.system.rhs.emplace_back(0);
    }
    for (std::size_t s = 0; s < d; ++s) {
        RatVec row(d, Rational(0));
        row[s] = -1;
        polytope.system.rows.push_back(std::move(row));
        polytope.system.rhs.emplace_back(1);
    }
    return polytope;
}

namespace {

using Bitset = std::vector<std::uint64_t>;

void set_bit(Bitset& bits, std::size_t i) { bits[i >> 6] |= std::uint64_t(1) << (i & 63); }

bool subset_of(const Bitset& inner, const Bitset& outer) {
    for (std::size_t w = 0; w < inner.size(); ++w) {
        if (inner[w] & ~outer[w]) return false;
    }
    return true;
}

Bitset intersect(const Bitset& a, const Bitset& b) {
    Bitset out(a.size());
    for (std::size_t w = 0; w < a.size(); ++w) out[w] = a[w] & b[w];
    return out;
}

std::size_t popcount(const Bitset& bits) {
    std::size_t total = 0;
    for (std::uint64_t word : bits) total += static_cast<std::size_t>(std::popcount(word));
    return total;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

std::size_t count_nonzero(const RatVec& v) {
    std::size_t n = 0;
    for (const Rational& q : v) {
        if (q != 0) ++n;
    }
    return n;
}

// Scales a rational vector to the proportional primitive integer vector,
// keeping its sign. Leaves the zero vector untouched.
void normalize_primitive(RatVec& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt scale(1);
    for (const Rational& q : v) scale = lcm(scale, BigInt(denominator(q)));
    std::vector<BigInt> integral(v.size());
    BigInt divisor(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        integral[i] = BigInt(numerator(v[i])) * (scale / BigInt(denominator(v[i])));
        divisor = gcd(divisor, integral[i]);
    }
    if (divisor == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(integral[i] / divisor);
}

// Incremental reduced row echelon form for exact rank queries. Every stored
// row has 1 in its own pivot column and 0 in every other pivot column, so
// reduction order never matters.
class RankTracker {
  public:
    // Adds the row if it enlarges the span; returns whether it did.
    bool try_add(RatVec row) {
        for (std::size_t i = 0; i < reduced_.size(); ++i) {
            const std::size_t col = pivot_col_[i];
            if (row[col] == 0) continue;
            Rational factor = row[col];
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (reduced_[i][j] != 0) row[j] -= factor * reduced_[i][j];
            }
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == 0) continue;
            Rational lead = row[j];
            for (std::size_t k = 0; k < row.size(); ++k) row[k] /= lead;
            for (std::size_t i = 0; i < reduced_.size(); ++i) {
                if (reduced_[i][j] == 0) continue;
                Rational factor = reduced_[i][j];
                for (std::size_t k = 0; k < row.size(); ++k) {
                    if (row[k] != 0) reduced_[i][k] -= factor * row[k];
                }
            }
            pivot_col_.push_back(j);
            reduced_.push_back(std::move(row));
            return true;
        }
        return false;
    }

    std::size_t rank() const { return reduced_.size(); }

  private:
    std::vector<RatVec> reduced_;
    std::vector<std::size_t> pivot_col_;
};

std::vector<RatVec> invert(std::vector<RatVec> m) {
    const std::size_t n = m.size();
    std::vector<RatVec> inv(n, RatVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) fail(ErrorCode::Internal, "initial cone basis is singular");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rational lead = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= lead;
            inv[col][j] /= lead;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational factor = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= factor * m[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

struct DDRay {
    RatVec coords;
    Bitset zeros;  // processed constraints tight at this ray
};

}  // namespace

VertexEnumeration enumerate_vertices(const HalfspaceSystem& system,
                                     const EnumerationOptions& options) {
    system.validate();
    const std::size_t d = system.dimension();
    if (d == 0) fail(ErrorCode::OutOfRange, "halfspace system is zero-dimensional");
    const std::size_t D = d + 1;

    // Homogenization: a.x <= b becomes (a, -b).(x, t) <= 0 together with t >= 0;
    // rays with positive t are vertices x/t, rays with t = 0 recession directions.
    std::vector<RatVec> cone_rows;
    cone_rows.reserve(system.size() + 1);
    for (std::size_t i = 0; i < system.size(); ++i) {
        RatVec g = system.rows[i];
        g.push_back(-system.rhs[i]);
        cone_rows.push_back(std::move(g));
    }
    {
        RatVec g(D, Rational(0));
        g[D - 1] = -1;
        cone_rows.push_back(std::move(g));
    }

    std::vector<std::size_t> order(cone_rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::size_t na = count_nonzero(cone_rows[a]);
        const std::size_t nb = count_nonzero(cone_rows[b]);
        if (na != nb) return na < nb;
        if (lex_less(cone_rows[a], cone_rows[b])) return true;
        if (lex_less(cone_rows[b], cone_rows[a])) return false;
        return a < b;
    });

    RankTracker tracker;
    std::vector<std::size_t> basis;
    std::vector<std::size_t> pending;
    for (std::size_t index : order) {
        if (basis.size() < D && tracker.try_add(cone_rows[index])) {
            basis.push_back(index);
        } else {
            pending.push_back(index);
        }
    }
    if (basis.size() < D) {
        fail(ErrorCode::OutOfRange,
             "polyhedron has a lineality space; vertex enumeration needs a pointed set");
    }

    std::vector<RatVec> basis_rows;
    basis_rows.reserve(D);
    for (std::size_t index : basis) basis_rows.push_back(cone_rows[index]);
    const std::vector<RatVec> inverse = invert(std::move(basis_rows));

    const std::size_t words = (cone_rows.size() + 63) / 64;
    std::vector<DDRay> rays;
    rays.reserve(D);
    for (std::size_t j = 0; j < D; ++j) {
        DDRay ray;
        ray.coords.resize(D);
        for (std::size_t i = 0; i < D; ++i) ray.coords[i] = -inverse[i][j];
        normalize_primitive(ray.coords);
        ray.zeros.assign(words, 0);
        for (std::size_t i = 0; i < D; ++i) {
            if (i != j) set_bit(ray.zeros, basis[i]);
        }
        rays.push_back(std::move(ray));
    }

    for (std::size_t h : pending) {
        const RatVec& g = cone_rows[h];
        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> plus;
        std::vector<std::size_t> minus;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = dot(g, rays[r].coords);
            if (value[r] > 0) {
                plus.push_back(r);
            } else if (value[r] < 0) {
                minus.push_back(r);
            } else {
                set_bit(rays[r].zeros, h);
            }
        }
        if (plus.empty()) continue;

        std::vector<DDRay> born;
        for (std::size_t p : plus) {
            for (std::size_t m : minus) {
                Bitset common = intersect(rays[p].zeros, rays[m].zeros);
                if (popcount(common) + 2 < D) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == m) continue;
                    if (subset_of(common, rays[r].zeros)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                DDRay child;
                child.coords.resize(D);
                for (std::size_t i = 0; i < D; ++i) {
                    child.coords[i] = value[p] * rays[m].coords[i] - value[m] * rays[p].coords[i];
                }
                normalize_primitive(child.coords);
                child.zeros = std::move(common);
                set_bit(child.zeros, h);
                born.push_back(std::move(child));
                if (rays.size() - plus.size() + born.size() > options.ray_cap) {
                    fail(ErrorCode::SizeLimit,
                         "vertex enumeration exceeded the ray cap of " +
                             std::to_string(options.ray_cap));
                }
            }
        }

        std::vector<DDRay> next;
        next.reserve(rays.size() - plus.size() + born.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (value[r] <= 0) next.push_back(std::move(rays[r]));
        }
        for (DDRay& child : born) next.push_back(std::move(child));
        rays = std::move(next);
    }

    VertexEnumeration result;
    for (const DDRay& ray : rays) {
        const Rational& t = ray.coords[D - 1];
        if (t > 0) {
            RatVec point(d);
            for (std::size_t i = 0; i < d; ++i) point[i] = ray.coords[i] / t;
            result.vertices.push_back(std::move(point));
        } else {
            result.rays.emplace_back(ray.coords.begin(), ray.coords.begin() + d);
        }
    }
    std::sort(result.vertices.begin(), result.vertices.end(), lex_less);
    std::sort(result.rays.begin(), result.rays.end(), lex_less);
    return result;
}

VertexEnumeration enumerate_vertices(const DualPolytope& polytope,
                                     const EnumerationOptions& options) {
    return enumerate_vertices(polytope.system, options);
}

void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BELL_LP_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && parsed > 0) {
            workers = static_cast<std::size_t>(parsed);
        }
    }
    if (workers == 0) workers = 1;
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
    if (error) std::rethrow_exception(error);
}

namespace {

// Strategy columns without the normalization row, the ambient points of the
// local polytope.
std::vector<RatVec> polytope_points(const ModelMatrix& matrix) {
    std::vector<RatVec> points(matrix.cols(), RatVec(matrix.rows() - 1));
    for (std::size_t column = 0; column < matrix.cols(); ++column) {
        for (std::size_t s = 1; s < matrix.rows(); ++s) {
            points[column][s - 1] = matrix.at(s, column);
        }
    }
    return points;
}

std::size_t affine_rank(const std::vector<RatVec>& points, const std::vector<std::size_t>& subset) {
    if (subset.size() <= 1) return 0;
    RankTracker tracker;
    const RatVec& base = points[subset.front()];
    for (std::size_t k = 1; k < subset.size(); ++k) {
        RatVec diff = points[subset[k]];
        for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= base[j];
        tracker.try_add(std::move(diff));
    }
    return tracker.rank();
}

// Divides by the largest absolute coefficient; false for the zero vector.
bool scale_to_canonical(RatVec& q) {
    Rational largest(0);
    for (const Rational& entry : q) {
        Rational magnitude = entry < 0 ? Rational(-entry) : entry;
        if (magnitude > largest) largest = std::move(magnitude);
    }
    if (largest == 0) return false;
    for (Rational& entry : q) entry /= largest;
    return true;
}

}  // namespace

CompleteBellSet enumerate_complete_set(const Scenario& scenario, const EnumerationOptions& options,
                                       std::size_t column_cap) {
    const ModelMatrix matrix = ModelMatrix::build(scenario, column_cap);
    const DualPolytope polytope = DualPolytope::of_model(matrix);
    const VertexEnumeration vrep = enumerate_vertices(polytope.system, options);

    CompleteBellSet set{scenario, {}, vrep.vertices.size()};

    struct Candidate {
        RatVec q;
        bool from_ray;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(vrep.vertices.size() + vrep.rays.size());
    for (const RatVec& vertex : vrep.vertices) {
        RatVec q(vertex.begin() + 1, vertex.end());
        if (scale_to_canonical(q)) candidates.push_back({std::move(q), false});
    }
    for (const RatVec& ray : vrep.rays) {
        RatVec q(ray.begin() + 1, ray.end());
        if (scale_to_canonical(q)) candidates.push_back({std::move(q), true});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (lex_less(a.q, b.q)) return true;
        if (lex_less(b.q, a.q)) return false;
        return a.from_ray < b.from_ray;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) { return a.q == b.q; }),
                     candidates.end());

    const std::vector<RatVec> points = polytope_points(matrix);
    std::vector<std::size_t> all_columns(points.size());
    std::iota(all_columns.begin(), all_columns.end(), std::size_t{0});
    const std::size_t polytope_dim = affine_rank(points, all_columns);

    set.members.resize(candidates.size());
    parallel_for_index(candidates.size(), [&](std::size_t i) {
        CompleteBellMember& member = set.members[i];
        member.inequality = make_inequality(candidates[i].q, matrix);
        member.from_ray = candidates[i].from_ray;

        std::vector<std::size_t> tight;
        for (std::size_t column = 0; column < points.size(); ++column) {
            Rational value(0);
            for (std::size_t j = 0; j < points[column].size(); ++j) {
                if (member.inequality.coefficients[j] == 0) continue;
                value += member.inequality.coefficients[j] * points[column][j];
            }
            if (value == member.inequality.bound) tight.push_back(column);
        }
        member.facet = polytope_dim > 0 && !tight.empty() &&
                       affine_rank(points, tight) == polytope_dim - 1;
    });

    return set;
}

bool is_complete_against(const CompleteBellSet& set, const CorrelationVector& correlations) {
    if (correlations.entries.size() != set.scenario.setting_count()) {
        fail(ErrorCode::ScenarioMismatch,
             "correlations have " + std::to_string(correlations.entries.size()) +
                 " entries, scenario expects " + std::to_string(set.scenario.setting_count()));
    }
    validate_correlations(set.scenario, correlations.entries);
    for (const CompleteBellMember& member : set.members) {
        if (evaluate_inequality(member.inequality, correlations) > 0) return false;
    }
    return true;
}

}  // namespace bell
