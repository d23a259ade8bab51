#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bell/lhv.hpp"
#include "bell/rational.hpp"
#include "bell/scenario.hpp"

namespace bell {

/// Finite system of closed halfspaces a_i . x <= b_i.
struct HalfspaceSystem {
    std::vector<RatVec> rows;
    RatVec rhs;

    std::size_t size() const { return rows.size(); }
    std::size_t dimension() const { return rows.empty() ? 0 : rows.front().size(); }
    void validate() const;  // rectangular, rhs length matches
};

/// The constraint set {B : M^T B <= 0, B >= -1} whose extreme points are, after
/// dropping the normalization component, the complete set of Bell
/// inequalities for the scenario.
struct DualPolytope {
    ModelMatrix matrix;
    HalfspaceSystem system;

    static DualPolytope of_model(const ModelMatrix& matrix);
};

struct EnumerationOptions {
    /// Upper bound on simultaneously live rays during double description.
    std::size_t ray_cap = 1'000'000;
};

/// Exact V-representation of a pointed polyhedron: extreme points plus
/// extreme recession directions (each scaled to a primitive integer vector).
struct VertexEnumeration {
    std::vector<RatVec> vertices;
    std::vector<RatVec> rays;
};

/// Double description over the homogenization cone. Throws
/// Error{SizeLimit} when the live-ray count exceeds options.ray_cap and
/// Error{OutOfRange} when the polyhedron has a lineality space (no vertices
/// exist then). An infeasible system yields an empty result.
VertexEnumeration enumerate_vertices(const HalfspaceSystem& system,
                                     const EnumerationOptions& options = {});
VertexEnumeration enumerate_vertices(const DualPolytope& polytope,
                                     const EnumerationOptions& options = {});

struct CompleteBellMember {
    BellInequality inequality;  // canonically scaled, coefficients not all zero
    bool facet = false;         // tight strategies span a facet of the local polytope
    bool from_ray = false;      // derived from a recession direction, not a vertex
};

/// All Bell inequalities of the scenario, one per extreme point of the dual
/// polytope (plus any extreme recession directions), deduplicated after
/// canonical scaling and ordered lexicographically by coefficients.
struct CompleteBellSet {
    Scenario scenario;
    std::vector<CompleteBellMember> members;
    std::size_t raw_vertex_count = 0;
};

/// Depends only on the scenario, never on observed correlations.
CompleteBellSet enumerate_complete_set(const Scenario& scenario,
                                       const EnumerationOptions& options = {},
                                       std::size_t column_cap = default_column_cap);

/// True iff no member is violated by the correlations. Exactly equivalent to
/// check_local_realism(...).local() on validated input. Throws
/// Error{ScenarioMismatch} on a wrong-length vector.
bool is_complete_against(const CompleteBellSet& set, const CorrelationVector& correlations);

/// Runs fn(i) for i in [0, count), using at most BELL_LP_THREADS workers
/// (default: hardware concurrency). fn must write only to per-index state.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bell
