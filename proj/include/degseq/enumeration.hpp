#pragma once

#include "degseq/design.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace degseq {

/// Facet normal.y + offset >= 0; offset is 0 for cones.
struct Facet {
    std::vector<std::int64_t> normal;
    std::int64_t offset = 0;

    friend bool operator==(const Facet&, const Facet&) = default;
};

struct PolyhedralDescription {
    std::vector<std::vector<std::int64_t>> generators;
    std::vector<Facet> facets;
    int dim = 0;

    /// Indices of the generators lying on facet f.
    std::vector<int> generators_on(const Facet& f) const;
};

/// Desk-scale limits for the double description method.
inline constexpr int kMaxGenerators = 64;
inline constexpr int kMaxAmbientDim = 48;

/// Facets of cone(generators) by the double description method.
/// Normals are supported on a maximal independent coordinate set of the generators' span
/// (other coordinates are 0) and reduced to coprime integers. Throws SizeError past the limits.
PolyhedralDescription enumerate_facets(const std::vector<std::vector<std::int64_t>>& generators);
PolyhedralDescription enumerate_facets(const IntMatrix& columns_as_generators);

/// Facets of conv(points): the cone over (1, p) with the leading coordinate turned into the offset.
PolyhedralDescription enumerate_polytope_facets(const std::vector<std::vector<std::int64_t>>& points);

/// Facets whose generator zero set is "every column except one block", the faces coming
/// from a vanishing sampling constraint. Returns the block index per facet, or -1.
std::vector<int> classify_sampling_facets(const PolyhedralDescription& cone,
                                          const std::vector<std::vector<int>>& blocks);

/// Largest number of endpoint combinations enumerated by the Minkowski routine.
inline constexpr std::int64_t kMaxMinkowskiCandidates = std::int64_t{1} << 20;

/// Vertices of sum_b conv{ C e_j : j in block b }: all endpoint combinations mapped through C,
/// deduplicated, then tested for extremality with one exact LP each. Generators hold the
/// vertices (sorted); facets are left empty; dim is the affine dimension.
PolyhedralDescription enumerate_vertices_minkowski(const DesignMatrix& C, const std::vector<std::vector<int>>& blocks);

/// Extreme points of a finite point set (exact LP per point).
std::vector<std::vector<std::int64_t>> extreme_points(std::vector<std::vector<std::int64_t>> points);

}  // namespace degseq
