#include "degseq/enumeration.hpp"

#include "degseq/errors.hpp"
#include "degseq/lp.hpp"
#include "degseq/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace degseq {

namespace {

using Vec = std::vector<std::int64_t>;
using i128 = __int128;

class Bits {
public:
    explicit Bits(int size = 0) : words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

    void set(int i) { words_[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64); }
    bool test(int i) const { return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool contains(const Bits& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((other.words_[k] & ~words_[k]) != 0) return false;
        return true;
    }
    friend Bits operator&(const Bits& a, const Bits& b) {
        Bits out = a;
        for (std::size_t k = 0; k < out.words_.size(); ++k) out.words_[k] &= b.words_[k];
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    Vec v;
    Bits zeros;
};

i128 dot(const Vec& a, const Vec& b) {
    i128 s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<i128>(a[k]) * b[k];
    return s;
}

std::int64_t narrow(i128 x) {
    if (x > INT64_MAX || x < INT64_MIN) throw SizeError("double description: coefficient overflow");
    return static_cast<std::int64_t>(x);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Vec reduce(const std::vector<i128>& w) {
    i128 g = 0;
    for (auto x : w) g = gcd128(g, x);
    Vec out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) out[k] = narrow(g == 0 ? w[k] : w[k] / g);
    return out;
}

IntMatrix rows_to_matrix(const std::vector<Vec>& rows, int width) {
    IntMatrix m(static_cast<int>(rows.size()), width);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < width; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
}

}  // namespace

std::vector<int> PolyhedralDescription::generators_on(const Facet& f) const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(generators.size()); ++k) {
        const auto& g = generators[static_cast<std::size_t>(k)];
        if (dot(f.normal, g) + f.offset == 0) out.push_back(k);
    }
    return out;
}

PolyhedralDescription enumerate_facets(const std::vector<Vec>& generators) {
    PolyhedralDescription out;
    out.generators = generators;
    if (generators.empty()) return out;
    const int K = static_cast<int>(generators.size());
    const int D = static_cast<int>(generators.front().size());
    if (K > kMaxGenerators || D > kMaxAmbientDim)
        throw SizeError("double description is limited to " + std::to_string(kMaxGenerators) + " generators in dimension " +
                        std::to_string(kMaxAmbientDim));
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != D) throw std::invalid_argument("enumerate_facets: ragged generators");

    // Work in an independent coordinate set so the cone is full-dimensional.
    const IntMatrix gm = rows_to_matrix(generators, D);
    const auto coords = independent_rows(gm.transpose());
    const int r = static_cast<int>(coords.size());
    out.dim = r;
    if (r == 0) return out;

    std::vector<Vec> proj(static_cast<std::size_t>(K), Vec(static_cast<std::size_t>(r)));
    for (int k = 0; k < K; ++k)
        for (int c = 0; c < r; ++c)
            proj[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] =
                generators[static_cast<std::size_t>(k)][static_cast<std::size_t>(coords[static_cast<std::size_t>(c)])];

    // Initial simplicial cone from r independent generators: rays are the columns of the inverse.
    const auto basis = independent_rows(rows_to_matrix(proj, r));
    std::vector<std::vector<Rational>> bm(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
    for (int a = 0; a < r; ++a)
        for (int c = 0; c < r; ++c)
            bm[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] =
                proj[static_cast<std::size_t>(basis[static_cast<std::size_t>(a)])][static_cast<std::size_t>(c)];

    std::vector<bool> processed(static_cast<std::size_t>(K), false);
    for (int b : basis) processed[static_cast<std::size_t>(b)] = true;

    std::vector<Ray> rays;
    for (int a = 0; a < r; ++a) {
        std::vector<Rational> e(static_cast<std::size_t>(r), Rational(0));
        e[static_cast<std::size_t>(a)] = 1;
        const auto x = solve_exact(bm, e);
        BigInt den = 1;
        for (const auto& q : x) den = boost::multiprecision::lcm(den, denominator(q));
        std::vector<i128> w;
        for (const auto& q : x) {
            const BigInt v = numerator(q) * (den / denominator(q));
            if (v > INT64_MAX || v < INT64_MIN) throw SizeError("double description: coefficient overflow");
            w.push_back(static_cast<std::int64_t>(v));
        }
        Ray ray{reduce(w), Bits(K)};
        for (int b = 0; b < r; ++b)
            if (b != a) ray.zeros.set(basis[static_cast<std::size_t>(b)]);
        rays.push_back(std::move(ray));
    }

    for (int h = 0; h < K; ++h) {
        if (processed[static_cast<std::size_t>(h)]) continue;
        const Vec& gh = proj[static_cast<std::size_t>(h)];

        std::vector<i128> val(rays.size());
        std::vector<int> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            val[k] = dot(rays[k].v, gh);
            if (val[k] > 0) pos.push_back(static_cast<int>(k));
            else if (val[k] < 0) neg.push_back(static_cast<int>(k));
            else rays[k].zeros.set(h);
        }

        std::vector<Ray> next;
        for (int p : pos) {
            for (int q : neg) {
                const Bits common = rays[static_cast<std::size_t>(p)].zeros & rays[static_cast<std::size_t>(q)].zeros;
                if (common.count() < r - 2) continue;
                bool adjacent = true;
                for (int u = 0; u < static_cast<int>(rays.size()) && adjacent; ++u)
                    if (u != p && u != q && rays[static_cast<std::size_t>(u)].zeros.contains(common)) adjacent = false;
                if (!adjacent) continue;

                const auto& vp = rays[static_cast<std::size_t>(p)].v;
                const auto& vq = rays[static_cast<std::size_t>(q)].v;
                std::vector<i128> w(static_cast<std::size_t>(r));
                for (int c = 0; c < r; ++c)
                    w[static_cast<std::size_t>(c)] = val[static_cast<std::size_t>(p)] * vq[static_cast<std::size_t>(c)] -
                                                     val[static_cast<std::size_t>(q)] * vp[static_cast<std::size_t>(c)];
                Ray ray{reduce(w), common};
                ray.zeros.set(h);
                next.push_back(std::move(ray));
            }
        }
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (val[k] >= 0) next.push_back(std::move(rays[k]));
        rays = std::move(next);
        processed[static_cast<std::size_t>(h)] = true;
    }

    for (const auto& ray : rays) {
        Facet f;
        f.normal.assign(static_cast<std::size_t>(D), 0);
        for (int c = 0; c < r; ++c) f.normal[static_cast<std::size_t>(coords[static_cast<std::size_t>(c)])] = ray.v[static_cast<std::size_t>(c)];
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    return out;
}

PolyhedralDescription enumerate_facets(const IntMatrix& columns_as_generators) {
    return enumerate_facets(columns_as_generators.columns());
}

PolyhedralDescription enumerate_polytope_facets(const std::vector<Vec>& points) {
    std::vector<Vec> lifted;
    for (const auto& p : points) {
        Vec v{1};
        v.insert(v.end(), p.begin(), p.end());
        lifted.push_back(std::move(v));
    }
    auto cone = enumerate_facets(lifted);
    PolyhedralDescription out;
    out.generators = points;
    out.dim = cone.dim - 1;
    for (auto& f : cone.facets) {
        Facet g;
        g.offset = f.normal.front();
        g.normal.assign(f.normal.begin() + 1, f.normal.end());
        out.facets.push_back(std::move(g));
    }
    return out;
}

std::vector<int> classify_sampling_facets(const PolyhedralDescription& cone, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> out;
    const int K = static_cast<int>(cone.generators.size());
    for (const auto& f : cone.facets) {
        const auto on = cone.generators_on(f);
        std::vector<int> off;
        for (int k = 0, a = 0; k < K; ++k) {
            if (a < static_cast<int>(on.size()) && on[static_cast<std::size_t>(a)] == k) ++a;
            else off.push_back(k);
        }
        int match = -1;
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
            auto blk = blocks[static_cast<std::size_t>(b)];
            std::sort(blk.begin(), blk.end());
            if (blk == off) match = b;
        }
        out.push_back(match);
    }
    return out;
}

std::vector<Vec> extreme_points(std::vector<Vec> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() <= 1) return points;
    const int dim = static_cast<int>(points.front().size());

    std::vector<Vec> out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        // p is not extreme iff it is a convex combination of the other points.
        const int others = static_cast<int>(points.size()) - 1;
        LinearProgram lp(others);
        for (int c = 0; c < dim; ++c) {
            std::vector<Rational> coef;
            coef.reserve(static_cast<std::size_t>(others));
            for (std::size_t q = 0; q < points.size(); ++q)
                if (q != p) coef.emplace_back(points[q][static_cast<std::size_t>(c)]);
            lp.add_row(std::move(coef), Sense::eq, Rational(points[p][static_cast<std::size_t>(c)]));
        }
        lp.add_row(std::vector<Rational>(static_cast<std::size_t>(others), Rational(1)), Sense::eq, 1);
        if (solve_lp(lp, LpMode::exact).status == LpStatus::infeasible) out.push_back(points[p]);
    }
    return out;
}

PolyhedralDescription enumerate_vertices_minkowski(const DesignMatrix& C, const std::vector<std::vector<int>>& blocks) {
    std::int64_t total = 1;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("enumerate_vertices_minkowski: empty block");
        total *= static_cast<std::int64_t>(b.size());
        if (total > kMaxMinkowskiCandidates) throw SizeError("too many endpoint combinations for exhaustive enumeration");
    }

    const auto cols = C.entries.columns();
    const int dim = C.rows();
    std::set<Vec> images;
    std::vector<std::size_t> choice(blocks.size(), 0);
    while (true) {
        Vec p(static_cast<std::size_t>(dim), 0);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& col = cols[static_cast<std::size_t>(blocks[b][choice[b]])];
            for (int c = 0; c < dim; ++c) p[static_cast<std::size_t>(c)] += col[static_cast<std::size_t>(c)];
        }
        images.insert(std::move(p));
        std::size_t b = 0;
        while (b < blocks.size() && ++choice[b] == blocks[b].size()) choice[b++] = 0;
        if (b == blocks.size()) break;
    }

    PolyhedralDescription out;
    out.generators = extreme_points({images.begin(), images.end()});
    if (!out.generators.empty()) {
        std::vector<Vec> diffs;
        for (const auto& v : out.generators) {
            Vec d(v.size());
            for (std::size_t c = 0; c < v.size(); ++c) d[c] = v[c] - out.generators.front()[c];
            diffs.push_back(std::move(d));
        }
        out.dim = exact_rank(rows_to_matrix(diffs, dim));
    }
    return out;
}

}  // namespace degseq
