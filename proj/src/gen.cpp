#include "rainbow/gen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

// every n x n Latin square, cells filled row-major, symbols tried ascending
std::vector<std::vector<int>> all_latin_squares(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> grid(static_cast<std::size_t>(n) * n, -1);
    std::vector<std::vector<char>> rowu(n, std::vector<char>(n, 0));
    std::vector<std::vector<char>> colu(n, std::vector<char>(n, 0));
    auto rec = [&](auto&& self, int cell) -> void {
        if (cell == n * n) {
            out.push_back(grid);
            return;
        }
        int i = cell / n, j = cell % n;
        for (int s = 0; s < n; ++s) {
            if (rowu[i][s] || colu[j][s]) continue;
            grid[cell] = s;
            rowu[i][s] = colu[j][s] = 1;
            self(self, cell + 1);
            grid[cell] = -1;
            rowu[i][s] = colu[j][s] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<int> shuffled_identity(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    rng.shuffle(p);
    return p;
}

}  // namespace

MatchingFamily gen_latin(int n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("gen_latin: n must be >= 1");
    Rng rng(mix_seed(seed, 0x6c6174696eULL));
    std::vector<int> square(static_cast<std::size_t>(n) * n);
    if (n <= 4) {
        auto all = all_latin_squares(n);
        square = all[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(all.size()) - 1))];
    } else {
        std::vector<int> row = shuffled_identity(n, rng);
        std::vector<int> col = shuffled_identity(n, rng);
        std::vector<int> sym = shuffled_identity(n, rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                square[static_cast<std::size_t>(i) * n + j] =
                    sym[(row[i] + col[j]) % n];
    }
    MatchingFamily fam;
    fam.r = 2;
    fam.cls = InstanceClass::bipartite;
    for (int i = 0; i < n; ++i) {
        std::vector<Edge> edges;
        for (int j = 0; j < n; ++j)
            edges.push_back(Edge{j, n + square[static_cast<std::size_t>(i) * n + j]});
        fam.matchings.emplace_back(std::move(edges));
    }
    return fam;
}

MatchingFamily gen_random(int n, int r, InstanceClass kind, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("gen_random: n must be >= 1");
    if (r < 2) throw PreconditionError("gen_random: r must be >= 2");
    if (kind != InstanceClass::general && r != 2)
        throw PreconditionError("gen_random: class " + to_string(kind) +
                                " requires r == 2");
    Rng rng(mix_seed(seed, 0x67656e72ULL));
    MatchingFamily fam;
    fam.r = r;
    fam.cls = kind;

    if (kind == InstanceClass::general) {
        const int pool_size = r * n + (n + 1) / 2;
        std::vector<VertexId> pool(pool_size);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < n; ++i) {
            rng.shuffle(pool);
            std::vector<Edge> edges;
            for (int k = 0; k < n; ++k)
                edges.push_back(Edge(std::vector<VertexId>(
                    pool.begin() + static_cast<std::ptrdiff_t>(k) * r,
                    pool.begin() + static_cast<std::ptrdiff_t>(k + 1) * r)));
            fam.matchings.emplace_back(std::move(edges));
        }
        return fam;
    }

    if (kind == InstanceClass::bipartite || kind == InstanceClass::c3c5_free) {
        // fixed sides make the union bipartite, which also rules out C3/C5
        const int side = n + (n + 3) / 4;
        std::vector<VertexId> left(side), right(side);
        std::iota(left.begin(), left.end(), 0);
        std::iota(right.begin(), right.end(), side);
        for (int i = 0; i < n; ++i) {
            rng.shuffle(left);
            rng.shuffle(right);
            std::vector<Edge> edges;
            for (int k = 0; k < n; ++k) edges.push_back(Edge{left[k], right[k]});
            fam.matchings.emplace_back(std::move(edges));
        }
        return fam;
    }

    // pairwise_disjoint: color classes of a greedy proper edge coloring of a
    // random graph; denser graph on each retry
    const int v_count = 2 * n * r;
    std::vector<Edge> all_pairs;
    for (VertexId a = 0; a < v_count; ++a)
        for (VertexId b = a + 1; b < v_count; ++b) all_pairs.push_back(Edge{a, b});
    const int max_attempts = 12;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::size_t want = std::min(
            all_pairs.size(),
            static_cast<std::size_t>(n) * n * 2 * (attempt + 1));
        rng.shuffle(all_pairs);
        std::map<VertexId, std::vector<char>> used;
        std::map<int, std::vector<Edge>> classes;
        const int max_colors = 4 * n * r;
        for (std::size_t k = 0; k < want; ++k) {
            const Edge& e = all_pairs[k];
            auto& ua = used[e.vertices()[0]];
            auto& ub = used[e.vertices()[1]];
            ua.resize(max_colors, 0);
            ub.resize(max_colors, 0);
            int c = 0;
            while (c < max_colors && (ua[c] || ub[c])) ++c;
            if (c == max_colors) continue;
            ua[c] = ub[c] = 1;
            classes[c].push_back(e);
        }
        std::vector<Matching> picked;
        for (auto& [c, edges] : classes) {
            if (static_cast<int>(edges.size()) < n) continue;
            std::sort(edges.begin(), edges.end());
            edges.resize(n);
            picked.emplace_back(std::move(edges));
            if (static_cast<int>(picked.size()) == n) break;
        }
        if (static_cast<int>(picked.size()) == n) {
            fam.matchings = std::move(picked);
            return fam;
        }
    }
    throw GenError("gen_random: pairwise_disjoint retry limit reached for n = " +
                   std::to_string(n));
}

PathInstance gen_sharpness_paths(int m, SharpnessVariant variant) {
    if (m < 1) throw PreconditionError("gen_sharpness_paths: m must be >= 1");
    PathInstance inst;
    if (variant == SharpnessVariant::st_single) {
        inst.s = {0};
        inst.t = {1};
        for (int y = 0; y < m; ++y) inst.y.push_back(2 + y);
        DirectedPath p;
        p.vertices.push_back(0);
        for (VertexId y : inst.y) p.vertices.push_back(y);
        p.vertices.push_back(1);
        inst.paths.assign(m, p);
        return inst;
    }
    inst.s = {0, 1};
    for (int y = 0; y < m; ++y) inst.y.push_back(2 + y);
    DirectedPath fwd, rev;
    fwd.vertices.push_back(0);
    for (VertexId y : inst.y) fwd.vertices.push_back(y);
    fwd.vertices.push_back(1);
    rev.vertices.assign(fwd.vertices.rbegin(), fwd.vertices.rend());
    inst.paths.assign(m, fwd);
    inst.paths.insert(inst.paths.end(), m, rev);
    return inst;
}

PathInstance gen_random_path_instance(int s_count, int y_count, int m,
                                      std::uint64_t seed) {
    if (s_count < 2)
        throw PreconditionError("gen_random_path_instance: need at least 2 sources");
    if (y_count < 0 || m < 0)
        throw PreconditionError("gen_random_path_instance: negative size");
    Rng rng(mix_seed(seed, 0x70617468ULL));
    PathInstance inst;
    for (int i = 0; i < s_count; ++i) inst.s.push_back(i);
    for (int i = 0; i < y_count; ++i) inst.y.push_back(s_count + i);

    std::vector<VertexId> scratch = inst.y;
    for (int k = 0; k < m; ++k) {
        int a = rng.uniform_int(0, s_count - 1);
        int b = rng.uniform_int(0, s_count - 2);
        if (b >= a) ++b;
        int len = y_count > 0 ? rng.uniform_int(0, y_count) : 0;
        for (int i = 0; i < len; ++i) {
            int j = rng.uniform_int(i, y_count - 1);
            std::swap(scratch[i], scratch[j]);
        }
        DirectedPath p;
        p.vertices.push_back(a);
        p.vertices.insert(p.vertices.end(), scratch.begin(), scratch.begin() + len);
        p.vertices.push_back(b);
        inst.paths.push_back(std::move(p));
    }
    return inst;
}

AlternatingSystem gen_random_alternating_system(int m_size_max, std::uint64_t seed) {
    if (m_size_max < 1)
        throw PreconditionError("gen_random_alternating_system: m_size_max must be >= 1");
    Rng rng(mix_seed(seed, 0x616c7453ULL));
    const int universe = 4 * m_size_max + 6;
    std::vector<VertexId> ids(universe);
    std::iota(ids.begin(), ids.end(), 0);

    auto random_matching = [&rng, &ids](int size) {
        rng.shuffle(ids);
        std::vector<Edge> edges;
        for (int k = 0; k < size; ++k) edges.push_back(Edge{ids[2 * k], ids[2 * k + 1]});
        return Matching(std::move(edges));
    };

    AlternatingSystem sys;
    const int msize = rng.uniform_int(1, m_size_max);
    sys.m = random_matching(msize);

    const int attempts_cap = 2 * m_size_max + 8;
    for (int a = 0; a < attempts_cap && h_total(sys) <= 2 * msize; ++a) {
        int fsize = std::min(msize + rng.uniform_int(1, 2), universe / 2);
        auto dec = symdiff_decompose(sys.m, random_matching(fsize));
        if (!dec.augmenting.empty()) sys.h.push_back(std::move(dec.augmenting));
    }
    if (h_total(sys) <= 2 * msize)
        throw GenError("gen_random_alternating_system: could not exceed 2|M| paths");
    return sys;
}

}  // namespace rainbow
