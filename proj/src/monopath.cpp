#include "rainbow/monopath.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rainbow/log.hpp"
#include "rainbow/oracle.hpp"

namespace rainbow {

namespace {

bool sorted_member(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<VertexId> sorted_copy(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<std::string> validate_path_instance(const PathInstance& inst) {
    std::vector<std::string> out;
    auto s = sorted_copy(inst.s), y = sorted_copy(inst.y), t = sorted_copy(inst.t);
    auto check_unique = [&](const std::vector<VertexId>& v, const char* name) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] == v[i - 1])
                out.push_back(std::string(name) + " repeats vertex " +
                              std::to_string(v[i]));
    };
    check_unique(s, "S");
    check_unique(y, "Y");
    check_unique(t, "T");
    if (s.empty()) out.push_back("S is empty");
    auto overlap = [&](const std::vector<VertexId>& a, const std::vector<VertexId>& b,
                       const char* name) {
        for (VertexId v : a)
            if (sorted_member(b, v)) {
                out.push_back(std::string(name) + " share vertex " + std::to_string(v));
                break;
            }
    };
    overlap(s, y, "S and Y");
    overlap(s, t, "S and T");
    overlap(y, t, "Y and T");
    const auto& term = inst.is_st() ? t : s;
    for (int k = 0; k < inst.path_count(); ++k) {
        const auto& pv = inst.paths[k].vertices;
        std::string tag = "path " + std::to_string(k);
        if (pv.size() < 2) {
            out.push_back(tag + " has fewer than 2 vertices");
            continue;
        }
        std::set<VertexId> seen(pv.begin(), pv.end());
        if (seen.size() != pv.size()) out.push_back(tag + " repeats a vertex");
        if (!sorted_member(s, pv.front()))
            out.push_back(tag + " does not start in S");
        if (!sorted_member(term, pv.back()))
            out.push_back(tag + (inst.is_st() ? " does not end in T"
                                              : " does not end in S"));
        for (std::size_t i = 1; i + 1 < pv.size(); ++i)
            if (!sorted_member(y, pv[i])) {
                out.push_back(tag + " has interior vertex " + std::to_string(pv[i]) +
                              " outside Y");
                break;
            }
    }
    return out;
}

namespace {

void require_valid(const PathInstance& inst) {
    auto v = validate_path_instance(inst);
    if (!v.empty()) throw ValidationError("path instance: " + v.front());
}

bool directed_edge_of(const DirectedPath& p, VertexId a, VertexId b) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
        if (p.vertices[i] == a && p.vertices[i + 1] == b) return true;
    return false;
}

}  // namespace

bool is_rainbow_monotone(const LabeledPath& p, const PathInstance& inst) {
    if (p.vertices.size() < 2) return false;
    if (p.labels.size() + 1 != p.vertices.size()) return false;
    for (int l : p.labels)
        if (l < 0 || l >= inst.path_count())
            throw ValidationError("dangling label " + std::to_string(l) + ", instance has " +
                                  std::to_string(inst.path_count()) + " paths");
    std::set<VertexId> seen(p.vertices.begin(), p.vertices.end());
    if (seen.size() != p.vertices.size()) return false;
    for (std::size_t i = 1; i < p.labels.size(); ++i)
        if (p.labels[i] <= p.labels[i - 1]) return false;
    auto s = sorted_copy(inst.s), y = sorted_copy(inst.y), t = sorted_copy(inst.t);
    const auto& term = inst.is_st() ? t : s;
    if (!sorted_member(s, p.vertices.front())) return false;
    if (!sorted_member(term, p.vertices.back())) return false;
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
        if (!sorted_member(y, p.vertices[i])) return false;
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        if (!directed_edge_of(inst.paths[p.labels[i]], p.vertices[i], p.vertices[i + 1]))
            return false;
    return true;
}

namespace {

// Tree bookkeeping for the two-trees-per-Y-vertex argument. A vertex may sit
// in up to two trees, so parent links are keyed by (root, vertex).
struct TreeGrow {
    std::map<VertexId, std::vector<VertexId>> roots_of;  // vertex -> owning roots
    std::map<std::pair<VertexId, VertexId>, std::pair<VertexId, int>> parent;

    LabeledPath path_from_root(VertexId root, VertexId v) const {
        LabeledPath out;
        std::vector<VertexId> rev{v};
        std::vector<int> rev_labels;
        while (rev.back() != root) {
            auto it = parent.find({root, rev.back()});
            if (it == parent.end()) throw Error("internal: broken tree parent chain");
            rev_labels.push_back(it->second.second);
            rev.push_back(it->second.first);
        }
        out.vertices.assign(rev.rbegin(), rev.rend());
        out.labels.assign(rev_labels.rbegin(), rev_labels.rend());
        return out;
    }
};

LabeledPath checked(LabeledPath p, const PathInstance& inst) {
    if (!is_rainbow_monotone(p, inst))
        throw Error("internal: constructed path failed validation");
    return p;
}

PathSearchResult oracle_fallback(const PathInstance& inst) {
    log_info("constructive guarantee not met; falling back to exhaustive search");
    auto res = exists_monotone_path_exact(inst, SearchBudget{});
    PathSearchResult out;
    out.guaranteed = false;
    if (res.outcome == SearchOutcome::witness_found) out.path = res.path;
    return out;
}

}  // namespace

PathSearchResult find_monotone_ss_treegrow(const PathInstance& inst) {
    require_valid(inst);
    if (inst.is_st())
        throw PreconditionError("treegrow expects an S-S instance (T empty)");
    const bool guaranteed =
        inst.path_count() >= 2 * static_cast<int>(inst.y.size()) + 1;
    if (!guaranteed) return oracle_fallback(inst);

    auto s_sorted = sorted_copy(inst.s);
    TreeGrow tg;
    for (VertexId sv : inst.s) tg.roots_of[sv] = {sv};

    for (int k = 0; k < inst.path_count(); ++k) {
        const auto& pv = inst.paths[k].vertices;
        const VertexId p = pv.front(), q = pv.back();

        // terminal capture: q already sits in a foreign tree
        if (auto it = tg.roots_of.find(q); it != tg.roots_of.end())
            for (VertexId root : it->second)
                if (root != q)
                    return {checked(tg.path_from_root(root, q), inst), true};

        auto in_x = [&](VertexId v) {
            auto it = tg.roots_of.find(v);
            if (it == tg.roots_of.end()) return false;
            if (std::find(it->second.begin(), it->second.end(), p) != it->second.end())
                return true;
            return it->second.size() >= 2;
        };

        int a = -1;
        for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            if (in_x(pv[i]) && !in_x(pv[i + 1])) {
                a = static_cast<int>(i);
                break;
            }
        if (a < 0) throw Error("internal: no edge leaves X though ter(P) is outside");
        const VertexId x = pv[a], yv = pv[a + 1];

        VertexId root;
        const auto& xroots = tg.roots_of.at(x);
        if (std::find(xroots.begin(), xroots.end(), p) != xroots.end()) {
            root = p;
        } else {
            // x sits in two trees, neither rooted at p; pick the smallest root
            // whose tree does not already hold yv
            std::vector<VertexId> cand(xroots.begin(), xroots.end());
            std::sort(cand.begin(), cand.end());
            root = -1;
            for (VertexId r : cand) {
                auto yit = tg.roots_of.find(yv);
                bool holds = yit != tg.roots_of.end() &&
                             std::find(yit->second.begin(), yit->second.end(), r) !=
                                 yit->second.end();
                if (!holds) {
                    root = r;
                    break;
                }
            }
            if (root < 0) throw Error("internal: both trees of x already hold y");
        }

        if (sorted_member(s_sorted, yv)) {
            // the new edge closes an S-S path at once
            LabeledPath out = tg.path_from_root(root, x);
            out.vertices.push_back(yv);
            out.labels.push_back(k);
            return {checked(std::move(out), inst), true};
        }

        auto& yroots = tg.roots_of[yv];
        yroots.push_back(root);
        if (yroots.size() > 2)
            throw Error("internal: Y vertex joined a third tree");
        if (x != root) {
            auto pit = tg.parent.find({root, x});
            if (pit == tg.parent.end() || pit->second.second >= k)
                throw Error("internal: label monotonicity broken at attach");
        }
        tg.parent[{root, yv}] = {x, k};
    }
    throw Error("internal: treegrow exhausted >= 2|Y|+1 paths without success");
}

PathSearchResult find_monotone_st(const PathInstance& inst) {
    require_valid(inst);
    if (!inst.is_st())
        throw PreconditionError("find_monotone_st expects a nonempty T");
    const bool guaranteed =
        inst.path_count() > static_cast<int>(inst.y.size());
    if (!guaranteed) return oracle_fallback(inst);

    auto t_sorted = sorted_copy(inst.t);
    std::map<VertexId, VertexId> root_of;
    std::map<VertexId, std::pair<VertexId, int>> parent;
    for (VertexId sv : inst.s) root_of[sv] = sv;

    auto path_to = [&](VertexId v) {
        LabeledPath out;
        std::vector<VertexId> rev{v};
        std::vector<int> rl;
        while (parent.count(rev.back())) {
            auto& pr = parent.at(rev.back());
            rl.push_back(pr.second);
            rev.push_back(pr.first);
        }
        out.vertices.assign(rev.rbegin(), rev.rend());
        out.labels.assign(rl.rbegin(), rl.rend());
        return out;
    };

    for (int k = 0; k < inst.path_count(); ++k) {
        const auto& pv = inst.paths[k].vertices;
        int a = -1;
        for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            if (root_of.count(pv[i]) && !root_of.count(pv[i + 1])) {
                a = static_cast<int>(i);
                break;
            }
        if (a < 0)
            throw Error("internal: S-T path fully inside the forest though its "
                        "terminal is in T");
        const VertexId x = pv[a], yv = pv[a + 1];
        if (sorted_member(t_sorted, yv)) {
            LabeledPath out = path_to(x);
            out.vertices.push_back(yv);
            out.labels.push_back(k);
            return {checked(std::move(out), inst), true};
        }
        root_of[yv] = root_of.at(x);
        parent[yv] = {x, k};
    }
    throw Error("internal: S-T search exhausted > |Y| paths without success");
}

PathSearchResult find_monotone_ss_forest(const PathInstance& inst) {
    require_valid(inst);
    if (inst.is_st())
        throw PreconditionError("forest search expects an S-S instance (T empty)");
    const bool guaranteed =
        inst.path_count() >= 2 * static_cast<int>(inst.y.size()) + 1;
    if (!guaranteed) return oracle_fallback(inst);

    std::map<VertexId, VertexId> root_of;
    std::map<VertexId, std::pair<VertexId, int>> parent;
    std::map<VertexId, int> tree_size;
    std::map<VertexId, std::vector<int>> wasted;
    for (VertexId sv : inst.s) {
        root_of[sv] = sv;
        tree_size[sv] = 1;
    }

    VertexId max_id = 0;
    for (VertexId v : inst.s) max_id = std::max(max_id, v);
    for (VertexId v : inst.y) max_id = std::max(max_id, v);

    auto path_to = [&](VertexId v) {
        LabeledPath out;
        std::vector<VertexId> rev{v};
        std::vector<int> rl;
        while (parent.count(rev.back())) {
            auto& pr = parent.at(rev.back());
            rl.push_back(pr.second);
            rev.push_back(pr.first);
        }
        out.vertices.assign(rev.rbegin(), rev.rend());
        out.labels.assign(rl.rbegin(), rl.rend());
        return out;
    };

    for (int k = 0; k < inst.path_count(); ++k) {
        const auto& pv = inst.paths[k].vertices;
        int a = -1;
        for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            if (root_of.count(pv[i]) && !root_of.count(pv[i + 1])) {
                a = static_cast<int>(i);
                break;
            }
        if (a >= 0) {
            const VertexId x = pv[a], yv = pv[a + 1];
            root_of[yv] = root_of.at(x);
            parent[yv] = {x, k};
            ++tree_size[root_of[yv]];
            continue;
        }

        // wasted: the whole path runs inside the forest; charge its terminal
        const VertexId t = pv.back();
        wasted[t].push_back(k);
        if (static_cast<int>(wasted[t].size()) <= tree_size.at(t) - 1) continue;

        // overflow at t: contract everything outside T(t) to a super-source z
        // and finish with the S-T search on the clipped wasted paths
        std::set<VertexId> tree_t;
        for (const auto& [v, r] : root_of)
            if (r == t) tree_t.insert(v);

        const VertexId z = max_id + 1;
        PathInstance sub;
        sub.s = {z};
        sub.t = {t};
        for (VertexId v : tree_t)
            if (v != t) sub.y.push_back(v);
        std::vector<VertexId> preds;  // per clipped path: vertex feeding the suffix
        for (int kk : wasted.at(t)) {
            const auto& wp = inst.paths[kk].vertices;
            std::size_t start = wp.size() - 1;
            while (start > 0 && tree_t.count(wp[start - 1])) --start;
            if (start == 0)
                throw Error("internal: wasted path begins inside the target tree");
            DirectedPath clipped;
            clipped.vertices.push_back(z);
            clipped.vertices.insert(clipped.vertices.end(), wp.begin() + start,
                                    wp.end());
            sub.paths.push_back(std::move(clipped));
            preds.push_back(wp[start - 1]);
        }

        auto subres = find_monotone_st(sub);
        if (!subres.guaranteed || !subres.path)
            throw Error("internal: contraction subroutine lost its guarantee");
        const LabeledPath& sp = *subres.path;

        const auto& wlist = wasted.at(t);
        const int j0 = wlist[sp.labels.front()];
        const VertexId u = preds[sp.labels.front()];
        LabeledPath out = path_to(u);
        for (int lbl : out.labels)
            if (lbl >= j0) throw Error("internal: prefix labels not below j0");
        out.vertices.insert(out.vertices.end(), sp.vertices.begin() + 1,
                            sp.vertices.end());
        out.labels.push_back(j0);
        for (std::size_t i = 1; i < sp.labels.size(); ++i)
            out.labels.push_back(wlist[sp.labels[i]]);
        return {checked(std::move(out), inst), true};
    }
    throw Error("internal: forest search exhausted >= 2|Y|+1 paths without success");
}

StronglyRainbowResult strongly_rainbow_from_monotone(
    const std::vector<DisjointPathSet>& h, const std::vector<VertexId>& s,
    const std::vector<VertexId>& y) {
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t a = 0; a < h[i].size(); ++a)
            for (std::size_t b = a + 1; b < h[i].size(); ++b)
                for (VertexId v : h[i][a].vertices)
                    if (std::find(h[i][b].vertices.begin(), h[i][b].vertices.end(),
                                  v) != h[i][b].vertices.end())
                        throw ValidationError(
                            "H" + std::to_string(i) + ": paths " + std::to_string(a) +
                            " and " + std::to_string(b) + " share vertex " +
                            std::to_string(v));

    PathInstance flat;
    flat.s = s;
    flat.y = y;
    std::vector<int> owner;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (const DirectedPath& p : h[i]) {
            flat.paths.push_back(p);
            owner.push_back(static_cast<int>(i));
        }

    auto res = find_monotone_ss_treegrow(flat);
    StronglyRainbowResult out;
    out.guaranteed = res.guaranteed;
    if (!res.path) return out;
    LabeledPath lp = *res.path;
    for (int& l : lp.labels) l = owner[l];
    std::set<int> distinct(lp.labels.begin(), lp.labels.end());
    if (distinct.size() != lp.labels.size())
        throw Error("internal: monotone path touched one set twice");
    out.path = std::move(lp);
    return out;
}

bool is_strongly_rainbow(const LabeledPath& p, const std::vector<DisjointPathSet>& h,
                         const std::vector<VertexId>& s,
                         const std::vector<VertexId>& y) {
    if (p.vertices.size() < 2 || p.labels.size() + 1 != p.vertices.size())
        return false;
    for (int l : p.labels)
        if (l < 0 || l >= static_cast<int>(h.size()))
            throw ValidationError("dangling set label " + std::to_string(l));
    std::set<int> distinct(p.labels.begin(), p.labels.end());
    if (distinct.size() != p.labels.size()) return false;
    auto ss = sorted_copy(s), ys = sorted_copy(y);
    if (!sorted_member(ss, p.vertices.front()) ||
        !sorted_member(ss, p.vertices.back()))
        return false;
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
        if (!sorted_member(ys, p.vertices[i])) return false;
    std::set<VertexId> seen(p.vertices.begin(), p.vertices.end());
    if (seen.size() != p.vertices.size()) return false;
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        bool found = false;
        for (const DirectedPath& q : h[p.labels[i]])
            if (directed_edge_of(q, p.vertices[i], p.vertices[i + 1])) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace rainbow
