#include "failscen/align.hpp"

#include <algorithm>
#include <cassert>

namespace failscen::align {

using model::AbstractTree;
using model::AtNode;

namespace {

// Postorder layout of a tree plus the leftmost-leaf and keyroot tables the
// edit-distance recurrence runs on.
struct Shape {
    std::vector<int> post;      // postorder index -> node id
    std::vector<int> leftmost;  // postorder index -> postorder index of leftmost leaf
    std::vector<int> keyroots;  // ascending postorder indices
    std::vector<std::string> construct;            // node id -> construct label
    std::vector<std::vector<std::string>> types;   // node id -> type list
};

void postorder(const AbstractTree& t, int id, std::vector<int>& out) {
    for (int kid : t.nodes[id].kids) postorder(t, kid, out);
    out.push_back(id);
}

Shape shapeOf(const AbstractTree& t) {
    Shape s;
    s.post.reserve(t.nodes.size());
    postorder(t, 0, s.post);
    int n = static_cast<int>(s.post.size());

    std::vector<int> pos(t.nodes.size(), -1);
    for (int i = 0; i < n; ++i) pos[s.post[i]] = i;

    s.leftmost.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const AtNode& node = t.nodes[s.post[i]];
        s.leftmost[i] = node.kids.empty() ? i : s.leftmost[pos[node.kids.front()]];
    }

    // a node is a keyroot when it is not the leftmost child of its parent
    for (int i = 0; i < n; ++i) {
        int id = s.post[i];
        int parent = t.nodes[id].parent;
        if (parent < 0 || t.nodes[parent].kids.front() != id) s.keyroots.push_back(i);
    }

    s.construct.resize(t.nodes.size());
    s.types.resize(t.nodes.size());
    for (std::size_t id = 0; id < t.nodes.size(); ++id) {
        s.construct[id] = model::constructOf(t.nodes[id]);
        s.types[id] = model::typesOf(t.nodes[id]);
    }
    return s;
}

class Aligner {
public:
    Aligner(const AbstractTree& t1, const AbstractTree& t2, const std::vector<int>& protectedT1)
        : s1_(shapeOf(t1)), s2_(shapeOf(t2)) {
        n1_ = static_cast<int>(s1_.post.size());
        n2_ = static_cast<int>(s2_.post.size());
        sentinel_ = static_cast<double>(n1_ + n2_ + 1) * 2.0;

        pos1_.assign(t1.nodes.size(), -1);
        for (int i = 0; i < n1_; ++i) pos1_[s1_.post[i]] = i;
        pos2_.assign(t2.nodes.size(), -1);
        for (int i = 0; i < n2_; ++i) pos2_[s2_.post[i]] = i;

        del_.assign(n1_, 1.0);
        for (int id : protectedT1) {
            if (id >= 0 && id < static_cast<int>(pos1_.size()) && pos1_[id] >= 0)
                del_[pos1_[id]] = sentinel_;
        }

        td_.assign(n1_, std::vector<double>(n2_, 0.0));
    }

    Alignment run() {
        for (int k1 : s1_.keyroots)
            for (int k2 : s2_.keyroots) forestDist(k1, k2);

        Alignment out;
        out.cost = td_[n1_ - 1][n2_ - 1];

        std::vector<EditStep> steps;  // discovered right to left
        backtrack(n1_ - 1, n2_ - 1, steps);
        std::reverse(steps.begin(), steps.end());

        double scripted = 0.0;
        for (const EditStep& s : steps) {
            switch (s.op) {
                case EditOp::Match: {
                    double c = sub(pos1_[s.a], pos2_[s.b]);
                    scripted += c;
                    out.matches.push_back(
                        {s.a, s.b, c == 0.0 ? MatchKind::Full : MatchKind::Partial});
                    break;
                }
                case EditOp::Update:
                    scripted += 1.0;
                    break;
                case EditOp::Delete:
                    scripted += del_[pos1_[s.a]];
                    break;
                case EditOp::Insert:
                    scripted += 1.0;
                    break;
            }
        }
        assert(scripted == out.cost);
        (void)scripted;
        out.script = std::move(steps);
        std::sort(out.matches.begin(), out.matches.end(),
                  [](const MatchPair& x, const MatchPair& y) { return x.a < y.a; });
        return out;
    }

private:
    double sub(int pi, int pj) const {
        const std::string& ca = s1_.construct[s1_.post[pi]];
        const std::string& cb = s2_.construct[s2_.post[pj]];
        if (ca != cb) return 1.0;
        const auto& ta = s1_.types[s1_.post[pi]];
        const auto& tb = s2_.types[s2_.post[pj]];
        if (ta.size() != tb.size()) return 0.5;
        for (std::size_t i = 0; i < ta.size(); ++i) {
            if (ta[i] == model::kMissingType || tb[i] == model::kMissingType) return 0.5;
            if (ta[i] != tb[i]) return 0.5;
        }
        return 0.0;
    }

    // Fills the forest-distance table for the keyroot pair (i, j) and records
    // the subtree distances it settles. When `fd` is given the table is kept
    // for backtracking; td_ must already be complete in that case.
    void forestDist(int i, int j, std::vector<std::vector<double>>* keep = nullptr) {
        int li = s1_.leftmost[i], lj = s2_.leftmost[j];
        int m = i - li + 2, n = j - lj + 2;
        std::vector<std::vector<double>> local;
        std::vector<std::vector<double>>& fd = keep ? *keep : local;
        fd.assign(m, std::vector<double>(n, 0.0));

        for (int di = 1; di < m; ++di) fd[di][0] = fd[di - 1][0] + del_[li + di - 1];
        for (int dj = 1; dj < n; ++dj) fd[0][dj] = fd[0][dj - 1] + 1.0;

        for (int di = 1; di < m; ++di) {
            for (int dj = 1; dj < n; ++dj) {
                int pi = li + di - 1, pj = lj + dj - 1;
                double viaDel = fd[di - 1][dj] + del_[pi];
                double viaIns = fd[di][dj - 1] + 1.0;
                if (s1_.leftmost[pi] == li && s2_.leftmost[pj] == lj) {
                    double viaSub = fd[di - 1][dj - 1] + sub(pi, pj);
                    fd[di][dj] = std::min({viaSub, viaDel, viaIns});
                    if (!keep) td_[pi][pj] = fd[di][dj];
                } else {
                    double viaTree =
                        fd[s1_.leftmost[pi] - li][s2_.leftmost[pj] - lj] + td_[pi][pj];
                    fd[di][dj] = std::min({viaTree, viaDel, viaIns});
                }
            }
        }
    }

    // Recovers one optimal script for the subtree pair (i, j), right to left,
    // resolving ties as deletion, then insertion, then substitution: the
    // matched pairs land as far left as an optimal script allows.
    void backtrack(int i, int j, std::vector<EditStep>& steps) {
        std::vector<std::vector<double>> fd;
        forestDist(i, j, &fd);
        int li = s1_.leftmost[i], lj = s2_.leftmost[j];
        int di = i - li + 1, dj = j - lj + 1;
        while (di > 0 || dj > 0) {
            int pi = li + di - 1, pj = lj + dj - 1;
            if (di > 0 && fd[di][dj] == fd[di - 1][dj] + del_[pi]) {
                steps.push_back({EditOp::Delete, s1_.post[pi], -1});
                --di;
                continue;
            }
            if (dj > 0 && fd[di][dj] == fd[di][dj - 1] + 1.0) {
                steps.push_back({EditOp::Insert, -1, s2_.post[pj]});
                --dj;
                continue;
            }
            assert(di > 0 && dj > 0);
            if (s1_.leftmost[pi] == li && s2_.leftmost[pj] == lj) {
                assert(fd[di][dj] == fd[di - 1][dj - 1] + sub(pi, pj));
                steps.push_back({sub(pi, pj) > 0.5 ? EditOp::Update : EditOp::Match,
                                 s1_.post[pi], s2_.post[pj]});
                --di;
                --dj;
            } else {
                assert(fd[di][dj] ==
                       fd[s1_.leftmost[pi] - li][s2_.leftmost[pj] - lj] + td_[pi][pj]);
                backtrack(pi, pj, steps);
                di = s1_.leftmost[pi] - li;
                dj = s2_.leftmost[pj] - lj;
            }
        }
    }

    Shape s1_, s2_;
    int n1_ = 0, n2_ = 0;
    double sentinel_ = 0.0;
    std::vector<int> pos1_, pos2_;              // node id -> postorder index
    std::vector<double> del_;                   // postorder index -> deletion cost in t1
    std::vector<std::vector<double>> td_;       // subtree distances, postorder indexed
};

}  // namespace

double nodeCost(const AtNode& a, const AtNode& b) {
    if (model::constructOf(a) != model::constructOf(b)) return 1.0;
    auto ta = model::typesOf(a);
    auto tb = model::typesOf(b);
    if (ta.size() != tb.size()) return 0.5;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i] == model::kMissingType || tb[i] == model::kMissingType) return 0.5;
        if (ta[i] != tb[i]) return 0.5;
    }
    return 0.0;
}

Alignment alignTrees(const AbstractTree& t1, const AbstractTree& t2,
                     const std::vector<int>& protectedT1) {
    Alignment empty;
    if (t1.nodes.empty() || t2.nodes.empty()) return empty;
    Aligner aligner(t1, t2, protectedT1);
    return aligner.run();
}

}  // namespace failscen::align
