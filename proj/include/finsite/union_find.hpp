#pragma once
#include <numeric>
#include <vector>

namespace finsite {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int x, int y) {
        int px = find(x);
        int py = find(y);
        if (px == py) return;
        if (rank_[px] < rank_[py]) std::swap(px, py);
        parent_[py] = px;
        if (rank_[px] == rank_[py]) rank_[px]++;
    }

    bool connected(int x, int y) { return find(x) == find(y); }

    // Blocks listed in order of least member, each block sorted.
    std::vector<std::vector<int>> blocks() {
        std::vector<std::vector<int>> out;
        std::vector<int> where(parent_.size(), -1);
        for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
            int r = find(i);
            if (where[r] < 0) {
                where[r] = static_cast<int>(out.size());
                out.emplace_back();
            }
            out[where[r]].push_back(i);
        }
        return out;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

} // namespace finsite
