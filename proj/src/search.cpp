#include "projpart/search.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace projpart {

namespace {

struct Candidate {
    std::uint64_t cells;
    unsigned a;  // point masks
    unsigned b;
    std::size_t line;
};

struct Search {
    static constexpr int N = 7;
    static constexpr std::uint64_t full = (std::uint64_t{1} << (N * N)) - 1;
    static constexpr int max_part = 9;

    std::vector<Candidate> cands;
    std::vector<std::vector<std::size_t>> by_cell;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool aborted = false;
    std::size_t best;
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best_choice;

    void dfs(std::uint64_t covered) {
        if (aborted) return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (covered == full) {
            if (chosen.size() < best) {
                best = chosen.size();
                best_choice = chosen;
            }
            return;
        }
        const int rem = N * N - std::popcount(covered);
        if (chosen.size() + static_cast<std::size_t>((rem + max_part - 1) / max_part) >= best) return;
        int pick = -1;
        std::size_t fewest = SIZE_MAX;
        for (int c = 0; c < N * N; ++c) {
            if (covered >> c & 1U) continue;
            std::size_t fits = 0;
            for (std::size_t id : by_cell[c])
                if ((cands[id].cells & covered) == 0) ++fits;
            if (fits < fewest) {
                fewest = fits;
                pick = c;
            }
        }
        for (std::size_t id : by_cell[pick]) {
            if (cands[id].cells & covered) continue;
            chosen.push_back(id);
            dfs(covered | cands[id].cells);
            chosen.pop_back();
            if (aborted) return;
        }
    }
};

}  // namespace

SearchResult search_min_partition(std::uint64_t node_budget) {
    const SpacePtr space = Space::make(2, 2);
    const auto lines = enumerate_flats(space, 1);
    Search s;
    s.budget = node_budget;
    s.by_cell.resize(Search::N * Search::N);
    std::set<std::uint64_t> seen;
    for (std::size_t l = 0; l < lines.size(); ++l) {
        std::vector<std::size_t> pts = lines[l].points().members();
        for (unsigned am = 1; am < 8; ++am)
            for (unsigned bm = 1; bm < 8; ++bm) {
                unsigned a = 0, b = 0;
                for (int i = 0; i < 3; ++i) {
                    if (am >> i & 1U) a |= 1U << pts[i];
                    if (bm >> i & 1U) b |= 1U << pts[i];
                }
                std::uint64_t cells = 0;
                for (int x = 0; x < Search::N; ++x)
                    for (int y = 0; y < Search::N; ++y)
                        if ((a >> x & 1U) && (b >> y & 1U)) cells |= std::uint64_t{1} << (x * Search::N + y);
                if (seen.insert(cells).second) s.cands.push_back({cells, a, b, l});
            }
    }
    std::stable_sort(s.cands.begin(), s.cands.end(),
                     [](const Candidate& x, const Candidate& y) { return std::popcount(x.cells) > std::popcount(y.cells); });
    for (std::size_t id = 0; id < s.cands.size(); ++id)
        for (int c = 0; c < Search::N * Search::N; ++c)
            if (s.cands[id].cells >> c & 1U) s.by_cell[c].push_back(id);

    SearchResult res;
    res.budget = node_budget;
    res.candidates = s.cands.size();
    Partition seed = construct_plane_partition(2);
    s.best = seed.size();
    s.dfs(0);
    res.nodes = std::min(s.nodes, node_budget);
    res.complete = !s.aborted;
    res.best = s.best;
    const std::uint64_t volume = (Search::N * Search::N + Search::max_part - 1) / Search::max_part;
    res.lower = res.complete ? res.best : volume;
    if (s.best_choice.empty()) {
        res.partition = std::move(seed);
    } else {
        res.partition = Partition{space, 2, {}};
        for (std::size_t id : s.best_choice) {
            const Candidate& c = s.cands[id];
            PointSet a = space->empty_set(), b = space->empty_set();
            for (std::size_t p = 0; p < space->num_points(); ++p) {
                if (c.a >> p & 1U) a.insert(p);
                if (c.b >> p & 1U) b.insert(p);
            }
            res.partition.parts.push_back(
                ProductPart{{Factor::from_points(space, a), Factor::from_points(space, b)}, lines[c.line]});
        }
    }
    return res;
}

}  // namespace projpart
