#include "wtraj/routesim.hpp"

#include <algorithm>
#include <stdexcept>

namespace wtraj {

int SubstringMatcher::State::go(int symbol) const {
    const auto it = std::lower_bound(next.begin(), next.end(), std::pair{symbol, -1});
    return (it != next.end() && it->first == symbol) ? it->second : -1;
}

void SubstringMatcher::State::set(int symbol, int state) {
    const auto it = std::lower_bound(next.begin(), next.end(), std::pair{symbol, -1});
    if (it != next.end() && it->first == symbol) {
        it->second = state;
    } else {
        next.insert(it, {symbol, state});
    }
}

SubstringMatcher::SubstringMatcher(std::span<const std::string> target)
    : alphabet_(target.begin(), target.end()) {
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());

    states_.reserve(2 * target.size() + 1);
    states_.emplace_back();
    int last = 0;
    for (const auto& loc : target) {
        const int c = symbol_of(loc);
        const int cur = static_cast<int>(states_.size());
        states_.emplace_back();
        states_[cur].len = states_[last].len + 1;
        int p = last;
        while (p != -1 && states_[p].go(c) == -1) {
            states_[p].set(c, cur);
            p = states_[p].link;
        }
        if (p == -1) {
            states_[cur].link = 0;
        } else {
            const int q = states_[p].go(c);
            if (states_[p].len + 1 == states_[q].len) {
                states_[cur].link = q;
            } else {
                const int clone = static_cast<int>(states_.size());
                State copy = states_[q];
                copy.len = states_[p].len + 1;
                states_.push_back(std::move(copy));
                while (p != -1 && states_[p].go(c) == q) {
                    states_[p].set(c, clone);
                    p = states_[p].link;
                }
                states_[q].link = clone;
                states_[cur].link = clone;
            }
        }
        last = cur;
    }
}

int SubstringMatcher::symbol_of(const std::string& location) const {
    const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), location);
    return (it != alphabet_.end() && *it == location) ? static_cast<int>(it - alphabet_.begin()) : -1;
}

std::size_t SubstringMatcher::longest_common(std::span<const std::string> other) const {
    int state = 0;
    std::size_t length = 0;
    std::size_t best = 0;
    for (const auto& loc : other) {
        const int c = symbol_of(loc);
        if (c < 0) {
            state = 0;
            length = 0;
            continue;
        }
        while (state != 0 && states_[state].go(c) == -1) {
            state = states_[state].link;
            length = states_[state].len;
        }
        const int nxt = states_[state].go(c);
        if (nxt != -1) {
            state = nxt;
            ++length;
        } else {
            state = 0;
            length = 0;
        }
        best = std::max(best, length);
    }
    return best;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) return 0;
    return SubstringMatcher(a).longest_common(b);
}

std::vector<std::string> trajectory_locations(const ConsumerProfile& profile) {
    std::vector<std::string> out;
    for (const auto& j : profile.journeys) {
        const auto& seq = j.location_sequence();
        out.insert(out.end(), seq.begin(), seq.end());
    }
    return out;
}

std::vector<SimilarityHit> top_k_similar(const ConsumerProfile& target, std::span<const ConsumerProfile> population,
                                         std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (population.empty()) throw std::invalid_argument("population is empty");

    const auto target_seq = trajectory_locations(target);
    const SubstringMatcher matcher(target_seq);
    std::vector<SimilarityHit> hits;
    hits.reserve(population.size());
    for (const auto& p : population) {
        if (p.device_id == target.device_id) continue;
        hits.push_back({p.device_id, matcher.longest_common(trajectory_locations(p))});
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
        return x.score != y.score ? x.score > y.score : x.device_id < y.device_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

}  // namespace wtraj
