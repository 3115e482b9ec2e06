#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wtraj/model.hpp"

namespace wtraj {

/// Length of the longest contiguous run of locations present in both sequences.
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// All journey location sequences of a profile, concatenated in order.
std::vector<std::string> trajectory_locations(const ConsumerProfile& profile);

struct SimilarityHit {
    std::string device_id;
    std::size_t score = 0;

    bool operator==(const SimilarityHit&) const = default;
};

/// Ranks the population by common-substring length against the target,
/// best first, ties by device id. Entries sharing the target's device id are
/// skipped. Throws std::invalid_argument for k == 0 or an empty population.
std::vector<SimilarityHit> top_k_similar(const ConsumerProfile& target, std::span<const ConsumerProfile> population,
                                         std::size_t k);

/// Reusable matcher: builds the target's suffix automaton once.
class SubstringMatcher {
public:
    explicit SubstringMatcher(std::span<const std::string> target);

    std::size_t longest_common(std::span<const std::string> other) const;

private:
    struct State {
        std::size_t len = 0;
        int link = -1;
        std::vector<std::pair<int, int>> next;  // (symbol, state), sorted by symbol

        int go(int symbol) const;
        void set(int symbol, int state);
    };

    int symbol_of(const std::string& location) const;

    std::vector<State> states_;
    std::vector<std::string> alphabet_;  // sorted; symbol = index
};

}  // namespace wtraj
