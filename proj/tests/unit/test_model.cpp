#include <gtest/gtest.h>

#include "builders.hpp"
#include "wtraj/model.hpp"

namespace wtraj {
namespace {

using testing::event;
using testing::obs;

TEST(ValidateObservation, WellFormedRecordIsValid) {
    auto o = obs("1", "A", kEarliestValidTimestamp + 100, kEarliestValidTimestamp + 200);
    EXPECT_TRUE(validate_observation(o).valid());
    o.entry_time = 100;
    o.exit_time = 200;
    EXPECT_TRUE(validate_observation(o, 0).valid());
}

TEST(ValidateObservation, EntryAfterExit) {
    const auto v = validate_observation(obs("1", "A", 200, 100), 0);
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(*v.issue, ObservationIssue::EntryAfterExit);
    EXPECT_EQ(to_string(*v.issue), "entry_after_exit");
}

TEST(ValidateObservation, EmptyLocation) {
    const auto v = validate_observation(obs("1", "", kEarliestValidTimestamp, kEarliestValidTimestamp));
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(*v.issue, ObservationIssue::EmptyLocation);
}

TEST(ValidateObservation, EpochZeroIsBeforeCutoff) {
    const auto v = validate_observation(obs("1", "A", 0, 10));
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(*v.issue, ObservationIssue::BeforeEarliestTimestamp);
    EXPECT_EQ(to_string(*v.issue), "before_earliest_timestamp");
}

TEST(ValidateObservation, CutoffIsStartOf2000) {
    EXPECT_EQ(kEarliestValidTimestamp, 946'684'800'000);
    EXPECT_TRUE(validate_observation(obs("1", "A", kEarliestValidTimestamp, kEarliestValidTimestamp)).valid());
    EXPECT_FALSE(validate_observation(obs("1", "A", kEarliestValidTimestamp - 1, kEarliestValidTimestamp)).valid());
}

TEST(BeaconKind, RoundTripsThroughText) {
    for (auto k : {BeaconKind::Wap, BeaconKind::Ble}) EXPECT_EQ(parse_beacon_kind(to_string(k)), k);
    EXPECT_FALSE(parse_beacon_kind("wifi").has_value());
}

TEST(Journey, MergesAdjacentDuplicateLocations) {
    const Journey j({event("A", EventKind::Entry, 0), event("A", EventKind::Exit, 10), event("B", EventKind::Entry, 20),
                     event("B", EventKind::Exit, 30), event("A", EventKind::Entry, 40)},
                    kMsPerHour);
    EXPECT_EQ(j.location_sequence(), (std::vector<std::string>{"A", "B", "A"}));
    EXPECT_EQ(j.start_time(), 0);
    EXPECT_EQ(j.end_time(), 40);
    EXPECT_EQ(j.duration(), 40);
}

TEST(Journey, RejectsEmptyOutOfOrderAndOverlongGaps) {
    EXPECT_THROW(Journey({}, 10), std::invalid_argument);
    EXPECT_THROW(Journey({event("A", EventKind::Entry, 10), event("A", EventKind::Exit, 5)}, 100),
                 std::invalid_argument);
    EXPECT_THROW(Journey({event("A", EventKind::Entry, 0), event("A", EventKind::Exit, 11)}, 10),
                 std::invalid_argument);
    EXPECT_NO_THROW(Journey({event("A", EventKind::Entry, 0), event("A", EventKind::Exit, 10)}, 10));
}

TEST(LocationLabel, TokensRoundTrip) {
    for (auto l : {LocationLabel::Home, LocationLabel::Work, LocationLabel::OtherOrl, LocationLabel::Unknown}) {
        EXPECT_EQ(label_from_token(token(l)), l);
    }
    EXPECT_EQ(token(LocationLabel::Home), 'H');
    EXPECT_EQ(token(LocationLabel::Work), 'W');
    EXPECT_EQ(token(LocationLabel::OtherOrl), 'O');
    EXPECT_EQ(token(LocationLabel::Unknown), 'U');
    EXPECT_FALSE(label_from_token('X').has_value());
}

TEST(LocationLabels, UnlistedLocationsAreUnknown) {
    LocationLabels labels;
    labels.by_location["A"] = LocationLabel::Home;
    EXPECT_EQ(labels.label_of("A"), LocationLabel::Home);
    EXPECT_EQ(labels.label_of("B"), LocationLabel::Unknown);
}

TEST(OfflineRestLocation, TotalRestSumsDurations) {
    const OfflineRestLocation orl{"A", {10, 20, 30}, 0, 0};
    EXPECT_EQ(orl.total_rest(), 60);
}

TEST(FeatureVector, ValuesRoundTrip) {
    const FeatureVector f{1.5, 2.5, 3.5, 4.5};
    EXPECT_EQ(FeatureVector::from_values(f.values()), f);
}

}  // namespace
}  // namespace wtraj
