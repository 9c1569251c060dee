#include <doctest.h>

#include <random>
#include <sstream>

#include "banditlab/log_io.hpp"
#include "banditlab/types.hpp"
#include "test_util.hpp"

using namespace banditlab;

namespace {

LogDataset two_item_dataset() {
    LogDataset data;
    data.num_items = 2;
    BanditEvent e;
    e.user_id = 0;
    e.context.views = {1, 0};
    e.action = 1;
    e.click = 1;
    e.propensity = 0.5;
    data.events.push_back(e);
    return data;
}

}  // namespace

TEST_CASE("validate_dataset") {
    SUBCASE("empty dataset is vacuously valid") {
        LogDataset data;
        data.num_items = 3;
        CHECK_NOTHROW(validate_dataset(data));
    }
    SUBCASE("valid single event") {
        CHECK_NOTHROW(validate_dataset(two_item_dataset()));
    }
    SUBCASE("zero propensity names the event") {
        LogDataset data = two_item_dataset();
        data.events[0].propensity = 0.0;
        CHECK_THROWS_WITH(validate_dataset(data),
                          "nonpositive propensity at event 0");
    }
    SUBCASE("action index K is out of range") {
        LogDataset data = two_item_dataset();
        data.events[0].action = 2;
        CHECK_THROWS_WITH(validate_dataset(data), "action out of range at event 0");
    }
    SUBCASE("reports the first offending event") {
        LogDataset data = two_item_dataset();
        data.events.push_back(data.events[0]);
        data.events.push_back(data.events[0]);
        data.events[1].click = 7;
        data.events[2].propensity = -1.0;
        CHECK_THROWS_WITH(validate_dataset(data), "click not in {0,1} at event 1");
    }
    SUBCASE("context length and negative views") {
        LogDataset data = two_item_dataset();
        data.events[0].context.views = {1, 2, 3};
        CHECK_THROWS_WITH(validate_dataset(data),
                          "context length mismatch at event 0");
        data.events[0].context.views = {1, -1};
        CHECK_THROWS_WITH(validate_dataset(data),
                          "negative view count at event 0");
    }
    SUBCASE("propensity above one") {
        LogDataset data = two_item_dataset();
        data.events[0].propensity = 1.25;
        CHECK_THROWS_WITH(validate_dataset(data), "propensity above 1 at event 0");
    }
}

TEST_CASE("banditlog-v1 round trip is byte identical") {
    std::mt19937 gen(123);
    for (int trial = 0; trial < 20; ++trial) {
        LogDataset data = testutil::random_dataset(gen, 4, 30);
        // propensities with no short decimal representation
        std::uniform_real_distribution<double> awkward(1e-6, 1.0);
        for (BanditEvent& e : data.events) e.propensity = awkward(gen);

        std::ostringstream first;
        write_log(data, first);
        std::istringstream parse_in(first.str());
        const LogDataset parsed = read_log(parse_in);

        REQUIRE(parsed.num_items == data.num_items);
        REQUIRE(parsed.size() == data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            CHECK(parsed.events[i].user_id == data.events[i].user_id);
            CHECK(parsed.events[i].context.views == data.events[i].context.views);
            CHECK(parsed.events[i].action == data.events[i].action);
            CHECK(parsed.events[i].click == data.events[i].click);
            // bit-identical, not approximately equal
            CHECK(parsed.events[i].propensity == data.events[i].propensity);
        }

        std::ostringstream second;
        write_log(parsed, second);
        CHECK(first.str() == second.str());
    }
}

TEST_CASE("read_log rejects foreign input") {
    std::istringstream empty("");
    CHECK_THROWS(read_log(empty));
    std::istringstream wrong("{\"format\":\"somethingelse\",\"num_items\":2}\n");
    CHECK_THROWS(read_log(wrong));
}
