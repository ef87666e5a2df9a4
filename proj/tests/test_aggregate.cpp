#include <algorithm>
#include <random>

#include "doctest.h"
#include "flownav/aggregate.hpp"
#include "flownav/errors.hpp"
#include "test_support.hpp"

using namespace flownav;
using namespace flownav::aggregate;

namespace {

flow::FlowField zero_field(int w, int h) { return {Grid(w, h), Grid(w, h)}; }

/// Brute-force independent oracle: sort a copy, slice off 3 from each end,
/// average with a plain loop.
double trimmed_mean_oracle(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 3; i + 3 < v.size(); ++i) {
        sum += v[i];
        ++n;
    }
    return sum / n;
}

}  // namespace

TEST_CASE("segment: 320 columns partition into 106/107/107") {
    auto regions = segment(zero_field(320, 4));
    CHECK(regions.left.size() == 106u * 4);
    CHECK(regions.middle.size() == 107u * 4);
    CHECK(regions.right.size() == 107u * 4);
}

TEST_CASE("segment: zero field gives all-zero multisets") {
    auto regions = segment(zero_field(30, 6));
    for (const auto& r : {regions.left, regions.middle, regions.right})
        for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("segment: unit u in the leftmost column lands in L only") {
    flow::FlowField f = zero_field(30, 6);
    for (int y = 0; y < 6; ++y) f.u.at(0, y) = 1.0;
    auto regions = segment(f);
    CHECK(std::count(regions.left.begin(), regions.left.end(), 1.0) == 6);
    for (double v : regions.middle) CHECK(v == 0.0);
    for (double v : regions.right) CHECK(v == 0.0);
}

TEST_CASE("segment: magnitudes are sqrt(u^2+v^2)") {
    flow::FlowField f = zero_field(9, 3);
    f.u.at(0, 0) = 3.0;
    f.v.at(0, 0) = 4.0;
    auto regions = segment(f);
    CHECK(*std::max_element(regions.left.begin(), regions.left.end()) == 5.0);
}

TEST_CASE("trimmed_mean: single survivor") {
    CHECK(trimmed_mean({0, 0, 0, 5, 9, 9, 9}) == 5.0);
}

TEST_CASE("trimmed_mean: constant multisets are trim-invariant") {
    for (int n : {7, 12, 100}) {
        std::vector<double> v(n, 3.25);
        CHECK(trimmed_mean(v) == 3.25);
    }
}

TEST_CASE("trimmed_mean: undersized region throws") {
    CHECK_THROWS_AS(trimmed_mean({1, 2, 3, 4, 5, 6}), ValidationError);
}

TEST_CASE("trimmed_mean: matches the sort-and-slice oracle on 1000 random multisets") {
    auto rng = testsupport::test_rng(123);
    std::uniform_real_distribution<double> uni(0.0, 20.0);
    std::uniform_int_distribution<int> size(7, 60);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(size(rng));
        for (double& x : v) x = uni(rng);
        CHECK(trimmed_mean(v) == trimmed_mean_oracle(v));
    }
}

TEST_CASE("trimmed_mean: permutation-invariant and bounded by survivors") {
    auto rng = testsupport::test_rng(5);
    std::uniform_real_distribution<double> uni(0.0, 10.0);
    std::vector<double> v(25);
    for (double& x : v) x = uni(rng);
    double m = trimmed_mean(v);
    std::vector<double> shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(trimmed_mean(shuffled) == m);
    std::sort(v.begin(), v.end());
    CHECK(m >= v[3]);
    CHECK(m <= v[v.size() - 4]);
}

TEST_CASE("trimmed_mean: adding a constant shifts the mean by that constant") {
    auto rng = testsupport::test_rng(9);
    std::uniform_real_distribution<double> uni(0.0, 5.0);
    std::vector<double> v(40);
    for (double& x : v) x = uni(rng);
    double base = trimmed_mean(v);
    std::vector<double> shifted = v;
    for (double& x : shifted) x += 2.5;
    CHECK(trimmed_mean(shifted) == doctest::Approx(base + 2.5).epsilon(1e-12));
}

TEST_CASE("scale: definition and saturation") {
    CHECK(scale_value(0.0, 2.0) == 0.0);
    CHECK(scale_value(2.5, 2.0) == 5.0);
    CHECK(scale_value(50.0, 2.0) == 10.0);
}

TEST_CASE("region_flow: mirror swaps L and R and negates l_minus_r") {
    // width divisible by 3 so the thirds partition is mirror-symmetric;
    // at 320 the middle region is one column wider on the right
    const int w = 30, h = 8;
    auto rng = testsupport::test_rng(77);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    flow::FlowField f = zero_field(w, h);
    for (double& v : f.u.data) v = uni(rng);
    for (double& v : f.v.data) v = uni(rng);
    flow::FlowField m = zero_field(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            m.u.at(w - 1 - x, y) = -f.u.at(x, y);
            m.v.at(w - 1 - x, y) = f.v.at(x, y);
        }
    auto rf = region_flow(f, 2.0);
    auto rm = region_flow(m, 2.0);
    CHECK(rm.raw_l == rf.raw_r);
    CHECK(rm.raw_r == rf.raw_l);
    CHECK(rm.raw_m == doctest::Approx(rf.raw_m).epsilon(1e-12));
    CHECK(rm.l_minus_r == doctest::Approx(-rf.l_minus_r).epsilon(1e-12));
    CHECK(rm.l_plus_r == doctest::Approx(rf.l_plus_r).epsilon(1e-12));
}

TEST_CASE("region_flow: sign of l_minus_r follows the raw difference") {
    flow::FlowField f = zero_field(30, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 10; ++x) f.u.at(x, y) = 1.5;  // left region flows
    auto rf = region_flow(f, 2.0);
    CHECK(rf.raw_l > rf.raw_r);
    CHECK(rf.l_minus_r > 0.0);
    CHECK(rf.l == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rf.r == 0.0);
    CHECK(rf.l_plus_r == doctest::Approx(1.5).epsilon(1e-12));  // (l+r)/2 scaled
}
