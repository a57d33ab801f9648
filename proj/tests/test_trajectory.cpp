#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "levydim/trajectory.hpp"

using namespace levydim;

namespace {

Trajectory two_point_line() {
    Trajectory t;
    t.dim = 1;
    t.times = {0.0, 1.0};
    t.points = {0.0, 2.0};
    t.step = 1.0;
    t.horizon = 1.0;
    return t;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("interpolate with resolution one is the identity") {
    const Trajectory t = two_point_line();
    const Trajectory r = interpolate(t, 1);
    CHECK(r.times == t.times);
    CHECK(r.points == t.points);
    CHECK(r.dim == t.dim);
}

TEST_CASE("interpolate inserts the segment midpoint at resolution two") {
    const Trajectory r = interpolate(two_point_line(), 2);
    REQUIRE(r.size() == 3);
    CHECK(r.times[0] == 0.0);
    CHECK(r.times[1] == doctest::Approx(0.5));
    CHECK(r.times[2] == 1.0);
    CHECK(r.points[0] == 0.0);
    CHECK(r.points[1] == doctest::Approx(1.0));
    CHECK(r.points[2] == 2.0); // endpoint preserved exactly
}

TEST_CASE("interpolated point count follows the refinement formula") {
    Trajectory t;
    t.dim = 2;
    for (int k = 0; k < 7; ++k) {
        const double w[2] = {static_cast<double>(k), static_cast<double>(k * k)};
        t.push_back(0.25 * k, w);
    }
    for (int res : {1, 2, 3, 5}) {
        const Trajectory r = interpolate(t, res);
        CHECK(r.size() == (t.size() - 1) * static_cast<std::size_t>(res) + 1);
        // original points appear unchanged at stride `res`
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(r.times[k * static_cast<std::size_t>(res)] == t.times[k]);
            CHECK(r.points[k * static_cast<std::size_t>(res) * 2] == t.points[k * 2]);
        }
    }
    CHECK_THROWS_AS(interpolate(t, 0), std::invalid_argument);
}

TEST_CASE("binary round trip preserves every field") {
    Trajectory t;
    t.dim = 3;
    t.step = 0.125;
    t.horizon = 0.5;
    t.seed = 987654321;
    for (int k = 0; k <= 4; ++k) {
        const double w[3] = {0.1 * k, -2.5 * k, 1e-9 * k};
        t.push_back(std::min(0.125 * k, 0.5), w);
    }
    const std::string path = temp_path("levydim_traj_roundtrip.bin");
    save_trajectory(t, path);
    const Trajectory r = load_trajectory(path);
    std::remove(path.c_str());

    CHECK(r.dim == t.dim);
    CHECK(r.step == t.step);
    CHECK(r.horizon == t.horizon);
    CHECK(r.seed == t.seed);
    CHECK_FALSE(r.truncated);
    REQUIRE(r.size() == t.size());
    CHECK(r.points == t.points); // bit-identical payload
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(r.times[k] == t.times[k]);
    }
}

TEST_CASE("loading a shortened trajectory flags truncation") {
    Trajectory t;
    t.dim = 1;
    t.step = 0.25;
    t.horizon = 1.0; // full grid would be 5 points
    t.truncated = true;
    for (int k = 0; k < 3; ++k) {
        const double w = 1.5 * k;
        t.push_back(0.25 * k, {&w, 1});
    }
    const std::string path = temp_path("levydim_traj_truncated.bin");
    save_trajectory(t, path);
    const Trajectory r = load_trajectory(path);
    std::remove(path.c_str());
    CHECK(r.truncated);
    CHECK(r.size() == 3);
}

TEST_CASE("trajectory csv lists time then coordinates") {
    std::ostringstream os;
    write_trajectory_csv(two_point_line(), os);
    CHECK(os.str() == "t,w0\n0,0\n1,2\n");
}
