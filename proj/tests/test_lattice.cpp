#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "entropic/lattice.hpp"

using namespace entropic;

TEST_CASE("box size is (2N+1)^d") {
    CHECK(LatticeBox(1, 1).size() == 3);
    CHECK(LatticeBox(2, 1).size() == 9);
    CHECK(LatticeBox(2, 3).size() == 49);
    CHECK(LatticeBox(3, 2).size() == 125);
}

TEST_CASE("coordinate round trip") {
    LatticeBox box(3, 2);
    for (std::int32_t s = 0; s < box.size(); ++s)
        CHECK(box.site(box.coords(s)) == s);
}

TEST_CASE("neighbor relation is symmetric and complete") {
    LatticeBox box(2, 3);
    for (std::int32_t s = 0; s < box.size(); ++s) {
        int in_box = 0;
        for (int m = 0; m < box.neighbors_per_site(); ++m) {
            const auto t = box.neighbor(s, m);
            if (t == LatticeBox::exterior) continue;
            ++in_box;
            bool back = false;
            for (int mm = 0; mm < box.neighbors_per_site(); ++mm)
                if (box.neighbor(t, mm) == s) back = true;
            CHECK(back);
        }
        // interior sites see the full 2d neighborhood
        if (!box.on_boundary(s)) CHECK(in_box == 2 * box.dimension());
    }
}

TEST_CASE("interior site count matches") {
    LatticeBox box(2, 2);
    int interior = 0;
    for (std::int32_t s = 0; s < box.size(); ++s)
        if (!box.on_boundary(s)) ++interior;
    CHECK(interior == 9); // (2N-1)^2
}

TEST_CASE("checkerboard colors split neighbors") {
    LatticeBox box(2, 2);
    for (std::int32_t s = 0; s < box.size(); ++s)
        for (int m = 0; m < box.neighbors_per_site(); ++m) {
            const auto t = box.neighbor(s, m);
            if (t != LatticeBox::exterior) CHECK(box.color(s) != box.color(t));
        }
}

TEST_CASE("invalid boxes are rejected") {
    CHECK_THROWS(LatticeBox(0, 2));
    CHECK_THROWS(LatticeBox(2, 0));
}
