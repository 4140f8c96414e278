#include <doctest.h>

#include <random>

#include "lvic/ldic.hpp"

using namespace lvic;

namespace {

RationalVector vec2(long long a, long long b) { return {Rational(a), Rational(b)}; }

Rational support(const Polytope& p, const std::map<std::string, Rational>& dir) {
    auto r = p.maximize(dir);
    REQUIRE(r.status == LpStatus::Optimal);
    return r.value;
}

// Achievability witness: HK components whose sums cover the rate point.
bool hk_witness_exists(const DeterministicGains& g, const Rational& ra, const Rational& rb) {
    Polytope p = hk_component_polytope(g);
    Rational one(1);
    p.add({{{"r_ap", one}, {"r_ac", one}}, Sense::GE, ra});
    p.add({{{"r_bp", one}, {"r_bc", one}}, Sense::GE, rb});
    return !p.is_empty();
}

}  // namespace

TEST_CASE("ldic_transmit wires the running example") {
    DeterministicGains g{7, 3, 2, 2};
    auto xa = BitVectorWord::from_string("1111111");
    auto xb = BitVectorWord::from_string("11");
    auto [ya, yb] = ldic_transmit(g, xa, xb);
    CHECK(ya.to_string() == "1111100");  // two least significant levels flipped
    CHECK(yb.to_string() == "100");

    auto [ya2, yb2] = ldic_transmit(g, xa, BitVectorWord::from_string("00"));
    CHECK(ya2.to_string() == "1111111");  // identity on the direct link

    auto [ya3, yb3] = ldic_transmit(g, BitVectorWord::from_string("0000000"),
                                    BitVectorWord::from_string("11"));
    CHECK(ya3.to_string() == "0000011");
    CHECK(yb3.to_string() == "011");
}

TEST_CASE("ldic_transmit XOR cancellation and width checking") {
    DeterministicGains g{1, 1, 1, 1};
    auto one = BitVectorWord::from_string("1");
    auto [ya, yb] = ldic_transmit(g, one, one);
    CHECK(ya.to_string() == "0");
    CHECK(yb.to_string() == "0");
    CHECK_THROWS_AS(ldic_transmit(g, BitVectorWord::from_string("11"), one), WidthMismatch);
}

TEST_CASE("ldic_transmit is linear over GF(2)") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> gain(0, 4), bit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        DeterministicGains g{gain(rng), gain(rng), gain(rng), gain(rng)};
        auto rand_word = [&](long long w) {
            BitVectorWord v;
            for (long long i = 0; i < w; ++i) v.levels.push_back(bit(rng));
            return v;
        };
        long long wa = std::max(g.g_aa, g.g_ab), wb = std::max(g.g_bb, g.g_ba);
        auto xa = rand_word(wa), xa2 = rand_word(wa);
        auto xb = rand_word(wb), xb2 = rand_word(wb);
        auto [ya, yb] = ldic_transmit(g, xa, xb);
        auto [ya2, yb2] = ldic_transmit(g, xa2, xb2);
        auto [yax, ybx] = ldic_transmit(g, xa ^ xa2, xb ^ xb2);
        CHECK(yax == (ya ^ ya2));
        CHECK(ybx == (yb ^ yb2));
    }
}

TEST_CASE("TDM boundary and hull") {
    auto [ra, rb] = tdm_boundary(7, 2, Rational(1, 2));
    CHECK(ra == Rational(7, 2));
    CHECK(rb == 1);

    RateRegion hull = tdm_region(7, 2);
    CHECK(hull.all_vertices() == std::vector<RationalVector>{vec2(0, 0), vec2(0, 2), vec2(7, 0)});

    RateRegion flat = tdm_region(5, 0);
    CHECK(flat.all_vertices() == std::vector<RationalVector>{vec2(0, 0), vec2(5, 0)});
    CHECK(flat.contains_point(Rational(3), Rational(0)));
    CHECK_FALSE(flat.contains_point(Rational(3), Rational(1, 100)));
}

TEST_CASE("minimum performance criterion values from the running example") {
    DeterministicGains g{7, 3, 2, 2};
    CHECK(min_performance({Rational(3), Rational(2)}, g) == Rational(10, 7));
    CHECK(min_performance({Rational(2), Rational(2)}, g) == Rational(9, 7));
    CHECK(min_performance({Rational(0), Rational(2)}, g) == 1);
    DeterministicGains z{0, 1, 1, 2};
    CHECK(min_performance({Rational(0), Rational(1)}, z) == Rational(1, 2));
    CHECK_THROWS_AS(min_performance({Rational(1), Rational(0)}, z), ZeroCapacityViolation);
}

TEST_CASE("HK component polytope bounds by direct substitution") {
    DeterministicGains g{7, 3, 2, 2};
    Polytope p = hk_component_polytope(g);
    Rational one(1);
    CHECK(support(p, {{"r_ap", one}}) == 4);
    CHECK(support(p, {{"r_ac", one}}) == 3);
    CHECK(support(p, {{"r_bp", one}}) == 0);
    CHECK(support(p, {{"r_bc", one}}) == 2);
    CHECK(support(p, {{"r_ap", one}, {"r_bc", one}}) == 4);
    CHECK(support(p, {{"r_ac", one}, {"r_bc", one}}) == 3);

    Polytope free_ic = hk_component_polytope({5, 0, 0, 5});
    CHECK(support(free_ic, {{"r_ap", one}, {"r_ac", one}}) == 5);
    CHECK(support(free_ic, {{"r_bp", one}, {"r_bc", one}}) == 5);

    Polytope sym = hk_component_polytope({1, 1, 1, 1});
    CHECK(support(sym, {{"r_ap", one}}) == 0);
    CHECK(support(sym, {{"r_bp", one}}) == 0);
    CHECK(support(sym, {{"r_ac", one}}) == 1);
    CHECK(support(sym, {{"r_ac", one}, {"r_bc", one}}) == 1);
}

TEST_CASE("HK rate region projections") {
    CHECK(hk_region_ldic({7, 3, 2, 2}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 2), vec2(3, 2), vec2(7, 0)});
    CHECK(hk_region_ldic({4, 0, 0, 4}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 4), vec2(4, 0), vec2(4, 4)});
    CHECK(hk_region_ldic({1, 1, 1, 1}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 1), vec2(1, 0)});
}

TEST_CASE("full-view region by direct evaluation of the seven bounds") {
    CHECK(fullview_region({7, 3, 2, 2}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 2), vec2(3, 2), vec2(7, 0)});
    CHECK(fullview_region({5, 5, 5, 5}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 5), vec2(5, 0)});
    CHECK(fullview_region({4, 0, 0, 4}).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 4), vec2(4, 0), vec2(4, 4)});
}

TEST_CASE("strict paper mode reproduces the printed single-user bound") {
    RateRegion strict = fullview_region({7, 3, 2, 2}, true);
    // r_b <= g_aa leaves r_a + 2 r_b <= 7 as the binding cap on r_b.
    CHECK(strict.contains_point(Rational(0), Rational(7, 2)));
    CHECK_FALSE(fullview_region({7, 3, 2, 2}).contains_point(Rational(0), Rational(7, 2)));
}

TEST_CASE("HK equals full view on an exhaustive small grid") {
    for (int aa = 0; aa <= 2; ++aa)
        for (int ab = 0; ab <= 2; ++ab)
            for (int ba = 0; ba <= 2; ++ba)
                for (int bb = 0; bb <= 2; ++bb) {
                    DeterministicGains g{aa, ab, ba, bb};
                    CHECK(hk_region_ldic(g).all_vertices() == fullview_region(g).all_vertices());
                }
}

TEST_CASE("view 1: the (3,2) point of the running example") {
    DeterministicGains g{7, 3, 2, 2};
    Rational tb(4, 7);
    // Component witness: r_ap=2, r_ac=1, r_bp=0, r_bc=2.
    Polytope sys = detail::view1_system(g, tb);
    CHECK(sys.contains_point({{"r_a", Rational(3)},
                              {"r_b", Rational(2)},
                              {"r_ap", Rational(2)},
                              {"r_ac", Rational(1)},
                              {"r_bp", Rational(0)},
                              {"r_bc", Rational(2)}}));

    Polytope region = view1_region(g, tb);
    CHECK(region.contains_point({{"r_a", Rational(3)}, {"r_b", Rational(2)}}));

    RateRegion u = view1_union(g);
    CHECK(u.contains_point(Rational(3), Rational(2)));
    CHECK(min_performance({Rational(3), Rational(2)}, g) == Rational(10, 7));
    CHECK(contains(u, tdm_region(7, 2)));
    CHECK_FALSE(tdm_region(7, 2).contains_point(Rational(3), Rational(2)));
}

TEST_CASE("view 1 relabels when g_aa < g_bb") {
    DeterministicGains g{7, 3, 2, 2};
    DeterministicGains flipped = g.swapped();
    RateRegion u = view1_union(g);
    RateRegion v = view1_union(flipped);
    CHECK(v.contains_point(Rational(2), Rational(3)));
    auto uv = u.all_vertices();
    for (auto& p : uv) std::swap(p[0], p[1]);
    std::sort(uv.begin(), uv.end());
    CHECK(uv == v.all_vertices());
}

TEST_CASE("view 2: parametrized region, union, and FM corollary agree") {
    DeterministicGains g{7, 3, 2, 2};
    Polytope at0 = view2_region(g, Rational(0));
    CHECK(support(at0, {{"r_a", Rational(1)}}) == 2);
    CHECK(support(at0, {{"r_b", Rational(1)}}) == 2);
    CHECK(at0.contains_point({{"r_a", Rational(2)}, {"r_b", Rational(2)}}));

    Polytope at1 = view2_region(g, Rational(1));
    CHECK(support(at1, {{"r_b", Rational(1)}}) == 0);
    CHECK(support(at1, {{"r_a", Rational(1)}}) == 7);

    CHECK(region_equal(view2_union(g), view2_fm(g)));
    CHECK(view2_union(g).contains_point(Rational(2), Rational(2)));
    CHECK(min_performance({Rational(2), Rational(2)}, g) == Rational(9, 7));

    CHECK_THROWS_AS(view2_fm({3, 0, 1, 2}), DegenerateInterference);
}

TEST_CASE("view 2 union is always inside the FM form and inside capacity") {
    // The printed nine-inequality corollary omits some cross pairings of the
    // time-share bounds, so away from the running example it may be a strict
    // superset of the union; the union is the authoritative region.
    for (long long aa : {1, 2, 4})
        for (long long ab : {1, 3})
            for (long long ba : {2, 4})
                for (long long bb : {1, 3}) {
                    DeterministicGains g{aa, ab, ba, bb};
                    CHECK(contains(view2_fm(g), view2_union(g)));
                    CHECK(contains(fullview_region(g), view2_union(g)));
                }
    // One state where the corollary demonstrably over-approximates.
    DeterministicGains loose{2, 1, 2, 1};
    CHECK(view2_fm(loose).contains_point(Rational(3, 2), Rational(1, 2)));
    CHECK_FALSE(view2_union(loose).contains_point(Rational(3, 2), Rational(1, 2)));
}

TEST_CASE("views 3 and 5, and 4/6/7, reduce to the TDM hull") {
    DeterministicGains g{7, 3, 2, 2};
    CHECK(region_equal(views35_region(g), tdm_region(7, 2)));
    CHECK(region_equal(views467_region(g), tdm_region(7, 2)));
    CHECK(views35_region(g).all_vertices() == views467_region(g).all_vertices());

    DeterministicGains sym{3, 1, 2, 3};
    CHECK(views35_region(sym).all_vertices() ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 3), vec2(3, 0)});
}

TEST_CASE("dispatch: per-view regions and the knowledge ordering") {
    DeterministicGains g{7, 3, 2, 2};
    CHECK(tdm_dominating_region(2, g).contains_point(Rational(2), Rational(2)));
    CHECK(region_equal(tdm_dominating_region(7, g), tdm_region(7, 2)));
    RateRegion full = tdm_dominating_region(0, g);
    for (int k = 1; k <= 7; ++k) CHECK(contains(full, tdm_dominating_region(k, g)));
}

TEST_CASE("Fig. 1 ordering edges hold on a small exhaustive grid") {
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5},
                                                    {2, 4}, {2, 6}, {3, 5}, {3, 6}, {4, 7},
                                                    {5, 7}, {6, 7}};
    for (int aa = 1; aa <= 2; ++aa)
        for (int ab = 1; ab <= 2; ++ab)
            for (int ba = 1; ba <= 2; ++ba)
                for (int bb = 1; bb <= 2; ++bb) {
                    DeterministicGains g{aa, ab, ba, bb};
                    std::map<int, RateRegion> regions;
                    for (int k = 0; k <= 7; ++k) regions.emplace(k, tdm_dominating_region(k, g));
                    RateRegion hull = tdm_region(aa, bb);
                    for (const auto& [hi, lo] : edges) CHECK(contains(regions.at(hi), regions.at(lo)));
                    for (int k = 0; k <= 7; ++k) CHECK(contains(regions.at(k), hull));
                }
}

TEST_CASE("scaling property on sample states") {
    std::vector<DeterministicGains> states = {{7, 3, 2, 2}, {2, 1, 3, 2}, {3, 3, 1, 2}, {1, 2, 2, 1}};
    for (const auto& g : states) {
        for (long long c : {2, 3}) {
            for (int k : {0, 1, 2, 3, 7}) {
                RateRegion base = tdm_dominating_region(k, g);
                RateRegion big = tdm_dominating_region(k, g.scaled(c));
                RateRegion scaled = scale_region(base, Rational(c), Rational(c));
                CHECK(big.all_vertices() == scaled.all_vertices());
            }
        }
    }
}

TEST_CASE("union vertices admit HK component witnesses") {
    std::vector<DeterministicGains> states = {{7, 3, 2, 2}, {3, 2, 1, 2}, {4, 1, 3, 2}};
    for (const auto& g : states) {
        for (const auto& v : view1_union(g).all_vertices()) CHECK(hk_witness_exists(g, v[0], v[1]));
        for (const auto& v : view2_union(g).all_vertices()) CHECK(hk_witness_exists(g, v[0], v[1]));
    }
}

TEST_CASE("component rates sum per user and check into the HK region") {
    ComponentRates c{Rational(2), Rational(1), Rational(0), Rational(2)};
    CHECK(c.r_a() == 3);
    CHECK(c.r_b() == 2);
    CHECK(in_hk_polytope({7, 3, 2, 2}, c));
    CHECK_FALSE(in_hk_polytope({7, 3, 2, 2}, ComponentRates{Rational(5), Rational(1), Rational(0), Rational(2)}));
}

TEST_CASE("derived gain accessors") {
    DeterministicGains g{5, 2, 3, 4};
    CHECK(g.delta() == 1);
    CHECK(g.q_a() == 5);
    CHECK(g.q_b() == 4);
    CHECK(g.u_a_plus() == 2);
    CHECK(g.u_a_minus() == 0);
    CHECK(g.u_b_plus() == 2);
    CHECK(g.u_b_minus() == 0);
    CHECK(g.swapped() == DeterministicGains{4, 3, 2, 5});
}

TEST_CASE("LV-MAC capacity regions") {
    Polytope two = lvmac_capacity({2, 1});
    CHECK(vertices(two) ==
          std::vector<RationalVector>{vec2(0, 0), vec2(0, 1), vec2(1, 1), vec2(2, 0)});
    CHECK(two.contains_point(RationalVector{Rational(1), Rational(1)}));

    Polytope eq = lvmac_capacity({1, 1});
    CHECK(support(eq, {{"r_a", Rational(1)}, {"r_b", Rational(1)}}) == 1);

    // The worked policy example: at state (1,2) the forced point (0,1) is
    // interior and below the TDM criterion.
    Polytope mac12 = lvmac_capacity({1, 2});
    CHECK(mac12.contains_point(RationalVector{Rational(0), Rational(1)}));
    CHECK(Rational(0) / 1 + Rational(1) / 2 < 1);

    Polytope three = lvmac_capacity({1, 2, 3});
    CHECK(support(three, {{"r_1", Rational(1)}, {"r_2", Rational(1)}, {"r_3", Rational(1)}}) == 3);
    CHECK(support(three, {{"r_1", Rational(1)}, {"r_2", Rational(1)}}) == 2);
    CHECK_THROWS_AS(lvmac_capacity({1}), std::invalid_argument);
}

TEST_CASE("view masks match the figure") {
    ViewId v1 = ViewId::of(1);
    CHECK(v1.known_to_a == (kLinkAA | kLinkAB | kLinkBB));
    CHECK(v1.known_to_b == (kLinkAA | kLinkBA | kLinkBB));
    ViewId v2 = ViewId::of(2);
    CHECK(v2.known_to_a == (kLinkAA | kLinkAB | kLinkBA));
    CHECK(v2.known_to_b == (kLinkAB | kLinkBA | kLinkBB));
    CHECK(v2.common_mask() == (kLinkAB | kLinkBA));
    ViewId v5 = ViewId::of(5);
    CHECK(v5.known_to_a == v5.known_to_b);
    // Symmetry: link ij known to a iff ji known to b.
    for (int id = 0; id <= 7; ++id) {
        ViewId v = ViewId::of(id);
        CHECK(((v.known_to_a & kLinkAA) != 0) == ((v.known_to_b & kLinkBB) != 0));
        CHECK(((v.known_to_a & kLinkAB) != 0) == ((v.known_to_b & kLinkBA) != 0));
        CHECK(((v.known_to_a & kLinkBA) != 0) == ((v.known_to_b & kLinkAB) != 0));
        CHECK(((v.known_to_a & kLinkBB) != 0) == ((v.known_to_b & kLinkAA) != 0));
    }
}
