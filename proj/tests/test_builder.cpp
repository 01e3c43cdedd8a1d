#include <vector>

#include "doctest.h"
#include "pathpower/audit.hpp"
#include "pathpower/builder.hpp"
#include "pathpower/oracle.hpp"

using namespace pathpower;

TEST_CASE("length-bound arithmetic") {
    PathPowerCertificate c;
    c.n = 10000;
    c.k = 2;
    c.params = LemmaParams{2, 4, 16, 10};
    c.blocks = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};  // j = 3
    for (const auto& b : c.blocks)
        c.sequence.insert(c.sequence.end(), b.begin(), b.end());
    LengthBound lb = certificate_length_bound(c);
    CHECK(lb.length == 7);  // (j+1)k - 1
    CHECK_FALSE(lb.paper_params);
    // generalized target: k*(floor((n - W*t)/((W-1)t)) + 1) - 1
    CHECK(lb.bound == 2 * ((10000 - 160) / 144 + 1) - 1);
}

TEST_CASE("certified-instance bound: k=2 at n=2^20 asks for 2 edges") {
    PathPowerCertificate c;
    c.n = 1u << 20;
    c.k = 2;
    c.params = LemmaParams::paper_instance(2);
    c.sequence = {0, 1, 2};  // length 2
    LengthBound lb = certificate_length_bound(c);
    CHECK(lb.paper_params);
    CHECK(lb.bound == 2);  // ceil(2^20 / 2^19)
    CHECK(lb.satisfied);
}

TEST_CASE("build preconditions") {
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::transitive(1000);  // < W*t = 6400
    CHECK_THROWS_WITH_AS(build_path_power(t, p),
                         "build_path_power: n >= W*t required (n = 1000, "
                         "W*t = 6400)",
                         std::invalid_argument);

    // guaranteed mode refuses uncertified parameters
    Tournament big = Tournament::implicit_random(10000, 1);
    BuildOptions opts;
    opts.mode = BuildMode::Guaranteed;
    CHECK_THROWS_AS(build_path_power(big, p, opts), std::invalid_argument);
}

TEST_CASE("heuristic build on a transitive tournament picks prefix blocks") {
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::transitive(1 << 16);
    BuildOptions opts;
    opts.mode = BuildMode::Heuristic;
    opts.strategy = OrderingStrategy::lazy();
    BuildOutcome out = build_path_power(t, p, opts);
    REQUIRE(out.ok());
    const PathPowerCertificate& c = *out.certificate;
    // lowest-position choices each step: [0,1], [64,65], [128,129], ...
    REQUIRE(c.blocks.size() >= 3);
    CHECK(c.blocks[0] == std::vector<Vertex>{0, 1});
    CHECK(c.blocks[1] == std::vector<Vertex>{64, 65});
    CHECK(c.blocks[2] == std::vector<Vertex>{128, 129});
    CHECK(out.stats.repairs == 0);
    CHECK(audit_certificate(t, c).pass());
    LengthBound lb = certificate_length_bound(c);
    CHECK(lb.satisfied);
}

TEST_CASE("lazy heuristic build verifies on a random implicit tournament") {
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::implicit_random(50000, 1);
    BuildOptions opts;
    opts.mode = BuildMode::Heuristic;
    opts.strategy = OrderingStrategy::lazy();
    BuildOutcome out = build_path_power(t, p, opts);
    REQUIRE(out.ok());
    const PathPowerCertificate& c = *out.certificate;
    CHECK(audit_certificate(t, c).pass());
    // stop-condition accounting: blocks = j+1 > (n - W*t)/((W-1)t)
    std::uint64_t floor_steps = (50000 - 6400) / (99 * 64);
    CHECK(c.blocks.size() >= floor_steps + 1);
    // window starts increase in steps of t..(W-1)t
    for (std::size_t m = 0; m + 1 < c.window_starts.size(); ++m) {
        std::uint64_t gap = c.window_starts[m + 1] - c.window_starts[m];
        REQUIRE(gap >= p.t);
        REQUIRE(gap <= (p.W - 1) * p.t);
        REQUIRE(gap % p.t == 0);
    }
    // exact forward recounts are skipped above the n threshold
    CHECK_FALSE(c.forward_edges.has_value());
}

TEST_CASE("guaranteed mode succeeds at a small certified instance") {
    LemmaParams p{2, 32, 256, 100};
    REQUIRE(certify_params(p).guaranteed);
    Tournament t = Tournament::implicit_random(2 * 25600, 3);
    BuildOptions opts;
    opts.mode = BuildMode::Guaranteed;
    opts.strategy = OrderingStrategy::lazy();
    BuildOutcome out = build_path_power(t, p, opts);
    REQUIRE(out.ok());  // certified parameters make failure a logic error
    const PathPowerCertificate& c = *out.certificate;
    CHECK(audit_certificate(t, c).pass());
    CHECK(certificate_length_bound(c).satisfied);
    CHECK(c.mode == BuildMode::Guaranteed);
}

TEST_CASE("converge strategy matches lazy block choices on a converged input") {
    // a transitive tournament is already locally optimal under the identity
    // ordering, so both strategies see identical windows
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::transitive(8192);
    BuildOptions lazy;
    lazy.strategy = OrderingStrategy::lazy();
    BuildOptions conv;
    conv.strategy = OrderingStrategy::converge();
    BuildOutcome a = build_path_power(t, p, lazy);
    BuildOutcome b = build_path_power(t, p, conv);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.certificate->blocks == b.certificate->blocks);
    CHECK(a.certificate->window_starts == b.certificate->window_starts);
    CHECK(a.certificate->ordering_digest == b.certificate->ordering_digest);
    // n is under the recount threshold and the ordering stayed put, so the
    // certificate carries the all-forward count
    REQUIRE(a.certificate->forward_edges.has_value());
    CHECK(*a.certificate->forward_edges == std::uint64_t{8192} * 8191 / 2);
}

TEST_CASE("passes strategy builds and verifies") {
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::implicit_random(20000, 9);
    BuildOptions opts;
    opts.strategy = OrderingStrategy::with_passes(1);
    BuildOutcome out = build_path_power(t, p, opts);
    CHECK(out.stats.ordering_passes == 1);
    REQUIRE(out.ok());
    CHECK(audit_certificate(t, *out.certificate).pass());
}

TEST_CASE("guaranteed mode also certifies a tiny k=1 instance") {
    // (k=1, r=4, t=16, W=100): theta = 785, mu ~ 1.487, 16*1.487 >= 4*3
    LemmaParams p{1, 4, 16, 100};
    REQUIRE(certify_params(p).guaranteed);
    Tournament t = Tournament::random_explicit(2000, 11);
    BuildOptions opts;
    opts.mode = BuildMode::Guaranteed;
    opts.strategy = OrderingStrategy::lazy();
    BuildOutcome out = build_path_power(t, p, opts);
    REQUIRE(out.ok());
    // a k=1 power is a plain directed path
    CHECK(audit_certificate(t, *out.certificate).pass());
    CHECK(certificate_length_bound(*out.certificate).satisfied);
}

TEST_CASE("the audit rejects tampered certificates claim by claim") {
    LemmaParams p{2, 8, 64, 100};
    Tournament t = Tournament::transitive(8192);
    BuildOptions opts;
    opts.strategy = OrderingStrategy::lazy();
    BuildOutcome out = build_path_power(t, p, opts);
    REQUIRE(out.ok());

    SUBCASE("reversed block order breaks transitivity") {
        PathPowerCertificate bad = *out.certificate;
        std::swap(bad.blocks[0][0], bad.blocks[0][1]);
        std::swap(bad.sequence[0], bad.sequence[1]);
        WitnessAudit audit = audit_certificate(t, bad);
        CHECK_FALSE(audit.pass());
        bool transitive_failed = false;
        for (const auto& line : audit.lines)
            if (line.name == "blocks-transitive" && !line.pass)
                transitive_failed = true;
        CHECK(transitive_failed);
    }
    SUBCASE("a duplicated vertex breaks disjointness and structure") {
        PathPowerCertificate bad = *out.certificate;
        bad.blocks[1][0] = bad.blocks[0][0];
        bad.sequence[2] = bad.sequence[0];
        WitnessAudit audit = audit_certificate(t, bad);
        CHECK_FALSE(audit.pass());
    }
    SUBCASE("a mangled sequence is caught against the blocks") {
        PathPowerCertificate bad = *out.certificate;
        std::swap(bad.sequence[0], bad.sequence[2]);
        WitnessAudit audit = audit_certificate(t, bad);
        CHECK_FALSE(audit.pass());
    }
}

TEST_CASE("every certificate the suite builds passes the definition check") {
    LemmaParams p{3, 8, 32, 20};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Tournament t = Tournament::implicit_random(4000, seed);
        BuildOptions opts;
        opts.strategy = OrderingStrategy::lazy();
        BuildOutcome out = build_path_power(t, p, opts);
        if (!out.ok()) continue;  // heuristic failures are data
        VerifyResult vr =
            verify_path_power(t, out.certificate->sequence, p.k);
        REQUIRE(vr.pass());
        REQUIRE(audit_certificate(t, *out.certificate).pass());
    }
}
