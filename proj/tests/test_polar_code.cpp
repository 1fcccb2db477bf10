#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "polarbp/polar_code.hpp"

using namespace polarbp;

namespace {

Bits random_bits(std::mt19937_64& gen, int len) {
    Bits v(len);
    for (auto& b : v) b = static_cast<std::uint8_t>(gen() & 1);
    return v;
}

Bits unit_vector(int n, int one_based_pos) {
    Bits u(n, 0);
    u[one_based_pos - 1] = 1;
    return u;
}

}  // namespace

TEST_CASE("construct: two-channel split freezes the degraded channel") {
    const PolarCode code = PolarCode::construct(2, 1, 0.5);
    // z -> {0.75, 0.25}: index 1 is the worse synthesized channel
    CHECK(code.frozen == Bits{1, 0});
    CHECK(code.k == 1);
    CHECK(code.m == 1);
}

TEST_CASE("construct: (8,4) at design_z=0.5") {
    const PolarCode code = PolarCode::construct(8, 4, 0.5);
    CHECK(code.frozen_positions() == std::vector<int>{0, 1, 2, 4});
}

TEST_CASE("construct: k=n freezes nothing") {
    const PolarCode code = PolarCode::construct(8, 8, 0.5);
    CHECK(code.frozen == Bits(8, 0));
}

TEST_CASE("construct matches the recursive reference profile") {
    std::mt19937_64 gen(7001);
    for (int n : {2, 4, 8, 16, 32, 64, 128}) {
        const std::vector<double> prof = bhattacharyya_profile(n, 0.5);
        const std::vector<double> ref = test_oracles::bhatt_reference(n, 0.5);
        for (int i = 0; i < n; ++i) CHECK(prof[i] == doctest::Approx(ref[i]).epsilon(1e-12));

        std::uniform_real_distribution<double> zdist(0.05, 0.95);
        std::uniform_int_distribution<int> kdist(1, n);
        for (int rep = 0; rep < 8; ++rep) {
            const double z0 = zdist(gen);
            const int k = kdist(gen);
            const PolarCode code = PolarCode::construct(n, k, z0);
            CHECK(code.frozen == test_oracles::reference_frozen_mask(n, k, z0));
        }
    }
}

TEST_CASE("construct: freezing grows monotonically as k shrinks") {
    for (int k = 1; k < 64; ++k) {
        const PolarCode more = PolarCode::construct(64, k, 0.5);
        const PolarCode fewer = PolarCode::construct(64, k + 1, 0.5);
        for (int i = 0; i < 64; ++i)
            if (fewer.frozen[i]) CHECK(more.frozen[i]);
    }
}

TEST_CASE("construct rejects bad parameters") {
    CHECK_THROWS(PolarCode::construct(6, 3, 0.5));
    CHECK_THROWS(PolarCode::construct(0, 0, 0.5));
    CHECK_THROWS(PolarCode::construct(8, 0, 0.5));
    CHECK_THROWS(PolarCode::construct(8, 9, 0.5));
    CHECK_THROWS(PolarCode::construct(8, 4, 0.0));
    CHECK_THROWS(PolarCode::construct(8, 4, 1.0));
}

TEST_CASE("encode: known words against the Kronecker rows") {
    const PolarCode code = PolarCode::construct(8, 8, 0.5);  // identity info map
    CHECK(encode(code, Bits(8, 0)).x == Bits(8, 0));
    CHECK(encode(code, unit_vector(8, 8)).x == Bits(8, 1));          // last row: all ones
    CHECK(encode(code, unit_vector(8, 4)).x == Bits{1, 1, 1, 1, 0, 0, 0, 0});
    CHECK(encode(code, unit_vector(8, 5)).x == Bits{1, 0, 0, 0, 1, 0, 0, 0});

    const auto rows = test_oracles::kronecker_rows(3);
    for (int pos = 1; pos <= 8; ++pos)
        CHECK(encode(code, unit_vector(8, pos)).x == rows[pos - 1]);
}

TEST_CASE("encode places info bits and zeroes frozen positions") {
    const PolarCode code = PolarCode::construct(8, 4, 0.5);
    const Codeword cw = encode(code, Bits{1, 0, 1, 1});
    CHECK(cw.u == Bits{0, 0, 0, 1, 0, 0, 1, 1});
    CHECK(extract_info_bits(code, cw.u) == Bits{1, 0, 1, 1});
    CHECK_THROWS(encode(code, Bits{1, 0, 1}));
}

TEST_CASE("encode agrees with the Kronecker oracle on random words") {
    std::mt19937_64 gen(7002);
    for (int m = 1; m <= 5; ++m) {
        const int n = 1 << m;
        const auto rows = test_oracles::kronecker_rows(m);
        const PolarCode code = PolarCode::construct(n, n, 0.5);
        for (int rep = 0; rep < 200; ++rep) {
            const Bits u = random_bits(gen, n);
            CHECK(encode(code, u).x == test_oracles::kron_encode(rows, u));
        }
    }
}

TEST_CASE("encode is linear") {
    std::mt19937_64 gen(7003);
    const PolarCode code = PolarCode::construct(32, 32, 0.5);
    for (int rep = 0; rep < 200; ++rep) {
        const Bits a = random_bits(gen, 32);
        const Bits b = random_bits(gen, 32);
        Bits ab(32);
        for (int i = 0; i < 32; ++i) ab[i] = a[i] ^ b[i];
        const Bits xa = encode(code, a).x;
        const Bits xb = encode(code, b).x;
        Bits xab(32);
        for (int i = 0; i < 32; ++i) xab[i] = xa[i] ^ xb[i];
        CHECK(encode(code, ab).x == xab);
    }
}

TEST_CASE("polar_transform: known vectors") {
    CHECK(polar_transform(Bits{1, 1, 1, 1}) == Bits{0, 0, 0, 1});
    CHECK(polar_transform(Bits{1, 0, 0, 0}) == Bits{1, 0, 0, 0});
    CHECK_THROWS(polar_transform(Bits{1, 0, 1}));
    CHECK_THROWS(polar_transform(Bits{}));
}

TEST_CASE("polar_transform is an involution") {
    std::mt19937_64 gen(7004);
    for (int m = 0; m <= 10; ++m) {
        const int n = 1 << m;
        for (int rep = 0; rep < 30; ++rep) {
            const Bits v = random_bits(gen, n);
            CHECK(polar_transform(polar_transform(v)) == v);
        }
    }
}

TEST_CASE("frozen-set format round trip") {
    const PolarCode code = PolarCode::construct(8, 4, 0.5);
    const std::string text = format_frozen_set(code);
    CHECK(text == "n=8\nk=4\nfrozen=1,2,3,5\n");
    const PolarCode back = parse_frozen_set(text);
    CHECK(back.n == code.n);
    CHECK(back.k == code.k);
    CHECK(back.frozen == code.frozen);
}

TEST_CASE("frozen-set parser accepts comments and derives consistency") {
    const PolarCode code = parse_frozen_set(
        "# code definition\nn=8\n# info count\nk=4\nfrozen=1,2,3,5");
    CHECK(code.k == 4);
    CHECK(code.frozen_positions() == std::vector<int>{0, 1, 2, 4});
}

TEST_CASE("frozen-set parser rejects malformed inputs") {
    CHECK_THROWS(parse_frozen_set("n=8\nk=4\nfrozen=1,2,3,9"));    // out of range
    CHECK_THROWS(parse_frozen_set("n=8\nk=4\nfrozen=1,2,3"));      // count != n-k
    CHECK_THROWS(parse_frozen_set("n=8\nk=5\nfrozen=1,2,3,5"));    // k inconsistent
    CHECK_THROWS(parse_frozen_set("n=6\nk=3\nfrozen=1,2,3"));      // not a power of two
    CHECK_THROWS(parse_frozen_set("n=8\nk=4\nfrozen=3,2,1,5"));    // not ascending
    CHECK_THROWS(parse_frozen_set("n=8\nk=4\nfrozen=1,1,2,3"));    // duplicate
    CHECK_THROWS(parse_frozen_set("n=8\nk=4"));                    // missing field
    CHECK_THROWS(parse_frozen_set("n=8\nfrozen=1,2,3,5\nk=4"));    // wrong order
    CHECK_THROWS(parse_frozen_set("n=eight\nk=4\nfrozen=1,2,3,5"));
}

TEST_CASE("frozen-set format: k=n writes an empty list") {
    const PolarCode code = PolarCode::construct(4, 4, 0.5);
    const std::string text = format_frozen_set(code);
    CHECK(text == "n=4\nk=4\nfrozen=\n");
    const PolarCode back = parse_frozen_set(text);
    CHECK(back.k == 4);
}
