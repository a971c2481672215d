#include <heckenorm/rademacher.hpp>

#include "util.hpp"

using namespace heckenorm;

namespace {

// Literal defining sum, term by term in exact rationals.
Rat dedekind_literal(long long h, long long k) {
    Rat s(0);
    for (long long mu = 1; mu < k; ++mu)
        s += sawtooth(Rat(mu, k)) * sawtooth(Rat(mu * h, k));
    return s;
}

IntMatrix2 im(long long a, long long b, long long c, long long d) {
    return {Int(a), Int(b), Int(c), Int(d)};
}

const IntMatrix2 S = im(0, -1, 1, 0);
const IntMatrix2 T = im(1, 1, 0, 1);
const IntMatrix2 Tinv = im(1, -1, 0, 1);
const IntMatrix2 J = im(1, 0, 0, -1); // det -1

IntMatrix2 random_sl2(std::mt19937_64& rng, int len = 18) {
    std::uniform_int_distribution<int> pick(0, 2);
    IntMatrix2 g = im(1, 0, 0, 1);
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
        case 0: g = g * S; break;
        case 1: g = g * T; break;
        default: g = g * Tinv; break;
        }
    }
    return g;
}

} // namespace

TEST_CASE("sawtooth values and oddness") {
    CHECK(sawtooth(Rat(0)) == 0);
    CHECK(sawtooth(Rat(5)) == 0);
    CHECK(sawtooth(Rat(1, 2)) == 0);
    CHECK(sawtooth(Rat(1, 3)) == Rat(-1, 6));
    CHECK(sawtooth(Rat(2, 3)) == Rat(1, 6));
    auto rng = testutil::seeded_rng(411);
    std::uniform_int_distribution<long long> num(-50, 50), den(1, 40);
    for (int i = 0; i < 200; ++i) {
        Rat x(num(rng), den(rng));
        CHECK(sawtooth(-x) == -sawtooth(x));
        CHECK(sawtooth(x + 1) == sawtooth(x));
    }
}

TEST_CASE("dedekind_sum: frozen values and the literal oracle") {
    CHECK(dedekind_sum(1, 1) == 0);
    CHECK(dedekind_sum(1, 3) == Rat(1, 18));
    CHECK(dedekind_sum(7, 12) == Rat(1, 72));

    for (long long k = 1; k <= 40; ++k)
        for (long long h = 0; h <= k + 3; ++h) {
            INFO("h = " << h << " k = " << k);
            CHECK(dedekind_sum(h, k) == dedekind_literal(h, k));
        }
    // oddness in h
    CHECK(dedekind_sum(-7, 12) == -dedekind_sum(7, 12));
    CHECK(dedekind_sum(Int(-1), Int(3)) == Rat(-1, 18));
}

TEST_CASE("dedekind reciprocity for all coprime pairs up to 200") {
    for (long long k = 1; k <= 200; ++k)
        for (long long h = 1; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            Rat lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
            Rat rhs = Rat(-1, 4) + Rat(h, k) / 12 + Rat(k, h) / 12 + Rat(1, 12 * h * k);
            INFO("h = " << h << " k = " << k);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("fast Dedekind path agrees exactly with the direct path") {
    auto rng = testutil::seeded_rng(20260501);
    std::uniform_int_distribution<long long> kd(1, 100000), hd(-200000, 200000);
    for (int i = 0; i < 1000; ++i) {
        long long k = kd(rng), h = hd(rng);
        INFO("h = " << h << " k = " << k);
        REQUIRE(dedekind_sum_fast(h, k) == dedekind_sum(h, k));
    }
}

TEST_CASE("psi: frozen values") {
    CHECK(psi(im(7, 4, 12, 7)) == -2);
    CHECK(psi(im(7, 12, 4, 7)) == 2);
    CHECK(psi(im(2, 3, 1, 2)) == 1);
    CHECK(psi(im(1, -3, 0, 1)) == -3);
    CHECK(psi(im(1, 0, 0, 1)) == 0);
    CHECK(psi(im(-1, 5, 0, -1)) == -5);
    CHECK(psi(im(0, -1, 1, 0)) == 0);
    REQUIRE_ERRC(psi(im(2, 0, 0, 2)), errc::not_unimodular);
    REQUIRE_ERRC(psi(im(1, 2, 3, 4)), errc::not_unimodular);

    auto br = psi_detailed(im(7, 4, 12, 7));
    CHECK(br.tracePart == Rat(7, 6));
    CHECK(br.dedekindPart == Rat(-1, 6));
    CHECK(br.signPart == -3);
}

TEST_CASE("psi identities on random SL2(Z) elements") {
    auto rng = testutil::seeded_rng(987654321);
    for (int i = 0; i < 500; ++i) {
        IntMatrix2 g = random_sl2(rng);
        REQUIRE(g.det() == 1);
        Int p = psi(g);
        IntMatrix2 neg = im(0, 0, 0, 0);
        neg.a = -g.a; neg.b = -g.b; neg.c = -g.c; neg.d = -g.d;
        CHECK(psi(neg) == p);
        CHECK(psi(unimodular_inverse(g)) == -p);

        IntMatrix2 h = random_sl2(rng, 10);
        if (i % 2 == 0) h = h * J; // half the conjugators have det -1
        Int dh = h.det();
        IntMatrix2 conj = h * g * unimodular_inverse(h);
        CHECK(psi(conj) == dh * p);
    }
}

TEST_CASE("hyperbolicity and invariant geodesics") {
    CHECK(is_hyperbolic(im(7, 24, 2, 7)));
    CHECK(is_hyperbolic(im(2, 3, 1, 2)));
    CHECK(!is_hyperbolic(im(1, 1, 0, 1)));
    CHECK(!is_hyperbolic(im(0, -1, 1, 0)));

    auto g1 = geodesic(im(7, 24, 2, 7));
    CHECK(g1.center == 0);
    CHECK(g1.radiusSq == 12);

    auto g2 = geodesic(im(2, 3, 1, 2));
    CHECK(g2.center == 0);
    CHECK(g2.radiusSq == 3);

    auto g3 = geodesic(im(5, 3, 3, 2));
    CHECK(g3.center == Rat(1, 2));
    CHECK(g3.radiusSq == Rat(45, 36));

    REQUIRE_ERRC(geodesic(im(1, 1, 0, 1)), errc::not_hyperbolic);
    REQUIRE_ERRC(geodesic(im(0, -1, 1, 0)), errc::not_hyperbolic);
    // reachable only off SL2: a diagonal stretch has |tr| > 2 and c = 0
    REQUIRE_ERRC(geodesic(im(3, 0, 0, 1)), errc::parabolic_axis);
}
