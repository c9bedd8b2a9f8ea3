#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "voltfx/errors.hpp"
#include "voltfx/potential.hpp"

using namespace voltfx;

namespace {

PotentialTable make_table(std::initializer_list<std::pair<const char*, double>> entries, const char* reference)
{
    PotentialTable::Entries e;
    for (const auto& [code, v] : entries) {
        e.emplace(CurrencyCode(code), v);
    }
    return PotentialTable(CurrencyCode(reference), std::move(e));
}

} // namespace

TEST(CurrencyCode, AcceptsUppercaseAlphanumeric)
{
    EXPECT_NO_THROW(CurrencyCode("USD"));
    EXPECT_NO_THROW(CurrencyCode("H2"));
    EXPECT_NO_THROW(CurrencyCode("K"));
    EXPECT_NO_THROW(CurrencyCode("ABCDEFGH"));
    EXPECT_THROW(CurrencyCode(""), ValidationError);
    EXPECT_THROW(CurrencyCode("usd"), ValidationError);
    EXPECT_THROW(CurrencyCode("US-D"), ValidationError);
    EXPECT_THROW(CurrencyCode("ABCDEFGHI"), ValidationError);
}

TEST(Potential, RejectsNonFinite)
{
    EXPECT_THROW(Potential(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(Potential(std::numeric_limits<double>::infinity()), DomainError);
    EXPECT_THROW(PriceLevel(-std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Emf, DaniellPileAnchor)
{
    EXPECT_NEAR(emf(Potential(0.61), Potential(-0.50)).value(), 1.11, 1e-12);
    EXPECT_NEAR(emf(Potential(0.34), Potential(-0.76)).value(), 1.10, 1e-12);
    EXPECT_EQ(emf(Potential(0.42), Potential(0.42)).value(), 0.0);
}

TEST(Emf, AntisymmetricProperty)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int i = 0; i < 10000; ++i) {
        const Potential a(d(rng)), b(d(rng));
        EXPECT_EQ(emf(a, b).value(), -emf(b, a).value());
    }
}

TEST(Emf, OverflowIsDomainError)
{
    EXPECT_THROW(emf(Potential(1.7e308), Potential(-1.7e308)), DomainError);
}

TEST(EmfFromLevels, Subtraction)
{
    EXPECT_EQ(emf_from_levels(PriceLevel(3.25), PriceLevel(3.25)).value(), 0.0);
    EXPECT_DOUBLE_EQ(emf_from_levels(PriceLevel(2.0), PriceLevel(1.5)).value(), 0.5);
    EXPECT_NEAR(emf_from_levels(PriceLevel(-0.26), PriceLevel(0.50)).value(), -0.76, 1e-15);
}

TEST(PotentialTable, ReferencePinnedAtZero)
{
    const auto t = make_table({{"EUR", 0.0}, {"USD", -0.07}}, "EUR");
    EXPECT_EQ(t.at(CurrencyCode("EUR")).value(), 0.0);
    EXPECT_EQ(t.size(), 2u);

    const PotentialTable implicit(CurrencyCode("USD"), {{CurrencyCode("EUR"), 0.07}});
    EXPECT_TRUE(implicit.contains(CurrencyCode("USD")));
    EXPECT_EQ(implicit.at(CurrencyCode("USD")).value(), 0.0);

    EXPECT_THROW(make_table({{"EUR", 0.3}}, "EUR"), ValidationError);
    EXPECT_THROW(make_table({{"EUR", 0.0}, {"USD", NAN}}, "EUR"), DomainError);
    EXPECT_THROW(t.at(CurrencyCode("JPY")), LookupError);
}

TEST(PotentialTable, RebasedKeepsDifferences)
{
    const auto t = make_table({{"EUR", 0.0}, {"USD", -0.07}, {"JPY", -5.0}}, "EUR");
    const auto r = t.rebased(CurrencyCode("USD"));
    EXPECT_EQ(r.reference(), CurrencyCode("USD"));
    EXPECT_EQ(r.at(CurrencyCode("USD")).value(), 0.0);
    EXPECT_NEAR(r.at(CurrencyCode("EUR")).value(), 0.07, 1e-15);
    EXPECT_NEAR(r.at(CurrencyCode("JPY")).value(), -4.93, 1e-12);
}

TEST(RateFromPotentials, ExponentialMap)
{
    const auto t = make_table({{"REF", 0.0}, {"ONE", 1.0}, {"NEG", -0.5}}, "REF");
    EXPECT_EQ(rate_from_potentials(t, CurrencyCode("ONE"), CurrencyCode("ONE")), 1.0);
    EXPECT_NEAR(rate_from_potentials(t, CurrencyCode("ONE"), CurrencyCode("REF")), 2.718281828, 1e-9);
    EXPECT_NEAR(rate_from_potentials(t, CurrencyCode("ONE"), CurrencyCode("NEG")) *
                    rate_from_potentials(t, CurrencyCode("NEG"), CurrencyCode("ONE")),
                1.0, 1e-15);
    EXPECT_THROW(rate_from_potentials(t, CurrencyCode("ONE"), CurrencyCode("XXX")), LookupError);
}

TEST(RateFromPotentials, TelescopingProperty)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = make_table({{"R", 0.0}, {"A", d(rng)}, {"B", d(rng)}, {"C", d(rng)}}, "R");
        const CurrencyCode a("A"), b("B"), c("C");
        const double direct = rate_from_potentials(t, a, c);
        const double via = rate_from_potentials(t, a, b) * rate_from_potentials(t, b, c);
        EXPECT_NEAR(direct / via, 1.0, 1e-12);
    }
}

TEST(PotentialFromRate, LogOfRate)
{
    EXPECT_EQ(potential_from_rate(1.0).value(), 0.0);
    EXPECT_NEAR(potential_from_rate(2.718281828).value(), 1.0, 1e-9);
    EXPECT_NEAR(potential_from_rate(0.5).value(), -0.693147180559945, 1e-12);
    EXPECT_THROW(potential_from_rate(0.0), DomainError);
    EXPECT_THROW(potential_from_rate(-1.0), DomainError);
    EXPECT_THROW(potential_from_rate(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(PotentialFromRate, InverseOfRateFromPotentials)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double rate = std::exp(d(rng));
        const PotentialTable t(CurrencyCode("REF"), {{CurrencyCode("X"), potential_from_rate(rate).value()}});
        EXPECT_NEAR(rate_from_potentials(t, CurrencyCode("X"), CurrencyCode("REF")) / rate, 1.0, 1e-12);
    }
}

TEST(AttractivenessScore, Anchors)
{
    EXPECT_EQ(attractiveness_score(Potential(0.0)), 5.0);
    EXPECT_EQ(attractiveness_score(Potential(0.5)), 10.0);
    EXPECT_EQ(attractiveness_score(Potential(-0.76)), 0.0);
    EXPECT_DOUBLE_EQ(attractiveness_score(Potential(0.1)), 6.0);
}

TEST(AttractivenessScore, RejectsBadConfig)
{
    EXPECT_THROW(attractiveness_score(Potential(0.0), {5, 0, 0, 10}), ConfigError);
    EXPECT_THROW(attractiveness_score(Potential(0.0), {5, 10, 6, 10}), ConfigError);
    EXPECT_THROW(attractiveness_score(Potential(0.0), {5, 10, 0, 5}), ConfigError);
    EXPECT_THROW(attractiveness_score(Potential(0.0), {5, NAN, 0, 10}), ConfigError);
}

TEST(AttractivenessScore, BoundedAndMonotone)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::vector<double> ps(2000);
    for (double& p : ps) {
        p = d(rng);
    }
    std::sort(ps.begin(), ps.end());
    double prev = -1.0;
    for (double p : ps) {
        const double s = attractiveness_score(Potential(p));
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 10.0);
        EXPECT_GE(s, prev);
        prev = s;
    }
}

TEST(RankSeries, SortsAndClassifies)
{
    const auto t = make_table({{"R", 0.0}, {"B", 0.5}, {"A", 0.5}, {"Z", -1.0}}, "R");
    const auto s = rank_series(t);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[0].code.str(), "Z");
    EXPECT_EQ(s[0].polarity, Polarity::Electronegative);
    EXPECT_EQ(s[1].code.str(), "R");
    EXPECT_EQ(s[1].polarity, Polarity::Reference);
    EXPECT_EQ(s[2].code.str(), "A"); // tie broken by code
    EXPECT_EQ(s[3].code.str(), "B");
    EXPECT_EQ(s[3].polarity, Polarity::Electropositive);
}

TEST(RankSeries, ReferenceOnly)
{
    const auto s = rank_series(PotentialTable(CurrencyCode("USD")));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].polarity, Polarity::Reference);
}

TEST(RankSeries, PermutationSortedProperty)
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> d(-3, 3); // small range forces ties
    for (int trial = 0; trial < 100; ++trial) {
        PotentialTable::Entries e;
        for (int i = 0; i < 12; ++i) {
            e.emplace(CurrencyCode("C" + std::to_string(i)), 0.25 * d(rng));
        }
        e[CurrencyCode("C0")] = 0.0;
        const PotentialTable t(CurrencyCode("C0"), e);
        const auto s = rank_series(t);
        ASSERT_EQ(s.size(), t.size());
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            EXPECT_TRUE(s[i].potential < s[i + 1].potential ||
                        (s[i].potential == s[i + 1].potential && s[i].code < s[i + 1].code));
        }
        for (const auto& entry : s) {
            EXPECT_EQ(entry.potential.value(), t.at(entry.code).value());
            EXPECT_EQ(entry.polarity, polarity_of(entry.potential));
        }
    }
}
