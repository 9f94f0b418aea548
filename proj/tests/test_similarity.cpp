#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "asrdet/similarity.hpp"

using namespace asrdet;
using Catch::Matchers::WithinAbs;

TEST_CASE("jaro on known pairs") {
    CHECK_THAT(jaro("martha", "marhta"), WithinAbs(0.9444, 1e-4));
    CHECK(jaro("abc", "abc") == 1.0);
    CHECK(jaro("abc", "xyz") == 0.0);
    CHECK(jaro("", "") == 1.0);
    CHECK(jaro("abc", "") == 0.0);
}

TEST_CASE("jaro_winkler on known pairs") {
    CHECK_THAT(jaro_winkler("martha", "marhta"), WithinAbs(0.9611, 1e-4));
    CHECK_THAT(jaro_winkler("dwayne", "duane"), WithinAbs(0.8400, 1e-4));
    CHECK(jaro_winkler("anything", "anything") == 1.0);
}

TEST_CASE("jaccard over word sets") {
    CHECK(jaccard("a b c", "b c d") == 0.5);
    CHECK(jaccard("x", "x") == 1.0);
    CHECK(jaccard("a b", "c d") == 0.0);
    CHECK(jaccard("", "") == 1.0);
    CHECK(jaccard("a", "") == 0.0);
}

TEST_CASE("cosine over word-frequency vectors") {
    CHECK_THAT(cosine("a a b", "a b b"), WithinAbs(0.8, 1e-9));
    CHECK(cosine("hello world", "hello world") == 1.0);
    CHECK(cosine("a", "b") == 0.0);
    CHECK(cosine("", "") == 1.0);
}

TEST_CASE("score dispatch") {
    CHECK(score({Metric::JaroWinkler, true}, "robert", "rupert") == 1.0);
    CHECK(score({Metric::Jaccard, false}, "I wish you wouldn't.", "i wish you wouldn't") == 1.0);
    CHECK(score({Metric::JaroWinkler, true}, "same sentence here", "same sentence here") == 1.0);
}

TEST_CASE("method parsing round-trips all six variants") {
    for (const char* name : {"cosine", "jaccard", "jaro_winkler", "pe_cosine", "pe_jaccard",
                             "pe_jaro_winkler"}) {
        CHECK(to_string(parse_method(name)) == name);
    }
    CHECK_THROWS_AS(parse_method("levenshtein"), InvalidSpec);
}

namespace {

std::string random_sentence(std::mt19937_64& rng) {
    static const char* words[] = {"alpha", "bravo", "charlie", "delta", "echo",
                                  "fox",   "golf",  "hotel",   "india", "julia"};
    std::string s;
    const std::size_t n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) s += ' ';
        s += words[rng() % 10];
    }
    return s;
}

}  // namespace

TEST_CASE("property: all methods bounded, symmetric, reflexive; winkler >= jaro") {
    std::mt19937_64 rng(7);
    const SimilarityMethod methods[] = {
        {Metric::Cosine, false}, {Metric::Jaccard, false}, {Metric::JaroWinkler, false},
        {Metric::Cosine, true},  {Metric::Jaccard, true},  {Metric::JaroWinkler, true}};
    for (int iter = 0; iter < 2000; ++iter) {
        const std::string a = random_sentence(rng);
        const std::string b = random_sentence(rng);
        for (auto m : methods) {
            const double ab = score(m, a, b);
            CHECK(ab >= 0.0);
            CHECK(ab <= 1.0);
            CHECK(score(m, b, a) == ab);
            CHECK(score(m, a, a) == 1.0);
        }
        CHECK(jaro_winkler(a, b) >= jaro(a, b));
    }
}

TEST_CASE("property: phonetic variants commute with encoding") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const std::string a = random_sentence(rng);
        const std::string b = random_sentence(rng);
        for (Metric metric : {Metric::Cosine, Metric::Jaccard, Metric::JaroWinkler}) {
            const double direct = score({metric, true}, a, b);
            const std::string ea = encode_transcript(normalize(a));
            const std::string eb = encode_transcript(normalize(b));
            double expected = 0.0;
            switch (metric) {
                case Metric::Cosine: expected = cosine(ea, eb); break;
                case Metric::Jaccard: expected = jaccard(ea, eb); break;
                case Metric::JaroWinkler: expected = jaro_winkler(ea, eb); break;
            }
            CHECK_THAT(direct, WithinAbs(expected, 1e-12));
        }
    }
}

TEST_CASE("word-disjoint sentences score zero under jaccard and cosine") {
    CHECK(score({Metric::Jaccard, false}, "red green blue", "cyan magenta yellow") == 0.0);
    CHECK(score({Metric::Cosine, false}, "red green blue", "cyan magenta yellow") == 0.0);
}
