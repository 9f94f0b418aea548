#include <catch2/catch_amalgamated.hpp>

#include "asrdet/textnorm.hpp"

using namespace asrdet;

TEST_CASE("normalize lowercases and strips punctuation") {
    CHECK(normalize("I wish you wouldn't.") == TokenSeq{"i", "wish", "you", "wouldn't"});
    CHECK(normalize("") == TokenSeq{});
    CHECK(normalize("A  sight,for SORE eyes") == TokenSeq{"a", "sight", "for", "sore", "eyes"});
}

TEST_CASE("normalize keeps digits and apostrophes") {
    CHECK(normalize("1717!") == TokenSeq{"1717"});
    CHECK(normalize("it's  me") == TokenSeq{"it's", "me"});
}

TEST_CASE("normalize is idempotent") {
    const char* samples[] = {"I wish you wouldn't.", "A  sight,for SORE eyes", "", "x", "1717 ok?"};
    for (const char* s : samples) {
        TokenSeq once = normalize(s);
        CHECK(normalize(join_tokens(once)) == once);
    }
}

TEST_CASE("soundex codes") {
    CHECK(encode_word("robert") == "R163");
    CHECK(encode_word("rupert") == "R163");
    CHECK(encode_word("a") == "A000");
    CHECK(encode_word("i") == "I000");
    CHECK(encode_word("wish") == "W200");
    CHECK(encode_word("wouldn't") == "W435");
    // h/w are transparent: Ashcraft keeps a single 2 for s-c.
    CHECK(encode_word("ashcraft") == "A261");
    // First letter's class suppresses an immediately repeated class.
    CHECK(encode_word("pfister") == "P236");
    CHECK(encode_word("tymczak") == "T522");
}

TEST_CASE("soundex passthrough for non-letter-leading tokens") {
    CHECK(encode_word("1717") == "1717");
    CHECK(encode_word("'") == "'");
}

TEST_CASE("encode_transcript joins per-word codes") {
    CHECK(encode_transcript({"robert", "rupert"}) == "R163 R163");
    CHECK(encode_transcript({}) == "");
    CHECK(encode_transcript({"i", "wish"}) == "I000 W200");
}

TEST_CASE("encode_transcript preserves token count") {
    TokenSeq tokens = normalize("I wish you wouldn't say 1717 things");
    std::string encoded = encode_transcript(tokens);
    std::size_t codes = encoded.empty() ? 0 : 1;
    for (char c : encoded)
        if (c == ' ') ++codes;
    CHECK(codes == tokens.size());
}
