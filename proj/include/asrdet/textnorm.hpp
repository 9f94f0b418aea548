#pragma once

// Transcript normalization and per-word phonetic (Soundex) encoding.
// ASRs disagree on case and punctuation, so every comparison starts from
// a normalized token sequence; phonetic codes then make differently
// spelled but similar-sounding words compare equal.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace asrdet {

using TokenSeq = std::vector<std::string>;

namespace detail {

inline bool is_token_char(unsigned char c) {
    return std::isalnum(c) || c == '\'';
}

}  // namespace detail

// Lowercase, treat everything but letters/digits/apostrophes as separators,
// drop empty tokens. Idempotent: normalizing the joined tokens is a no-op.
inline TokenSeq normalize(std::string_view raw) {
    TokenSeq tokens;
    std::string cur;
    for (unsigned char c : raw) {
        if (detail::is_token_char(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

inline std::string join_tokens(const TokenSeq& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

namespace detail {

// Soundex digit classes; -1 = vowel (separator), 0 = h/w (transparent).
inline int soundex_class(char c) {
    switch (c) {
        case 'b': case 'f': case 'p': case 'v': return 1;
        case 'c': case 'g': case 'j': case 'k': case 'q': case 's': case 'x': case 'z': return 2;
        case 'd': case 't': return 3;
        case 'l': return 4;
        case 'm': case 'n': return 5;
        case 'r': return 6;
        case 'h': case 'w': return 0;
        default: return -1;  // a e i o u y, apostrophes handled by caller
    }
}

}  // namespace detail

// American Soundex of a lowercase token: first letter uppercased plus three
// digits. Tokens not starting with a letter (digit strings like "1717",
// bare apostrophes) pass through unchanged. Apostrophes inside a word are
// skipped entirely.
inline std::string encode_word(std::string_view word) {
    if (word.empty() || !std::isalpha(static_cast<unsigned char>(word.front()))) {
        return std::string(word);
    }
    std::string code;
    code.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(word.front()))));
    int prev = detail::soundex_class(word.front());
    for (std::size_t i = 1; i < word.size() && code.size() < 4; ++i) {
        char c = word[i];
        if (c == '\'') continue;
        if (!std::isalpha(static_cast<unsigned char>(c))) continue;  // digits inside a word
        int cls = detail::soundex_class(c);
        if (cls == 0) continue;       // h/w: transparent, prev survives
        if (cls == -1) {              // vowel: separator
            prev = -1;
            continue;
        }
        if (cls != prev) code.push_back(static_cast<char>('0' + cls));
        prev = cls;
    }
    code.resize(4, '0');
    return code;
}

// Per-word codes joined by single spaces, order preserved. The code count
// always equals the token count.
inline std::string encode_transcript(const TokenSeq& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += encode_word(tokens[i]);
    }
    return out;
}

}  // namespace asrdet
