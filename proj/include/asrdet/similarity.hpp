#pragma once

// String-similarity metrics over transcripts, with and without phonetic
// encoding. Scores are in [0,1]; 0 means very dissimilar, 1 similar.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/textnorm.hpp"

namespace asrdet {

enum class Metric { Cosine, Jaccard, JaroWinkler };

struct SimilarityMethod {
    Metric metric = Metric::JaroWinkler;
    bool phonetic = true;  // the default is PE_JaroWinkler

    bool operator==(const SimilarityMethod&) const = default;
};

inline std::string to_string(SimilarityMethod m) {
    std::string name;
    switch (m.metric) {
        case Metric::Cosine: name = "cosine"; break;
        case Metric::Jaccard: name = "jaccard"; break;
        case Metric::JaroWinkler: name = "jaro_winkler"; break;
    }
    return m.phonetic ? "pe_" + name : name;
}

inline SimilarityMethod parse_method(std::string_view name) {
    SimilarityMethod m;
    m.phonetic = name.starts_with("pe_") || name.starts_with("PE_");
    if (m.phonetic) name.remove_prefix(3);
    if (name == "cosine" || name == "Cosine") m.metric = Metric::Cosine;
    else if (name == "jaccard" || name == "Jaccard") m.metric = Metric::Jaccard;
    else if (name == "jaro_winkler" || name == "JaroWinkler" || name == "jarowinkler")
        m.metric = Metric::JaroWinkler;
    else throw InvalidSpec("unknown similarity method: " + std::string(name));
    return m;
}

// Standard Jaro similarity. Window = max(|a|,|b|)/2 - 1; both empty -> 1,
// one empty or no matches -> 0.
inline double jaro(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    const std::ptrdiff_t la = static_cast<std::ptrdiff_t>(a.size());
    const std::ptrdiff_t lb = static_cast<std::ptrdiff_t>(b.size());
    const std::ptrdiff_t window = std::max<std::ptrdiff_t>(std::max(la, lb) / 2 - 1, 0);

    std::vector<bool> a_matched(a.size(), false), b_matched(b.size(), false);
    std::ptrdiff_t matches = 0;
    for (std::ptrdiff_t i = 0; i < la; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - window);
        const std::ptrdiff_t hi = std::min(lb - 1, i + window);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            if (!b_matched[j] && a[i] == b[j]) {
                a_matched[i] = b_matched[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;

    std::ptrdiff_t transpositions = 0;
    std::ptrdiff_t j = 0;
    for (std::ptrdiff_t i = 0; i < la; ++i) {
        if (!a_matched[i]) continue;
        while (!b_matched[j]) ++j;
        if (a[i] != b[j]) ++transpositions;
        ++j;
    }
    transpositions /= 2;

    const double m = static_cast<double>(matches);
    return (m / la + m / lb + (m - transpositions) / m) / 3.0;
}

// Jaro-Winkler with p = 0.1 and prefix length capped at 4, bonus applied
// unconditionally (original Winkler formulation, no boost threshold).
inline double jaro_winkler(std::string_view a, std::string_view b) {
    const double j = jaro(a, b);
    std::size_t prefix = 0;
    const std::size_t cap = std::min({a.size(), b.size(), std::size_t{4}});
    while (prefix < cap && a[prefix] == b[prefix]) ++prefix;
    return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

namespace detail {

inline std::vector<std::string> whitespace_split(std::string_view s) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty()) words.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

}  // namespace detail

// Jaccard index over word sets. Both empty -> 1, exactly one empty -> 0.
inline double jaccard(std::string_view a, std::string_view b) {
    const auto wa_list = detail::whitespace_split(a);
    const auto wb_list = detail::whitespace_split(b);
    if (wa_list.empty() && wb_list.empty()) return 1.0;
    if (wa_list.empty() || wb_list.empty()) return 0.0;
    const std::set<std::string> wa(wa_list.begin(), wa_list.end());
    const std::set<std::string> wb(wb_list.begin(), wb_list.end());
    std::size_t inter = 0;
    for (const auto& w : wa) inter += wb.count(w);
    const std::size_t uni = wa.size() + wb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// Cosine similarity of word-frequency vectors. Both empty -> 1, one empty -> 0.
inline double cosine(std::string_view a, std::string_view b) {
    const auto wa = detail::whitespace_split(a);
    const auto wb = detail::whitespace_split(b);
    if (wa.empty() && wb.empty()) return 1.0;
    if (wa.empty() || wb.empty()) return 0.0;
    std::map<std::string, double> fa, fb;
    for (const auto& w : wa) fa[w] += 1.0;
    for (const auto& w : wb) fb[w] += 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [w, c] : fa) {
        na += c * c;
        auto it = fb.find(w);
        if (it != fb.end()) dot += c * it->second;
    }
    for (const auto& [w, c] : fb) nb += c * c;
    if (dot == 0.0) return 0.0;
    // Counts are small integers, so na * nb is exact and self-similarity
    // lands on 1.0 exactly.
    return std::min(dot / std::sqrt(na * nb), 1.0);
}

// Full method dispatch: normalize both transcripts, optionally encode them
// phonetically, then apply the metric. JaroWinkler runs on the space-joined
// string; Jaccard and Cosine on its tokens.
inline double score(SimilarityMethod method, std::string_view a, std::string_view b) {
    std::string ta = join_tokens(normalize(a));
    std::string tb = join_tokens(normalize(b));
    if (method.phonetic) {
        ta = encode_transcript(normalize(ta));
        tb = encode_transcript(normalize(tb));
    }
    switch (method.metric) {
        case Metric::Cosine: return cosine(ta, tb);
        case Metric::Jaccard: return jaccard(ta, tb);
        case Metric::JaroWinkler: return jaro_winkler(ta, tb);
    }
    return 0.0;  // unreachable
}

}  // namespace asrdet
