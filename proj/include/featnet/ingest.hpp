#pragma once
// Document ingestion: 2-gram feature extraction with stopword filtering,
// chronological feature-matrix assembly, and the co-authorship graph.
//
// Document files are JSON Lines: one object per line with fields
// id, entry_date (ISO-8601 date), title, abstract, authors (string array).

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "featnet/graph.hpp"
#include "featnet/types.hpp"

namespace featnet {

struct DocumentRecord {
    std::string id;
    std::string entry_date;  // YYYY-MM-DD
    std::string title;
    std::string abstract;
    std::vector<std::string> authors;
};

// The default exclusion list for spurious 2-grams.
inline const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "the", "a", "of", "and", "to", "is", "for", "in", "an", "with", "by",
        "from", "on", "or", "that", "at", "be", "which", "are", "as", "one",
        "may", "it", "and/or", "if", "via", "can", "when", "we", "his", "her",
        "their", "this", "our", "into", "has", "have", "only", "also", "do",
        "does", "presents", "paper", "doesn't", "not"};
    return words;
}

namespace detail {

inline bool iso_date_valid(const std::string& d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t t : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(d[t]))) return false;
    const int month = (d[5] - '0') * 10 + (d[6] - '0');
    const int day = (d[8] - '0') * 10 + (d[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Lowercase; strip punctuation except '/', '.' and intra-word apostrophes;
// collapse whitespace runs.
inline std::string clean_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        char r;
        if (std::isalnum(c)) r = static_cast<char>(std::tolower(c));
        else if (c == '/' || c == '.' || c == '\'') r = static_cast<char>(c);
        else { pending_space = true; continue; }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(r);
    }
    return out;
}

// Sentence boundary: '.', '!' or '?' followed by whitespace or end of text.
// '!' and '?' are stripped as punctuation before this runs, so after
// cleaning only '.' can terminate a sentence; a '.' inside a token
// (abbreviation, version number) survives.
inline std::vector<std::vector<std::string>> sentences(const std::string& cleaned) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current;
    std::string token;
    auto flush_token = [&](bool sentence_end) {
        if (!token.empty()) {
            current.push_back(token);
            token.clear();
        }
        if (sentence_end && !current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    };
    for (std::size_t t = 0; t < cleaned.size(); ++t) {
        const char c = cleaned[t];
        if (c == ' ') {
            const bool end = !token.empty() && token.back() == '.';
            if (end) token.pop_back();
            flush_token(end);
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty() && token.back() == '.') token.pop_back();
    flush_token(true);
    return out;
}

}  // namespace detail

// All 2-grams from the title and abstract, within-sentence only, with any
// 2-gram containing a stopword removed. First-appearance order, deduped.
inline std::vector<std::string> extract_2grams(const DocumentRecord& doc,
                                               const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> grams;
    std::unordered_set<std::string> seen;
    for (const std::string* text : {&doc.title, &doc.abstract}) {
        for (const auto& sentence : detail::sentences(detail::clean_text(*text))) {
            for (std::size_t t = 0; t + 1 < sentence.size(); ++t) {
                if (stopwords.count(sentence[t]) || stopwords.count(sentence[t + 1])) continue;
                std::string gram = sentence[t] + ' ' + sentence[t + 1];
                if (seen.insert(gram).second) grams.push_back(std::move(gram));
            }
        }
    }
    return grams;
}

inline std::vector<std::string> extract_2grams(const DocumentRecord& doc) {
    static const std::unordered_set<std::string> stop(default_stopwords().begin(),
                                                      default_stopwords().end());
    return extract_2grams(doc, stop);
}

// Stable chronological order by entry date, input order breaking ties.
inline std::vector<DocumentRecord> sort_chronologically(std::vector<DocumentRecord> docs) {
    for (const auto& d : docs)
        if (!detail::iso_date_valid(d.entry_date))
            throw std::invalid_argument("document '" + d.id + "': unparseable entry_date '" +
                                        d.entry_date + "'");
    std::stable_sort(docs.begin(), docs.end(), [](const DocumentRecord& a, const DocumentRecord& b) {
        return a.entry_date < b.entry_date;  // ISO dates compare lexicographically
    });
    return docs;
}

// Nodes in chronological order, features indexed by first appearance, so the
// result is left-ordered by construction. `docs` must already be sorted
// (see sort_chronologically).
inline FeatureMatrix build_feature_matrix(const std::vector<DocumentRecord>& docs,
                                          const std::unordered_set<std::string>& stopwords) {
    FeatureMatrix f;
    f.rows.resize(docs.size());
    f.new_counts.resize(docs.size());
    f.cum_counts.resize(docs.size());
    std::unordered_map<std::string, FeatureId> index;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::uint32_t fresh = 0;
        auto& row = f.rows[i];
        for (auto& gram : extract_2grams(docs[i], stopwords)) {
            auto [it, inserted] = index.emplace(std::move(gram), static_cast<FeatureId>(index.size()));
            if (inserted) ++fresh;
            row.push_back(it->second);
        }
        std::sort(row.begin(), row.end());
        f.new_counts[i] = fresh;
        f.cum_counts[i] = (i == 0 ? 0 : f.cum_counts[i - 1]) + fresh;
    }
    f.validate();
    return f;
}

inline FeatureMatrix build_feature_matrix(const std::vector<DocumentRecord>& docs) {
    static const std::unordered_set<std::string> stop(default_stopwords().begin(),
                                                      default_stopwords().end());
    return build_feature_matrix(docs, stop);
}

// Author-name harmonization: "Last, First Middle" is rewritten so the last
// name comes last; stray punctuation is dropped and case folded. Full names
// and initials are NOT merged ("j j anaya" stays distinct from
// "jose javier anaya").
inline std::string normalize_author(const std::string& name) {
    std::string work = name;
    const auto comma = work.find(',');
    if (comma != std::string::npos)
        work = work.substr(comma + 1) + ' ' + work.substr(0, comma);
    std::string out;
    bool pending_space = false;
    for (unsigned char c : work) {
        if (std::isalnum(c) || c == '-' || c == '\'') {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_space = true;
        }
    }
    return out;
}

// Papers as nodes; an undirected link between two papers that share at
// least one normalized author name. Edges carry no phase information.
inline LabeledGraph build_coauthorship_graph(const std::vector<DocumentRecord>& docs) {
    LabeledGraph g;
    g.n = static_cast<NodeId>(docs.size());
    std::unordered_map<std::string, std::vector<NodeId>> papers_by_author;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (const auto& a : docs[i].authors) {
            const std::string key = normalize_author(a);
            if (!key.empty()) papers_by_author[key].push_back(static_cast<NodeId>(i));
        }
    }
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& [author, papers] : papers_by_author) {
        for (std::size_t a = 0; a < papers.size(); ++a)
            for (std::size_t b = a + 1; b < papers.size(); ++b) {
                NodeId u = papers[a], v = papers[b];
                if (u == v) continue;  // duplicate author line on one paper
                if (u > v) std::swap(u, v);
                pairs.emplace(u, v);
            }
    }
    for (const auto& [u, v] : pairs) g.add_edge(u, v, EdgePhase::Observed);
    return g;
}

// JSON Lines reader with per-line diagnostics.
inline std::vector<DocumentRecord> read_documents(std::istream& is) {
    std::vector<DocumentRecord> docs;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("documents: line " + std::to_string(lineno) + ": " + e.what());
        }
        DocumentRecord d;
        try {
            d.id = j.at("id").get<std::string>();
            d.entry_date = j.at("entry_date").get<std::string>();
            d.title = j.value("title", std::string{});
            d.abstract = j.value("abstract", std::string{});
            if (j.contains("authors")) d.authors = j.at("authors").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("documents: line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!ids.insert(d.id).second)
            throw std::runtime_error("documents: line " + std::to_string(lineno) +
                                     ": duplicate id '" + d.id + "'");
        docs.push_back(std::move(d));
    }
    return docs;
}

inline std::vector<DocumentRecord> load_documents(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_documents(in);
}

// One word per line; '#' comments and blank lines skipped.
inline std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string lower;
        for (unsigned char c : line) lower.push_back(static_cast<char>(std::tolower(c)));
        words.insert(lower);
    }
    return words;
}

}  // namespace featnet
