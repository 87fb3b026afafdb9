// Shared test helper: load and parse the bundled corpus once per binary.
#pragma once

#include <doctest.h>

#include <string>

#include "tacap/dsl.hpp"
#include "tacap/util.hpp"

namespace tacap::testing {

inline const std::string& bundled_path() {
    static const std::string path = std::string(TACAP_DATA_DIR) + "/making_coffee.tacap";
    return path;
}

inline const std::string& bundled_text() {
    static const std::string text = [] {
        auto t = read_text_file(bundled_path());
        REQUIRE_MESSAGE(t.has_value(), "cannot read bundled corpus");
        return *t;
    }();
    return text;
}

inline const Corpus& bundled_corpus() {
    static const Corpus corpus = [] {
        ParseResult pr = parse_corpus(bundled_text());
        for (const Diag& d : pr.diags) MESSAGE(format_diag(d));
        REQUIRE(pr.ok());
        return std::move(*pr.corpus);
    }();
    return corpus;
}

} // namespace tacap::testing
