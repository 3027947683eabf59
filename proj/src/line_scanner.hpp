#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lhe/format.hpp"

namespace lhe::detail {

// Line-oriented scanner shared by the text formats: strips '#' comments,
// skips blank lines, splits on whitespace, tracks 1-based line numbers.
class LineScanner {
public:
    explicit LineScanner(std::string_view text) : text_(text) {}

    const std::vector<std::string_view>& next() {
        tokens_.clear();
        while (pos_ < text_.size()) {
            ++line_;
            std::size_t eol = text_.find('\n', pos_);
            std::string_view line = text_.substr(
                pos_, eol == std::string_view::npos ? eol : eol - pos_);
            pos_ = eol == std::string_view::npos ? text_.size() : eol + 1;
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            split(line);
            if (!tokens_.empty()) return tokens_;
        }
        return tokens_;
    }

    std::size_t line() const { return line_; }

private:
    void split(std::string_view line) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) ++i;
            std::size_t start = i;
            while (i < line.size() && !is_space(line[i])) ++i;
            if (i > start) tokens_.push_back(line.substr(start, i - start));
        }
    }
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
    std::vector<std::string_view> tokens_;
};

inline std::uint64_t parse_number(const LineScanner& sc, std::string_view token,
                                  std::uint64_t max) {
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw parse_error(sc.line(),
                          "expected a number, got '" + std::string(token) + "'");
    }
    if (value > max) {
        throw parse_error(sc.line(), "value " + std::string(token) +
                                         " out of range (max " +
                                         std::to_string(max) + ")");
    }
    return value;
}

}  // namespace lhe::detail
