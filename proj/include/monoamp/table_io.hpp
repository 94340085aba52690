#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "boolfn.hpp"
#include "errors.hpp"

namespace monoamp {

// Truth-table text format:
//   n=<int>
//   <2^n characters of 0/1, x = 00...0 first>
// Trailing whitespace is ignored.

inline TruthTable read_truth_table(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("truth table: missing header line");
    while (!header.empty() && (header.back() == '\r' || header.back() == ' ' || header.back() == '\t'))
        header.pop_back();
    if (header.rfind("n=", 0) != 0 || header.size() == 2)
        throw ParseError("truth table: header must read n=<int>, got '" + header + "'");
    std::size_t n = 0;
    for (std::size_t i = 2; i < header.size(); ++i) {
        const char c = header[i];
        if (c < '0' || c > '9')
            throw ParseError("truth table: header must read n=<int>, got '" + header + "'");
        n = n * 10 + static_cast<std::size_t>(c - '0');
        if (n > kMaxTableArity)
            throw Unsupported("truth table: arity above cap " + std::to_string(kMaxTableArity));
    }
    if (n == 0)
        throw ParseError("truth table: arity must be positive");

    std::string body;
    if (!std::getline(in, body))
        throw ParseError("truth table: missing value line");
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ' || body.back() == '\t'))
        body.pop_back();

    std::string rest;
    if (in >> rest)
        throw ParseError("truth table: unexpected content after value line");

    TruthTable t(n);
    if (body.size() != t.size())
        throw ParseError("truth table: expected " + std::to_string(t.size()) + " values, got "
                         + std::to_string(body.size()));
    for (std::uint64_t x = 0; x < t.size(); ++x) {
        if (body[x] == '1')
            t.set(x, true);
        else if (body[x] != '0')
            throw ParseError("truth table: values must be 0 or 1");
    }
    return t;
}

inline TruthTable read_truth_table_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open truth table file '" + path + "'");
    return read_truth_table(in);
}

inline void write_truth_table(std::ostream& out, const TruthTable& t)
{
    out << "n=" << t.arity() << '\n';
    for (std::uint64_t x = 0; x < t.size(); ++x)
        out << (t.get(x) ? '1' : '0');
    out << '\n';
}

inline std::string to_table_string(const TruthTable& t)
{
    std::ostringstream os;
    write_truth_table(os, t);
    return os.str();
}

} // namespace monoamp
