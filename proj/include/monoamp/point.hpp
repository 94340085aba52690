#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace monoamp {

/// A point of the hypercube {0,1}^n.
///
/// Coordinates are numbered 0..n-1 and printed left to right, so the
/// string "10" has coordinate 0 set. The integer index of a point reads
/// the string as a binary number (coordinate 0 is the most significant
/// bit), which makes index order the lexicographic order of truth tables
/// and a linear extension of the partial order.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static Point from_index(std::size_t n, std::uint64_t index)
    {
        if (n > 64)
            throw ArityMismatch("Point::from_index: arity above 64");
        Point p(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((index >> (n - 1 - i)) & 1U)
                p.set(i, true);
        return p;
    }

    static Point from_string(std::string_view bits)
    {
        Point p(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                p.set(i, true);
            else if (bits[i] != '0')
                throw ParseError("Point::from_string: expected only '0'/'1'");
        }
        return p;
    }

    static Point ones(std::size_t n)
    {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i)
            p.set(i, true);
        return p;
    }

    static Point uniform(std::size_t n, Rng& rng)
    {
        Point p(n);
        for (auto& w : p.words_)
            w = rng();
        p.clear_tail();
        return p;
    }

    std::size_t size() const noexcept { return size_; }

    bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }

    void set(std::size_t i, bool v) noexcept
    {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (v)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    std::size_t weight() const noexcept
    {
        std::size_t w = 0;
        for (auto word : words_)
            w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    std::uint64_t to_index() const
    {
        if (size_ > 64)
            throw ArityMismatch("Point::to_index: arity above 64");
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < size_; ++i)
            idx = (idx << 1) | static_cast<std::uint64_t>((*this)[i]);
        return idx;
    }

    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i])
                s[i] = '1';
        return s;
    }

    // Coordinates [offset, offset + len) as a point of arity len.
    Point slice(std::size_t offset, std::size_t len) const
    {
        Point p(len);
        for (std::size_t i = 0; i < len; ++i)
            if ((*this)[offset + i])
                p.set(i, true);
        return p;
    }

    void assign_slice(std::size_t offset, const Point& block) noexcept
    {
        for (std::size_t i = 0; i < block.size(); ++i)
            set(offset + i, block[i]);
    }

    // Coordinatewise order: x <= y iff x_i <= y_i for all i.
    bool leq(const Point& other) const noexcept
    {
        if (size_ != other.size_)
            return false;
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~other.words_[w])
                return false;
        return true;
    }

    bool less(const Point& other) const noexcept { return leq(other) && *this != other; }

    friend bool operator==(const Point&, const Point&) = default;

    std::size_t hash() const noexcept
    {
        std::uint64_t h = splitmix64(size_);
        for (auto w : words_)
            h = splitmix64(h ^ w);
        return static_cast<std::size_t>(h);
    }

private:
    void clear_tail() noexcept
    {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept { return p.hash(); }
};

/// Coordinatewise order on indices (arity-independent bit trick).
inline constexpr bool index_leq(std::uint64_t a, std::uint64_t b) noexcept { return (a & ~b) == 0; }

/// Index of x with coordinate i flipped, for an arity-n index.
inline constexpr std::uint64_t coordinate_bit(std::size_t n, std::size_t i) noexcept
{
    return std::uint64_t{1} << (n - 1 - i);
}

inline std::string index_to_string(std::size_t n, std::uint64_t index)
{
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if ((index >> (n - 1 - i)) & 1U)
            s[i] = '1';
    return s;
}

} // namespace monoamp

template <>
struct std::hash<monoamp::Point> {
    std::size_t operator()(const monoamp::Point& p) const noexcept { return p.hash(); }
};
