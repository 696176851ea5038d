#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace gramata {

/// One letter of a free-group word: generator index and exponent sign.
struct Letter
{
    std::size_t gen = 0;
    int sign = 1;  // +1 or -1

    Letter inverse() const { return {gen, -sign}; }
    bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word. Every public constructor path reduces, so no two
/// adjacent letters cancel.
class ReducedWord
{
public:
    ReducedWord() = default;

    /// Reduces an arbitrary letter sequence (stack-based free reduction).
    static ReducedWord reduce(const std::vector<Letter>& letters)
    {
        ReducedWord w;
        for (const auto& l : letters)
            w.push(l);
        return w;
    }

    static ReducedWord generator(std::size_t gen, int sign = 1) { return reduce({Letter{gen, sign}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    ReducedWord operator*(const ReducedWord& o) const
    {
        ReducedWord out = *this;
        for (const auto& l : o.letters_)
            out.push(l);
        return out;
    }

    ReducedWord inverse() const
    {
        ReducedWord out;
        out.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            out.letters_.push_back(it->inverse());
        return out;
    }

    std::size_t max_generator() const
    {
        std::size_t m = 0;
        for (const auto& l : letters_)
            m = std::max(m, l.gen + 1);
        return m;
    }

    /// `g0 g1^-1 ...`; the empty word is `e`.
    std::string str() const
    {
        if (letters_.empty())
            return "e";
        std::string out;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i)
                out += ' ';
            out += 'g';
            out += std::to_string(letters_[i].gen);
            if (letters_[i].sign < 0)
                out += "^-1";
        }
        return out;
    }

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

private:
    void push(const Letter& l)
    {
        if (!letters_.empty() && letters_.back().cancels(l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    std::vector<Letter> letters_;
};

} // namespace gramata
