#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace margulis
{

/** One letter g_i^{+-1}. Generator indices are 1-based, as in g_1 ... g_{b+1}. */
struct Letter
{
    int generator;
    int exponent;  // +1 or -1

    Letter inverse() const { return {generator, -exponent}; }

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/** A freely reduced word in the generators. */
class Word
{
public:
    Word() = default;
    /** Freely reduces the letters. */
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

    static Word generator(int i, int exponent = 1) { return Word({Letter{i, exponent}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t k) const { return letters_[k]; }

    Word inverse() const;
    /** Largest generator index used, 0 for the empty word. */
    int max_generator() const;
    bool is_cyclically_reduced() const;

    /** "g1*g3^-1"; the empty word prints as "id". */
    std::string to_string() const;

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<Letter> letters_;
};

/** Cancels adjacent x x^{-1} pairs until none remain. */
std::vector<Letter> free_reduce(std::vector<Letter> letters);

}  // namespace margulis
