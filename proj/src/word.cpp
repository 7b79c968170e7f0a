#include "margulis/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace margulis
{

std::vector<Letter> free_reduce(std::vector<Letter> letters)
{
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const auto& l : letters) {
        if (l.exponent != 1 && l.exponent != -1) {
            throw std::invalid_argument("letter exponent must be +1 or -1");
        }
        if (l.generator < 1) {
            throw std::invalid_argument("generator indices start at 1");
        }
        if (!out.empty() && out.back() == l.inverse()) {
            out.pop_back();
        }
        else {
            out.push_back(l);
        }
    }
    return out;
}

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(std::move(letters))) {}

Word Word::inverse() const
{
    std::vector<Letter> inv;
    inv.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
        inv.push_back(it->inverse());
    }
    Word w;
    w.letters_ = std::move(inv);
    return w;
}

int Word::max_generator() const
{
    int m = 0;
    for (const auto& l : letters_) {
        m = std::max(m, l.generator);
    }
    return m;
}

bool Word::is_cyclically_reduced() const
{
    return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
}

std::string Word::to_string() const
{
    if (letters_.empty()) {
        return "id";
    }
    std::string s;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
        if (k) {
            s += '*';
        }
        s += 'g' + std::to_string(letters_[k].generator);
        if (letters_[k].exponent < 0) {
            s += "^-1";
        }
    }
    return s;
}

Word operator*(const Word& a, const Word& b)
{
    std::vector<Letter> all = a.letters_;
    all.insert(all.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(all));
}

}  // namespace margulis
