#include "margulis/proper.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace margulis
{

int letter_key(const Letter& l) { return 2 * (l.generator - 1) + (l.exponent > 0 ? 0 : 1); }

bool key_less(const Word& a, const Word& b)
{
    return std::lexicographical_compare(
        a.letters().begin(), a.letters().end(), b.letters().begin(), b.letters().end(),
        [](const Letter& x, const Letter& y) { return letter_key(x) < letter_key(y); });
}

namespace
{

Word rotated(const std::vector<Letter>& letters, std::size_t k)
{
    std::vector<Letter> r(letters.begin() + k, letters.end());
    r.insert(r.end(), letters.begin(), letters.begin() + k);
    return Word(std::move(r));
}

Letter letter_from_key(int key) { return {key / 2 + 1, key % 2 == 0 ? 1 : -1}; }

void extend(int b, std::size_t len, std::vector<Letter>& prefix, std::vector<Word>& out)
{
    if (prefix.size() == len) {
        if (prefix.size() > 1 && prefix.front() == prefix.back().inverse()) {
            return;
        }
        Word w(prefix);
        if (canonical_form(w) == w) {
            out.push_back(std::move(w));
        }
        return;
    }
    for (int key = 0; key < 2 * b; ++key) {
        const Letter l = letter_from_key(key);
        if (!prefix.empty() && prefix.back() == l.inverse()) {
            continue;
        }
        prefix.push_back(l);
        extend(b, len, prefix, out);
        prefix.pop_back();
    }
}

int sign_of(double a) { return a > zero_band ? 1 : (a < -zero_band ? -1 : 0); }

}  // namespace

Word canonical_form(const Word& w)
{
    Word best = w;
    for (const Word& v : {w, w.inverse()}) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            Word r = rotated(v.letters(), k);
            if (key_less(r, best)) {
                best = std::move(r);
            }
        }
    }
    return best;
}

std::vector<Word> enumerate_words(int b, int max_len)
{
    if (max_len < 1) {
        throw std::invalid_argument("max_len must be at least 1");
    }
    if (b < 1) {
        throw std::invalid_argument("need at least one generator");
    }
    std::vector<Word> out;
    std::vector<Letter> prefix;
    for (int len = 1; len <= max_len; ++len) {
        extend(b, static_cast<std::size_t>(len), prefix, out);
    }
    return out;
}

const char* to_string(ScanStatus s)
{
    return s == ScanStatus::not_proper ? "NOT_PROPER" : "SIGN_CONSISTENT";
}

ScanVerdict sign_scan(const Cocycle& u, int max_len)
{
    ScanVerdict v;
    std::optional<ScanEntry> first_signed[2];  // [0] negative, [1] positive
    for (const Word& w : enumerate_words(u.b(), max_len)) {
        double a = 0;
        try {
            a = margulis(u, w);
        }
        catch (const NotHyperbolic&) {
            ++v.skipped;
            continue;
        }
        const ScanEntry e{w, a};
        v.entries.push_back(e);

        const int len = static_cast<int>(w.size());
        if (v.spectrum.empty() || v.spectrum.back().length != len) {
            v.spectrum.push_back({len, 0, 0, a, a});
        }
        LengthSummary& s = v.spectrum.back();
        ++s.count;
        s.min = std::min(s.min, a);
        s.max = std::max(s.max, a);

        const int sg = sign_of(a);
        if (sg == 0) {
            ++s.zeros;
            continue;
        }
        const auto& opposite = first_signed[sg > 0 ? 0 : 1];
        if (!v.witness && opposite) {
            v.witness = std::make_pair(*opposite, e);
        }
        auto& same = first_signed[sg > 0 ? 1 : 0];
        if (!same) {
            same = e;
        }
    }
    v.status = v.witness ? ScanStatus::not_proper : ScanStatus::sign_consistent;
    return v;
}

void write_spectrum_csv(std::ostream& os, const ScanVerdict& v)
{
    const auto old = os.precision(17);
    os << "word,length,alpha\n";
    for (const auto& e : v.entries) {
        os << e.word.to_string() << ',' << e.word.size() << ',' << e.alpha << '\n';
    }
    os.precision(old);
}

}  // namespace margulis
