#pragma once

// Opposite-sign scan of Margulis invariants over short words. Two elements
// with invariants of strictly opposite sign rule out a properly
// discontinuous affine action; the absence of such a pair up to a given
// length is only a necessary condition.

#include <iosfwd>
#include <optional>
#include <vector>

#include "margulis/affine.hpp"
#include "margulis/word.hpp"

namespace margulis
{

/** Invariants with |alpha| at or below this carry no sign. */
inline constexpr double zero_band = 1e-9;

/** Letter order g_1 < g_1^{-1} < g_2 < g_2^{-1} < ... */
int letter_key(const Letter& l);

/** Lexicographic comparison of words under letter_key. */
bool key_less(const Word& a, const Word& b);

/**
 * Canonical representative of the class of a cyclically reduced word under
 * cyclic rotation and inversion: the key_less-minimum over all rotations of
 * w and of w^{-1}.
 */
Word canonical_form(const Word& w);

/**
 * Canonical cyclically reduced words in g_1 .. g_b of length 1 .. max_len,
 * ordered by length, then by key. Throws std::invalid_argument if max_len < 1.
 */
std::vector<Word> enumerate_words(int b, int max_len);

enum class ScanStatus { not_proper, sign_consistent };

const char* to_string(ScanStatus s);

struct ScanEntry
{
    Word word;
    double alpha;
};

struct LengthSummary
{
    int length = 0;
    int count = 0;
    int zeros = 0;
    double min = 0;
    double max = 0;
};

struct ScanVerdict
{
    ScanStatus status = ScanStatus::sign_consistent;
    /** First opposite-sign pair in enumeration order; set iff not_proper. */
    std::optional<std::pair<ScanEntry, ScanEntry>> witness;
    std::vector<LengthSummary> spectrum;
    std::vector<ScanEntry> entries;
    /** Words whose image failed the hyperbolicity test. */
    int skipped = 0;
};

/**
 * Margulis invariants of every enumerated word. The whole list is always
 * evaluated so the spectrum is complete; the witness pairs the first word
 * with a signed invariant opposite to an earlier one, with that earlier one.
 */
ScanVerdict sign_scan(const Cocycle& u, int max_len);

/** CSV with header word,length,alpha. */
void write_spectrum_csv(std::ostream& os, const ScanVerdict& v);

}  // namespace margulis
