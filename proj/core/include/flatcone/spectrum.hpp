#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcone/holonomy.hpp"

namespace flatcone {

struct SpectrumEntry {
    CurveWord word;
    double length = 0.0;
    int tightening_iterations = 0;
    /// The deck transformation is a translation and a whole strip of parallel
    /// closed geodesics realises the length.
    bool flat_strip_flag = false;
    /// Length found before each pivot, then the final length.
    std::vector<double> pivot_lengths;
    /// The corridor the final geodesic runs through, as exit crossings.
    CurveWord taut_word;
};

struct SpectrumOptions {
    int max_pivots = 10'000;
};

class NullHomotopic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WordInvalidOnB : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exit-form crossings with adjacent inverse pairs cancelled, cyclically.
CurveWord reduce_word(const FlatConeSurface& surface, const CurveWord& word);

/// Length of the closed geodesic freely homotopic to the curve. Unrolls the
/// word's chart corridor, pulls the shortest path from each corridor vertex
/// to its image under the deck transformation, and pivots the corridor around
/// any vertex where the path turns by less than pi on the outer side.
/// Requires convex charts. Throws OpenLoop, NullHomotopic, NonConvergent.
SpectrumEntry geodesic_length(const FlatConeSurface& surface, const CurveWord& word,
                              const SpectrumOptions& options = {});

struct SpectrumRecord {
    std::optional<SpectrumEntry> entry;
    std::string error;  // set when entry is empty
};

/// One record per word, in input order; failures are recorded, not thrown.
std::vector<SpectrumRecord> marked_spectrum(const FlatConeSurface& surface, const std::vector<CurveWord>& words,
                                            const SpectrumOptions& options = {});

struct SpectrumPair {
    std::size_t word_id = 0;
    std::optional<double> length_a;
    std::optional<double> length_b;
    std::string error;
    /// |b - a| / a when both lengths exist.
    std::optional<double> relative_difference;
};

struct SpectrumComparison {
    std::vector<SpectrumPair> pairs;
    double max_relative_difference = 0.0;
};

/// Lengths of the same words on two surfaces sharing a combinatorial
/// presentation. Throws WordInvalidOnB when a word is not a closed curve on b.
SpectrumComparison compare_spectra(const FlatConeSurface& a, const FlatConeSurface& b,
                                   const std::vector<CurveWord>& words, const SpectrumOptions& options = {});

}  // namespace flatcone
