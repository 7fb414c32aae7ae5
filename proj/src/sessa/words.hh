#pragma once

// Data words, symbolic words and the symbolic normal form.
//
// Positions are 1-based everywhere in this interface.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sessa {

using Label = std::string;
using DataValue = std::uint64_t;

struct DataLetter {
    Label label;
    DataValue value = 0;

    friend auto operator<=>(const DataLetter&, const DataLetter&) = default;
};

using DataWord = std::vector<DataLetter>;

// Declaration order is the total order used for tie-breaking: ⊛ < ↑ < ⊙.
enum class OpKind : std::uint8_t {
    GlobalFresh,
    Reuse,
    LocalFresh,
};

struct RegisterOp {
    OpKind kind = OpKind::GlobalFresh;
    unsigned reg = 1;

    friend auto operator<=>(const RegisterOp&, const RegisterOp&) = default;
};

/// A letter (a, π) of the symbolic alphabet. Ordered by label, then op kind, then register.
struct TransitionLabel {
    Label label;
    RegisterOp op;

    friend auto operator<=>(const TransitionLabel&, const TransitionLabel&) = default;
};

using SymbolicWord = std::vector<TransitionLabel>;

inline TransitionLabel fresh(Label a, unsigned r) { return {std::move(a), {OpKind::GlobalFresh, r}}; }
inline TransitionLabel reuse(Label a, unsigned r) { return {std::move(a), {OpKind::Reuse, r}}; }
inline TransitionLabel local(Label a, unsigned r) { return {std::move(a), {OpKind::LocalFresh, r}}; }

/// Shortlex order: shorter words first, then lexicographic on letters.
bool shortlex_less(const SymbolicWord& x, const SymbolicWord& y);

/// First and last position of `d` in `w`. Throws ValueAbsent.
std::pair<std::size_t, std::size_t> occurrence_bounds(const DataWord& w, DataValue d);

/// w ≈ w': same labels and the same equality pattern on data values.
bool data_equivalent(const DataWord& w, const DataWord& w2);

/// Maximal number of sessions overlapping a single position.
std::size_t bound(const DataWord& w);

inline bool is_k_bounded(const DataWord& w, std::size_t k) { return bound(w) <= k; }

/// Every ↑r is preceded by some ⊛r. Throws UnsupportedOp on ⊙ letters.
bool is_well_formed(const SymbolicWord& u);

/// Classes of ∼u, each sorted, listed in order of their first position.
std::vector<std::vector<std::size_t>> symbolic_classes(const SymbolicWord& u);

SymbolicWord snf(const DataWord& w);

/// Smallest representative of γ(u): classes get 1, 2, ... in order of first position.
/// Throws NotWellFormed.
DataWord concretize(const SymbolicWord& u);

bool is_concretization(const DataWord& w, const SymbolicWord& u);

unsigned max_register(const SymbolicWord& u);

std::vector<Label> labels_of(const DataWord& w);
std::vector<Label> labels_of(const SymbolicWord& u);

} // namespace sessa
