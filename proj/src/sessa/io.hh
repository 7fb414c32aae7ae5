#pragma once

// Text formats: words (`a:8 b:4`, `a:*1 b:^1 c:o2`), the line-oriented `.sra`
// automaton format, and Graphviz DOT export.

#include <iosfwd>
#include <string>
#include <string_view>

#include "sessa/automaton.hh"
#include "sessa/symbolic.hh"
#include "sessa/words.hh"

namespace sessa {

/// Empty input or `-` is the empty word. Throws SyntaxError.
DataWord parse_data_word(std::string_view text);
SymbolicWord parse_symbolic_word(std::string_view text);

/// Inverse of the parsers; the empty word prints as `-`.
std::string to_string(const DataWord& w);
std::string to_string(const SymbolicWord& u);
std::string to_string(const TransitionLabel& letter);

/// `a, ⊛1` style rendering used in DOT labels.
std::string glyph(const TransitionLabel& letter);

/// Throws SyntaxError carrying the 1-based line number.
Automaton parse_automaton(std::string_view text);
std::string serialize_automaton(const Automaton& a);

/// Reads and parses a `.sra` file. Throws Error(Io) if unreadable.
Automaton load_automaton(const std::string& path);
void save_text(const std::string& path, const std::string& text);

std::string dot_export(const Automaton& a);
std::string dot_export(const SymbolicDfa& d, const std::string& name = "A");

std::ostream& operator<<(std::ostream& os, const DataWord& w);
std::ostream& operator<<(std::ostream& os, const SymbolicWord& u);

} // namespace sessa
