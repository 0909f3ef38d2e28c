#pragma once

#include <string>

#include "tracemon/automata.hpp"

namespace tracemon {

/// Graphviz renderings. Accepting states are double circles, Moore states are
/// labelled `q<i> / <verdict symbol>`; nodes and edges appear in state-index
/// then letter order.
std::string to_dot(const Nba& a);
std::string to_dot(const Nfa& a);
std::string to_dot(const Dfa& a);
std::string to_dot(const Aba& a);
std::string to_dot(const MooreMachine& m);

} // namespace tracemon
