#ifndef SECRATE_SYSIO_HPP
#define SECRATE_SYSIO_HPP

/*
 * Text format for half-space systems: one inequality per line, e.g.
 *
 *     # capacity cuts
 *     R1 + R2 <= 3/2
 *     0.25*R1 - R2 <= 0.1
 *
 * '#' starts a comment, blank lines are ignored, coefficients may be
 * integers, exact decimals, or rationals n/d, and both <= and >= are
 * accepted (>= rows are stored negated).  Variables are collected in
 * first-appearance order.  Implicit nonnegativity defaults to on and can
 * be toggled with a directive line `nonneg off` / `nonneg on`.
 */

#include <iosfwd>
#include <string>

#include "secrate/polytope.hpp"

namespace secrate {

// Parses a system from a stream; ParseError (with 1-based line number) on
// malformed input.
HalfSpaceSystem parse_system(std::istream& in);

// Parses a system from a string buffer.
HalfSpaceSystem parse_system_text(const std::string& text);

// Reads a system from a file; IoError if the file cannot be opened.
HalfSpaceSystem load_system(const std::string& path);

// Renders a system in the same text format (always emits `<=` rows;
// contradictory systems render their canonical `0 <= -1` row).
std::string format_system(const HalfSpaceSystem& sys);

// Writes a system to a file; IoError on failure.
void save_system(const std::string& path, const HalfSpaceSystem& sys);

} // namespace secrate

#endif // SECRATE_SYSIO_HPP
