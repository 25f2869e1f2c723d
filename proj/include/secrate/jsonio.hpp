#ifndef SECRATE_JSONIO_HPP
#define SECRATE_JSONIO_HPP

/* JSON bindings: loading joint distributions, scheme distributions, and
 * per-symbol pair channels from files, and serializing rate regions.
 *
 * Distribution layout:
 *
 *     {
 *       "variables": [{"name": "Q", "size": 2}, ...],
 *       "table": [0.125, ...],            // row-major, last variable fastest
 *       "extended": {"variables": [...], "table": [...]}   // optional
 *     }
 *
 * Pair channel layout: {"size1": 2, "size2": 2, "joint": [...]} with the
 * joint row-major in (y1, y2).
 */

#include <string>

#include "json.hpp"
#include "secrate/keysim.hpp"
#include "secrate/polytope.hpp"
#include "secrate/prob.hpp"
#include "secrate/regions.hpp"

namespace secrate {

// Throw ValueError on malformed or missing fields; the pmf constructor's
// own validation errors pass through.
JointPmf pmf_from_json(const nlohmann::json& spec);
SchemeDistribution scheme_from_json(const nlohmann::json& spec);
PairChannel channel_from_json(const nlohmann::json& spec);

// File loaders: IoError if the file cannot be read, ValueError if it is not
// valid JSON.
SchemeDistribution load_scheme(const std::string& path);
PairChannel load_channel(const std::string& path);

// {"coeffs": {"R1": 1.0, ...}, "rhs": 0.5} per inequality.
nlohmann::json system_to_json(const HalfSpaceSystem& sys);
// Adds the hull "vertices" of a two-variable system to the above.
nlohmann::json region_to_json(const Region2D& region);

}  // namespace secrate

#endif  // SECRATE_JSONIO_HPP
