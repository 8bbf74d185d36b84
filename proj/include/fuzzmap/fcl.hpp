#pragma once

#include <string>
#include <string_view>

#include "fuzzmap/fuzzy.hpp"

namespace fuzzmap {

/// Parses the supported Fuzzy Control Language subset:
///
///   FUNCTION_BLOCK <name>
///     VAR_INPUT <var> : REAL; END_VAR
///     VAR_OUTPUT <var> : REAL; END_VAR
///     FUZZIFY <var> TERM <name> := (x, mu) ... ; END_FUZZIFY
///     DEFUZZIFY <var> TERM ... ; METHOD : COG; DEFAULT := <value>; END_DEFUZZIFY
///     RULEBLOCK <name> AND : MIN; ACT : MIN; ACCU : MAX;
///       RULE <k> : IF <var> IS <term> THEN <var> IS <term>;
///     END_RULEBLOCK
///   END_FUNCTION_BLOCK
///
/// Keywords are case-insensitive; identifiers are not. Comments: `// ...`,
/// `/* ... */` and `(* ... *)`. Throws ParseError with the offending line.
FuzzySystem parse_fcl(std::string_view text, std::size_t resolution = kDefaultResolution);

/// Reads and parses a file; I/O failures throw fuzzmap::Error.
FuzzySystem load_fcl(const std::string& path);

/// Canonical FCL text; parse_fcl(to_fcl(s)) == s except for resolution,
/// which the language cannot express.
std::string to_fcl(const FuzzySystem& system);

}  // namespace fuzzmap
