#pragma once

#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbl/fdlattice.hpp"

namespace fbl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Malformed command line: unknown subcommand, missing option, bad value syntax.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one command line (without the program name). Results go to out, as
/// text or as a CommandResult JSON document under --json; human-readable
/// errors and usage text go to err. Returns kExitOk, kExitDomain or kExitUsage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Option value grammars; each throws UsageError on malformed text.
///   vector: "1,-1/2,0"          index set: "1,3" (1-based, may be empty)
///   norm:   l1 | linf | lp:P | wl1:W1,..,Wm | wlinf:W1,..,Wm
///   hom:    one entry per output row, SOURCE:SCALE (1-based source) or 0
Vector parse_vector(std::string_view text);
std::set<std::size_t> parse_index_set(std::string_view text);
NormSpec parse_norm_spec(std::string_view text);
LatticeHom parse_hom(std::string_view text, std::size_t domain_dim);

}  // namespace fbl::cli
