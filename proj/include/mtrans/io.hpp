#pragma once

#include "mtrans/core.hpp"
#include "mtrans/hull.hpp"
#include "mtrans/sperner.hpp"
#include "mtrans/transversal.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace mtrans {

/// Contents of a JSON parameter file. Indices of P are 0-based.
struct ParamFile {
  ParamSet params;
  std::optional<std::vector<int>> m;
  std::optional<GammaConstraint> gamma;
};

/// Throws ParseError on malformed JSON, unknown keys, invalid bounds, or an
/// "m" that disagrees with "n".
ParamFile parse_params(std::string_view text);
std::string format_params(const ParamFile& file);

/// "# transversal n=2,3" followed by tab-separated "i_1 ... i_M mult" lines
/// in lexicographic order.
std::string format_transversal(const MultiTransversal& t);
MultiTransversal parse_transversal(std::string_view text);

/// "MOA constraint=M strength=d levels=... runs=N" followed by one
/// space-separated row per line. The parsed array has an empty lambda map.
std::string format_moa(const Moa& a);
Moa parse_moa(std::string_view text);

/// Same layout as a transversal file with header "# profile"; zero cells are
/// omitted.
std::string format_profile(const ProfileMatrix& p);
ProfileMatrix parse_profile(std::string_view text);

/// Whole file as a string. Throws ParseError if it cannot be read.
std::string read_file(const std::string& path);
/// Throws Error if it cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace mtrans
