#pragma once

#include <stdexcept>
#include <string>

#include "tac/model_library.hpp"

namespace tac {

/// Parse or validation failure in a TAC or cycle document. `line` is 1-based,
/// 0 when the problem is not tied to a line.
class TacError : public std::runtime_error {
 public:
  TacError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text form of a model:
///
///   TAC 1
///   name <word>
///   dimension <n>
///   rank <r>
///   provenance symple|none
///   orientation 1|-1
///   vertices <count>
///   simplices <count>       then one ascending vertex tuple per line (ids 0..)
///   delta <count>           then generating vertex tuples
///   boundary <count>        then generating vertex tuples
///   transitions <count>     then "<from id> <to id> : <r*r entries, row major>"
///   coordinates <count>     optional, one integer point per vertex
///   end
///
/// '#' starts a comment. Sections appear in this order.
std::string write_tac(const AffineModel& m);
/// Builds the complex and local system, validates the flags and the
/// transition cocycle. Throws TacError.
AffineModel read_tac(const std::string& text);

/// Cycle file:
///
///   TAC-CYCLE 1
///   name <word>
///   p <p>
///   q <q>
///   relative none|delta|boundary
///   cells <count>           then "<ascending vertex tuple> : <coefficients>"
///   end
///
/// Coefficients are in the home frame of the simplex, lexicographic wedge basis.
struct CycleDocument {
  TropicalCycle cycle;
  Relative relative = Relative::None;
};
std::string write_cycle(const CycleDocument& doc, const DeltaComplex& K);
/// Parses against the complex of L and checks that the chain is a cycle with
/// coefficients in the sheaf. Throws TacError.
CycleDocument read_cycle(const std::string& text, const LocalSystem& L);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tac
