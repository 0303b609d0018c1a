#pragma once

#include <string>

#include "randres/resolution.hpp"

namespace randres {

/// One step per line: `<id> <lit>* 0 <parent-id>* 0`. Axioms have no parents.
/// Resolve steps list exactly two parents; the pivot is recovered and must be
/// the unique clashing variable between them.
std::string write_proof(const ResolutionProof& proof);

ResolutionProof parse_proof(const std::string& text);
ResolutionProof load_proof(const std::string& path);
void save_proof(const std::string& path, const ResolutionProof& proof);

} // namespace randres
