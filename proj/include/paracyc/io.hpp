#ifndef PARACYC_IO_HPP
#define PARACYC_IO_HPP

#include "paracyc/comparison.hpp"
#include "paracyc/cyclic.hpp"
#include "paracyc/homology.hpp"
#include "paracyc/report.hpp"

#include <string>

namespace paracyc {

// Structure files:
// {
//   "max_degree": M,
//   "ranks": [r0, ..., rM],
//   "faces": [[matrix, ...], ...],          faces[m][i] : C_m -> C_{m-1}
//   "t": [matrix, ...],
//   "degeneracies": [[matrix, ...], ...],   optional, m = 0..M-1
//   "homotopy_s": [matrix, ...]             optional, m = 0..M-1
// }
// with matrices as row-major arrays of "p/q" strings.
CyclicStructure read_structure_json(const std::string& path);
void write_structure_json(const CyclicStructure& cs, const std::string& path);
std::string structure_to_json(const CyclicStructure& cs);
CyclicStructure structure_from_json(const std::string& text);

// Cocycle files: { "degree": m, "components": [[...], ...] } ordered from
// the top component downwards; conversion output mirrors the format and
// adds "value", "lifted" and a "certificate" block.
Cochain read_cocycle_json(const std::string& path);
std::string conversion_to_json(const Cochain& input, const CocycleConversion& cc);

std::string report_to_json(const ValidationReport& rep);
std::string report_to_csv(const ValidationReport& rep);

std::string agreement_to_json(const AgreementReport& ar);
std::string agreement_to_csv(const AgreementReport& ar);

} // namespace paracyc

#endif
