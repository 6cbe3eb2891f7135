#pragma once

#include "itphi/igusa_todorov.hpp"
#include "itphi/phidim_search.hpp"
#include "itphi/quiver.hpp"
#include "itphi/tilting_lab.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace itphi::io {

using nlohmann::json;

/// Malformed input; the message starts with the file and JSON location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);

/// Algebra file: {"prime", "vertices", "arrows": [{"from", "to", "label"}],
/// "relations": [[{"coeff", "path"}]], "length_bound"}; paths list arrow
/// labels in the order they are applied.
QuiverSpec parse_algebra(const json& j, const std::string& where);
json algebra_to_json(const QuiverSpec& q);

/// Module file: {"dims": [...], "arrows": {"label": rows}} with one
/// dims[to] x dims[from] matrix per arrow.
Module parse_module(const json& j, const AlgebraPtr& a, const std::string& where);
json module_to_json(const Module& m);

/// Parses text as JSON, reporting the byte offset on failure.
json parse_text(const std::string& text, const std::string& where);

json to_json(const PhiOutcome& o);
json to_json(const DivisionOutcome& d);
json to_json(const ProjDim& d);
json to_json(const PhidimResult& r);
json to_json(const DimensionReport& r);
json to_json(const TiltingCertificate& c);
json to_json(const BongartzReport& r);
json to_json(const OpeReport& r);
json algebra_summary(const AlgebraPresentation& a);

/// Stable digest of an algebra's structure constants.
std::string algebra_digest(const AlgebraPresentation& a);
std::string module_digest(const Module& m);

}  // namespace itphi::io
