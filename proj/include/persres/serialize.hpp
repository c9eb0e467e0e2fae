#pragma once

#include <json.hpp>
#include <string>

#include "persres/ingest.hpp"
#include "persres/interleave.hpp"

namespace persres {

using json = nlohmann::json;

json grade_to_json(const Grade& g);
Grade grade_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, Field f, std::size_t rows, std::size_t cols);

// {"n": int, "generators": [grade...],
//  "relations": [{"grade": grade, "coeffs": [scalar...]}...]}
json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j, Field f);

// {"n": int, "terms": {"-1": [grade...], ...},
//  "differentials": {"-1": rows of term 0 x cols of term -1, ...}}
json complex_to_json(const FreeChainComplex& x);
FreeChainComplex complex_from_json(const json& j, Field f);

// {"simplices": [{"vertices": [ints], "grade": [q, q]}...]}
json bifiltration_to_json(const Bifiltration& k);
Bifiltration bifiltration_from_json(const json& j);

json betti_to_json(const std::map<Grade, std::size_t, GradeLess>& table);
std::string betti_to_csv(const std::map<Grade, std::size_t, GradeLess>& table);
std::string grade_to_display(const Grade& g);  // "(0,1/2)"

json certificate_to_json(const InterleavingCertificate& cert);
// Reconstructs the certificate's morphisms against the two loaded modules;
// used by the verify round trip.
bool reverify_certificate(const json& j, const Presentation& m, const Presentation& n);

json bracket_to_json(const DistanceBracket& b);
std::string bracket_to_display(const DistanceBracket& b);  // "[1/2, 1/2]"

json search_result_to_json(const SearchResult& r);
json isometry_report_to_json(const IsometryReport& r);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace persres
