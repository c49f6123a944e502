#pragma once

#include "wps/characters.hpp"
#include "wps/conjugacy.hpp"

#include <json.hpp>

#include <string>

namespace wps {

// Structured system documents. Rationals serialize as "p/q" strings;
// matrix and directed-graph shorthands desugar to their WPS encodings.
WPS parse_system(const nlohmann::json& doc);
WPS parse_system_text(const std::string& text);
nlohmann::json serialize_system(const WPS& sys);

Homeo parse_gamma(const nlohmann::json& doc, const Space& from, const Space& to);
nlohmann::json serialize_gamma(const Homeo& gamma, const Space& from, const Space& to);

ConjugacyCertificate parse_certificate(const nlohmann::json& doc, const WPS& a, const WPS& b);
nlohmann::json serialize_certificate(const ConjugacyCertificate& cert, const WPS& a,
                                     const WPS& b);

FourierElement parse_element(const nlohmann::json& doc, const FockSpace& fs);
nlohmann::json serialize_element(const FourierElement& T, const FockSpace& fs);

bool systems_equal(const WPS& a, const WPS& b);

}  // namespace wps
