#pragma once

#include "torsor/cw.hpp"
#include "torsor/localsystem.hpp"
#include "torsor/twisted.hpp"

#include <string>

namespace torsor {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// cw-complex/1 document
LinkExteriorComplex load_complex(const std::string& path);
LinkExteriorComplex parse_complex(const std::string& json_text);
std::string complex_to_json(const LinkExteriorComplex& c);

// local-system/1 document
MarkedLocalSystem load_local_system(const std::string& path);
MarkedLocalSystem parse_local_system(const std::string& json_text);

// orientation file: {"h1": [...], "h0": [...], "sign": 1} with rational
// coordinate vectors per degree
HomologyOrientation load_orientation(const std::string& path, const CWComplexData& cw);

// run report, as printed by the CLI in --emit json mode
std::string report_to_json(const TorsionResult& res, const std::string& complex_name,
                           const std::string& system_name, const std::string& rep_name,
                           const std::string& loop, double seconds);

} // namespace torsor
