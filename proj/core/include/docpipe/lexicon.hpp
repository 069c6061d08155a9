#pragma once

#include <string>
#include <vector>

namespace docpipe::lexicon {

/// Common Chinese surnames, single and compound.
const std::vector<std::string>& surnames();

/// Distinct characters drawn on for given names, as UTF-8 strings.
const std::vector<std::string>& given_name_chars();

/// Six-digit administrative division codes used for ID region segments.
const std::vector<std::string>& region_codes();

}  // namespace docpipe::lexicon
