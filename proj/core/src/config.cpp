#include "symplat/config.hpp"

namespace symplat {

OutputFormat parse_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown output format: " + name);
}

}  // namespace symplat
