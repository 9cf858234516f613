#pragma once

#include <stdexcept>
#include <string>

namespace wormsim {

/// File-system failure (missing input, unwritable output).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace wormsim
