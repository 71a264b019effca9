#pragma once

#include <optional>
#include <string>

#include "skew/iwasawa.hpp"

namespace skew {

/// A ring with its twist and filtration as read from a ring file.
struct RingSpec {
    std::string name;
    ContextPtr context;
    std::optional<GroupDatum> group;
};

class SpecError : public std::invalid_argument {
public:
    SpecError(int line, const std::string& what)
        : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parses the sectioned key = value format ([ring], [sigma], [delta], [filtration], [group]).
RingSpec parse_ring_spec(const std::string& text, const std::string& name = "spec");
RingSpec load_ring_spec(const std::string& path);
/// A built-in catalog name such as "z4-dual-twisted", or a path to a ring file.
RingSpec resolve_ring(const std::string& name_or_path);

/// "r00 r01; r10 r11" with row i the coordinates of the image of basis element i.
LinearMap parse_matrix(const Modulus& mod, std::size_t dim, const std::string& text);

}  // namespace skew
