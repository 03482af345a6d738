#ifndef VLENC_ERROR_HPP
#define VLENC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace vlenc {

/// Every failure carries a machine-readable name (e.g. "LengthCollision")
/// naming the violated invariant, plus a human-readable detail message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

namespace errc {
inline constexpr const char* invalid_argument = "InvalidArgument";
inline constexpr const char* symbol_out_of_range = "SymbolOutOfRange";
inline constexpr const char* length_collision = "LengthCollision";
inline constexpr const char* injection_impossible = "InjectionImpossible";
inline constexpr const char* index_out_of_range = "IndexOutOfRange";
inline constexpr const char* capacity_exceeded = "CapacityExceeded";
inline constexpr const char* value_out_of_range = "ValueOutOfRange";
inline constexpr const char* bad_length = "BadLength";
inline constexpr const char* instance_too_large = "InstanceTooLarge";
inline constexpr const char* grid_too_large = "GridTooLarge";
} // namespace errc

[[noreturn]] inline void fail(const char* name, const std::string& detail)
{
    throw Error(name, detail);
}

inline void require(bool cond, const char* name, const std::string& detail)
{
    if (!cond)
        fail(name, detail);
}

} // namespace vlenc

#endif // VLENC_ERROR_HPP
