#ifndef RANKONE_CLI_SCHEMA_HPP
#define RANKONE_CLI_SCHEMA_HPP

#include "rankone/cli.hpp"
#include "rankone/numeric.hpp"

#include <initializer_list>
#include <string>
#include <string_view>

namespace rankone::cli::detail {

[[noreturn]] void config_error(const std::string& path, const std::string& what);

/// Rejects non-objects and keys outside `allowed`.
void check_object(const Json& value, const std::string& path, std::initializer_list<std::string_view> allowed);
void check_array(const Json& value, const std::string& path, bool nonempty = true);

/// nullptr when `key` is absent.
const Json* find(const Json& object, std::string_view key);
const Json& require(const Json& object, std::string_view key, const std::string& path);

// Integers are accepted as JSON integers or as decimal strings.
BigInt get_bigint(const Json& value, const std::string& path);
Rational get_rational(const Json& value, const std::string& path);
std::int64_t get_int(const Json& value, const std::string& path, std::int64_t lo, std::int64_t hi);
std::uint64_t get_u64(const Json& value, const std::string& path);
bool get_bool(const Json& value, const std::string& path);
std::string get_string(const Json& value, const std::string& path);

std::string child(const std::string& path, std::string_view key);
std::string child(const std::string& path, std::size_t index);

}  // namespace rankone::cli::detail

#endif
