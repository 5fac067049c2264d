#ifndef HYDRA_CSV_HPP_
#define HYDRA_CSV_HPP_

#include <optional>
#include <string>
#include <vector>

namespace hydra {

/// Floating-point CSV cell: 9 significant digits, locale-independent.
std::string csv_double(double v);
/// Optional cell: empty when undefined.
std::string csv_optional(const std::optional<double>& v);

/// Write lines to a file as-is (LF endings). Throws InputError on I/O
/// failure, naming the path.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

/// Minimal reader for round-trip tests: splits rows on '\n', cells on ','.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace hydra

#endif  // HYDRA_CSV_HPP_
