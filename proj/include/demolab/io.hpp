#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

namespace demolab {

/// 8-byte magic at the head of the binary matrix format. The 16-byte header
/// is magic + u32 rows + u32 cols (little-endian); the payload is row-major
/// little-endian IEEE 64-bit floats.
inline constexpr char kBinaryMagic[9] = "DEMOLAB1";

/// Full-precision scientific formatting (17 significant digits), round-trip
/// safe for 64-bit floats.
std::string format_full(double v);

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

void write_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_binary(const std::filesystem::path& path);

/// Dispatches on extension: ".bin" -> binary, anything else -> CSV.
Eigen::MatrixXd read_matrix_auto(const std::filesystem::path& path);

void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

}  // namespace demolab
