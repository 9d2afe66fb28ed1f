#pragma once

// Plumbing for the seqsynth executable: run manifests, input digests,
// key=value config files, and cleanup of partial outputs.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <vector>

#include "seqsynth/detail/text.hpp"
#include "seqsynth/error.hpp"

namespace seqsynth::cli {

inline std::string sha256_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256: digest init failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) {
    EVP_MD_CTX_free(ctx);
    throw IoError("read failed: " + path.string());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

/// Removes every registered output unless commit() was called.
class OutputGuard {
 public:
  OutputGuard() = default;
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;

  ~OutputGuard() {
    if (committed_) return;
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }

  const std::filesystem::path& add(std::filesystem::path p) { return paths_.emplace_back(std::move(p)); }
  void commit() { committed_ = true; }

 private:
  std::vector<std::filesystem::path> paths_;
  bool committed_ = false;
};

/// Ordered key=value record written next to a run's outputs. Keys that
/// match a subcommand's flag names can be fed back through --config.
class Manifest {
 public:
  explicit Manifest(std::string command) : start_(std::chrono::steady_clock::now()) {
    set("command", std::move(command));
    set("tool_version", SEQSYNTH_VERSION);
  }

  void set(const std::string& key, std::string value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    entries_.emplace_back(key, std::move(value));
  }

  void set(const std::string& key, double value) { set(key, detail::format_double(value)); }

  template <typename T>
    requires std::is_integral_v<T>
  void set(const std::string& key, T value) {
    set(key, std::to_string(value));
  }

  void digest(const std::string& key, const std::filesystem::path& input) {
    if (!input.empty()) set("digest." + key, sha256_file(input));
  }

  void save(const std::filesystem::path& path) {
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    set("duration_ms", static_cast<long long>(ms));
    auto out = detail::open_output(path);
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
    detail::finish_output(out, path);
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::chrono::steady_clock::time_point start_;
};

/// key=value pairs from a config or manifest file. Blank lines and lines
/// starting with '#' are skipped.
inline std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(detail::chomp(raw));
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0) throw FormatError(path.string(), line_no, "expected key=value");
    out.emplace_back(std::string(detail::trim(line.substr(0, eq))), std::string(detail::trim(line.substr(eq + 1))));
  }
  return out;
}

/// Finds `--config FILE` or `--config=FILE` after the subcommand name.
inline std::filesystem::path find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

}  // namespace seqsynth::cli
