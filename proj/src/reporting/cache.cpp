#include "zetalab/reporting/cache.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace zetalab::reporting {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string hexfloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double read_hexfloat(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  return std::to_string(secs.count());
}

// Writes `body` plus a trailing checksum line, atomically.
void write_checked(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << body << "checksum " << hex64(fnv1a(body)) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

// Returns the body when the checksum line matches.
std::optional<std::string> read_checked(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto pos = text.rfind("checksum ");
  if (pos == std::string::npos) return std::nullopt;
  const std::string body = text.substr(0, pos);
  std::string sum = text.substr(pos + 9);
  while (!sum.empty() && (sum.back() == '\n' || sum.back() == '\r')) sum.pop_back();
  if (sum != hex64(fnv1a(body))) return std::nullopt;
  return body;
}

std::vector<std::string> lines_of(const std::string& body) {
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

// "name value" -> value
std::optional<std::string> field(const std::vector<std::string>& lines, const std::string& name) {
  for (const auto& line : lines) {
    if (line.rfind(name + " ", 0) == 0) return line.substr(name.size() + 1);
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string policy_key(const PrecisionPolicy& p) {
  return "abs_tol=" + hexfloat(p.abs_tol) + ";rel_tol=" + hexfloat(p.rel_tol) +
         ";max_series_terms=" + std::to_string(p.max_series_terms) +
         ";max_panel_depth=" + std::to_string(p.max_panel_depth);
}

std::string moment_key(const Integrand& kind, double lower, double upper,
                       const PrecisionPolicy& policy) {
  return "moment;kind=" + kind.name() + ";sigma=" + sig12(kind.sigma) +
         ";l=" + std::to_string(kind.l) + ";lower=" + sig12(lower) + ";upper=" + sig12(upper) +
         ";" + policy_key(policy) + ";version=" + kCodeVersion;
}

FileMomentStore::FileMomentStore(std::string dir) : dir_(std::move(dir)) {}

std::string FileMomentStore::path_for(const std::string& key) const {
  return (std::filesystem::path(dir_) / "moments" / (hex64(fnv1a(key)) + ".rec")).string();
}

std::optional<MomentRecord> FileMomentStore::load(const Integrand& kind, double lower,
                                                  double upper, const PrecisionPolicy& policy) {
  const std::string key = moment_key(kind, lower, upper, policy);
  std::lock_guard lock(mutex_);
  const auto body = read_checked(path_for(key));
  if (!body) {
    ++misses_;
    return std::nullopt;
  }
  const auto lines = lines_of(*body);
  const auto stored_key = field(lines, "key");
  const auto lo = field(lines, "lower");
  const auto hi = field(lines, "upper");
  // The key is rounded; exact limits must match too.
  if (!stored_key || *stored_key != key || !lo || !hi || read_hexfloat(*lo) != lower ||
      read_hexfloat(*hi) != upper) {
    ++misses_;
    return std::nullopt;
  }
  MomentRecord rec;
  rec.lower = lower;
  rec.upper = upper;
  rec.power = kind.power();
  rec.value = read_hexfloat(field(lines, "value").value_or("nan"));
  rec.err_estimate = read_hexfloat(field(lines, "err_estimate").value_or("nan"));
  rec.evaluations = std::strtoll(field(lines, "evaluations").value_or("0").c_str(), nullptr, 10);
  ++hits_;
  return rec;
}

void FileMomentStore::save(const Integrand& kind, const MomentRecord& record,
                           const PrecisionPolicy& policy) {
  const std::string key = moment_key(kind, record.lower, record.upper, policy);
  std::ostringstream body;
  body << "key " << key << "\n"
       << "lower " << hexfloat(record.lower) << "\n"
       << "upper " << hexfloat(record.upper) << "\n"
       << "value " << hexfloat(record.value) << "\n"
       << "err_estimate " << hexfloat(record.err_estimate) << "\n"
       << "evaluations " << record.evaluations << "\n"
       << "created_at " << utc_now() << "\n";
  std::lock_guard lock(mutex_);
  write_checked(path_for(key), body.str());
}

ZeroTable cached_zero_table(const std::string& dir, double T_max, const PrecisionPolicy& policy) {
  const std::string key = "zeros;" + policy_key(policy) + ";version=" + kCodeVersion;
  const auto path = std::filesystem::path(dir) / "zeros" / (hex64(fnv1a(key)) + ".tab");
  if (const auto body = read_checked(path)) {
    const auto lines = lines_of(*body);
    const auto stored_key = field(lines, "key");
    const auto tmax = field(lines, "T_max");
    if (stored_key && *stored_key == key && tmax && read_hexfloat(*tmax) >= T_max) {
      std::vector<double> zeros;
      for (const auto& line : lines) {
        if (line.rfind("zero ", 0) == 0) zeros.push_back(read_hexfloat(line.substr(5)));
      }
      return ZeroTable(std::move(zeros), read_hexfloat(*tmax), policy);
    }
  }
  ZeroTable table = build_zero_table(T_max, policy);
  std::ostringstream body;
  body << "key " << key << "\n"
       << "T_max " << hexfloat(T_max) << "\n"
       << "created_at " << utc_now() << "\n";
  for (double z : table.zeros()) body << "zero " << hexfloat(z) << "\n";
  write_checked(path, body.str());
  return table;
}

}  // namespace zetalab::reporting
