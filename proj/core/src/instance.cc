#include "maxmean/instance.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

namespace maxmean {
namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr int kMaxDecimals = 9;

bool InRange(InstanceKind kind, double d) {
  switch (kind) {
    case InstanceKind::kTypeI:
      return d >= -10.0 && d <= 10.0;
    case InstanceKind::kTypeII:
      return std::abs(d) >= 5.0 && std::abs(d) <= 10.0;
    case InstanceKind::kExternal:
      return std::isfinite(d);
  }
  return false;
}

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() &&
           (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' ||
            line[pos] == ',')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r' && line[end] != ',') {
      ++end;
    }
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

struct DataLine {
  int number;
  std::vector<std::string_view> tokens;
};

Instance ParseCanonical(int n, std::span<const DataLine> lines, int last_line,
                        std::string name, InstanceKind kind) {
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<bool> seen(d.size(), false);
  std::size_t count = 0;
  for (const DataLine& line : lines) {
    if (line.tokens.size() != 3) {
      throw ParseError(line.number, "expected 'i j d', found " +
                                        std::to_string(line.tokens.size()) +
                                        " fields");
    }
    int i = 0;
    int j = 0;
    double value = 0.0;
    if (!ParseNumber(line.tokens[0], i) || !ParseNumber(line.tokens[1], j)) {
      throw ParseError(line.number, "element indices must be integers");
    }
    if (!ParseNumber(line.tokens[2], value) || !std::isfinite(value)) {
      throw ParseError(line.number, "distance is not a finite number");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
      throw ParseError(line.number, "index out of range 1.." +
                                        std::to_string(n));
    }
    if (i == j) throw ParseError(line.number, "self-distance entry");
    const std::size_t a = static_cast<std::size_t>(i - 1) * n + (j - 1);
    const std::size_t b = static_cast<std::size_t>(j - 1) * n + (i - 1);
    if (seen[a]) {
      throw ParseError(line.number, "duplicate pair (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
    }
    seen[a] = seen[b] = true;
    d[a] = d[b] = value;
    ++count;
  }
  if (count != expected) {
    throw ParseError(last_line, "expected " + std::to_string(expected) +
                                    " pair lines for n=" + std::to_string(n) +
                                    ", found " + std::to_string(count));
  }
  return Instance(n, std::move(d), std::move(name), kind);
}

Instance ParseFullMatrix(int n, std::span<const DataLine> lines, int last_line,
                         std::string name, InstanceKind kind) {
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<double> raw;
  std::vector<int> origin;
  raw.reserve(total);
  origin.reserve(total);
  for (const DataLine& line : lines) {
    for (std::string_view token : line.tokens) {
      if (raw.size() == total) {
        throw ParseError(line.number, "more than n*n matrix entries");
      }
      double value = 0.0;
      if (!ParseNumber(token, value) || !std::isfinite(value)) {
        throw ParseError(line.number, "matrix entry is not a finite number");
      }
      raw.push_back(value);
      origin.push_back(line.number);
    }
  }
  if (raw.size() != total) {
    throw ParseError(last_line, "expected " + std::to_string(total) +
                                    " matrix entries, found " +
                                    std::to_string(raw.size()));
  }
  std::vector<double> d(total, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t upper = static_cast<std::size_t>(i) * n + j;
      const std::size_t lower = static_cast<std::size_t>(j) * n + i;
      if (std::abs(raw[upper] - raw[lower]) > kSymmetryTolerance) {
        throw ParseError(origin[lower],
                         "matrix not symmetric at (" + std::to_string(i + 1) +
                             "," + std::to_string(j + 1) + ")");
      }
      d[upper] = d[lower] = raw[upper];
    }
  }
  return Instance(n, std::move(d), std::move(name), kind);
}

}  // namespace

std::string_view KindName(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kTypeI:
      return "TypeI";
    case InstanceKind::kTypeII:
      return "TypeII";
    case InstanceKind::kExternal:
      return "External";
  }
  return "External";
}

InstanceKind ParseKind(std::string_view text) {
  if (text == "TypeI" || text == "1" || text == "I") return InstanceKind::kTypeI;
  if (text == "TypeII" || text == "2" || text == "II") {
    return InstanceKind::kTypeII;
  }
  if (text == "External") return InstanceKind::kExternal;
  throw InvalidConfigError("unknown instance kind '" + std::string(text) + "'");
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0
                             ? "line " + std::to_string(line) + ": " + message
                             : message),
      line_(line) {}

Instance::Instance(int n, std::vector<double> distances, std::string name,
                   InstanceKind kind)
    : n_(n), d_(std::move(distances)), name_(std::move(name)), kind_(kind) {
  if (n_ < 2) {
    throw InvalidConfigError("an instance needs at least 2 elements, got " +
                             std::to_string(n_));
  }
  if (d_.size() != static_cast<std::size_t>(n_) * n_) {
    throw InvalidConfigError("distance matrix has " +
                             std::to_string(d_.size()) + " entries, expected " +
                             std::to_string(n_) + "^2");
  }
  for (int i = 0; i < n_; ++i) {
    d_[static_cast<std::size_t>(i) * n_ + i] = 0.0;
    for (int j = i + 1; j < n_; ++j) {
      const double dij = distance(i, j);
      if (dij != distance(j, i)) {
        throw InvalidConfigError("distance matrix not symmetric at (" +
                                 std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
      }
      if (!InRange(kind_, dij)) {
        throw InvalidConfigError("distance " + std::to_string(dij) +
                                 " out of range for " +
                                 std::string(KindName(kind_)));
      }
    }
  }
}

Instance Generate(const GeneratorConfig& config) {
  if (config.n < 2) {
    throw InvalidConfigError("generator needs n >= 2, got " +
                             std::to_string(config.n));
  }
  if (config.decimals < 0 || config.decimals > kMaxDecimals) {
    throw InvalidConfigError("decimals must be in [0, 9], got " +
                             std::to_string(config.decimals));
  }
  if (config.kind == InstanceKind::kExternal) {
    throw InvalidConfigError("generator supports TypeI and TypeII only");
  }
  const int n = config.n;
  const double scale = std::pow(10.0, config.decimals);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> type_one(-10.0, 10.0);
  std::uniform_real_distribution<double> magnitude(5.0, 10.0);
  std::bernoulli_distribution negative(0.5);

  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double value = 0.0;
      if (config.kind == InstanceKind::kTypeI) {
        value = type_one(rng);
      } else {
        const bool neg = negative(rng);
        value = neg ? -magnitude(rng) : magnitude(rng);
      }
      value = std::round(value * scale) / scale;
      d[static_cast<std::size_t>(i) * n + j] = value;
      d[static_cast<std::size_t>(j) * n + i] = value;
    }
  }
  std::string name = std::string(config.kind == InstanceKind::kTypeI ? "gen1"
                                                                     : "gen2") +
                     "_n" + std::to_string(n) + "_s" +
                     std::to_string(config.seed);
  return Instance(n, std::move(d), std::move(name), config.kind);
}

void WriteInstance(const Instance& instance, std::ostream& sink) {
  const int n = instance.size();
  sink << "# maxmean instance\n";
  if (!instance.name().empty()) sink << "# name " << instance.name() << '\n';
  sink << "# kind " << KindName(instance.kind()) << '\n';
  sink << n << '\n';
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf),
                                     instance.distance(i, j));
      sink << (i + 1) << ' ' << (j + 1) << ' '
           << std::string_view(buf, ptr - buf) << '\n';
    }
  }
}

void WriteInstanceFile(const Instance& instance,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  WriteInstance(instance, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Instance ReadInstance(std::istream& source, std::string fallback_name) {
  std::string name = std::move(fallback_name);
  InstanceKind kind = InstanceKind::kExternal;

  // Keep the raw text alive; DataLine tokens are views into it.
  std::vector<std::string> raw_lines;
  for (std::string line; std::getline(source, line);) {
    raw_lines.push_back(std::move(line));
  }

  int n = 0;
  int header_line = 0;
  std::vector<DataLine> data;
  for (std::size_t k = 0; k < raw_lines.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    std::string_view line = Trim(raw_lines[k]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = Trim(line.substr(1));
      if (body.starts_with("name ")) {
        name = std::string(Trim(body.substr(5)));
      } else if (body.starts_with("kind ")) {
        try {
          kind = ParseKind(Trim(body.substr(5)));
        } catch (const InvalidConfigError& e) {
          throw ParseError(number, e.what());
        }
      }
      continue;
    }
    auto tokens = Tokenize(line);
    if (header_line == 0) {
      if (tokens.size() != 1 || !ParseNumber(tokens[0], n)) {
        throw ParseError(number, "malformed header: expected element count n");
      }
      if (n < 2) {
        throw ParseError(number, "element count must be at least 2");
      }
      header_line = number;
      continue;
    }
    data.push_back({number, std::move(tokens)});
  }
  if (header_line == 0) throw ParseError(0, "empty instance: no header line");
  const int last_line = static_cast<int>(raw_lines.size());

  // A full-matrix file starts with a row of n entries. For n = 3 that is also
  // the shape of a pair line; pair lines start with an index >= 1 while a
  // matrix row starts with the zero self-distance.
  bool canonical = true;
  if (!data.empty()) {
    const auto& tokens = data.front().tokens;
    int first = 0;
    const bool pair_like =
        tokens.size() == 3 && ParseNumber(tokens[0], first) && first >= 1;
    canonical = tokens.size() != static_cast<std::size_t>(n) || pair_like;
  }
  try {
    return canonical
               ? ParseCanonical(n, data, last_line, std::move(name), kind)
               : ParseFullMatrix(n, data, last_line, std::move(name), kind);
  } catch (const InvalidConfigError& e) {
    throw ParseError(0, e.what());
  }
}

Instance ReadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  return ReadInstance(in, path.stem().string());
}

}  // namespace maxmean
