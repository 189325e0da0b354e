#ifndef MAXMEAN_INSTANCE_H_
#define MAXMEAN_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxmean {

// Origin of an instance. TypeI draws distances uniformly from [-10, 10],
// TypeII from [-10, -5] U [5, 10]; External covers anything read from disk
// without a kind annotation.
enum class InstanceKind { kTypeI, kTypeII, kExternal };

std::string_view KindName(InstanceKind kind);
InstanceKind ParseKind(std::string_view text);

class InvalidConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by ReadInstance. `line()` is the 1-based line the problem was found
// on (0 when the problem is the file as a whole, e.g. an empty stream).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// A max-mean dispersion instance: n elements and a symmetric distance matrix
// with a zero diagonal. Immutable once constructed.
class Instance {
 public:
  // `distances` is the full n*n row-major matrix. Throws InvalidConfigError if
  // n < 2, the size is wrong, the matrix is not exactly symmetric, or an entry
  // falls outside the range implied by `kind`. The diagonal is forced to 0.
  Instance(int n, std::vector<double> distances, std::string name = "",
           InstanceKind kind = InstanceKind::kExternal);

  int size() const { return n_; }
  double distance(int i, int j) const {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::span<const double> row(int i) const {
    return {d_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }
  const std::string& name() const { return name_; }
  InstanceKind kind() const { return kind_; }

  friend bool operator==(const Instance& a, const Instance& b) = default;

 private:
  int n_;
  std::vector<double> d_;
  std::string name_;
  InstanceKind kind_;
};

struct GeneratorConfig {
  int n = 0;
  InstanceKind kind = InstanceKind::kTypeI;
  std::uint64_t seed = 0;
  int decimals = 2;
};

// Draws a random TypeI/TypeII instance. Deterministic for a fixed config.
Instance Generate(const GeneratorConfig& config);

// Canonical text format:
//   # comment lines (the writer stores name and kind as "# name ..." and
//   # "# kind ..." so they survive a round trip)
//   n
//   i j d      one line per pair, 1-based, i < j
// Distances are written in shortest round-trip decimal form.
void WriteInstance(const Instance& instance, std::ostream& sink);
void WriteInstanceFile(const Instance& instance,
                       const std::filesystem::path& path);

// Parses the canonical layout, or the alternate full-matrix layout (n rows of
// n reals, symmetric within 1e-9). `fallback_name` is used when the stream
// carries no "# name" comment.
Instance ReadInstance(std::istream& source, std::string fallback_name = "");
Instance ReadInstanceFile(const std::filesystem::path& path);

}  // namespace maxmean

#endif  // MAXMEAN_INSTANCE_H_
