#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twc/channel.hpp"
#include "twc/isd.hpp"
#include "twc/region.hpp"

namespace twc::cli {

/// Channel text format:
///   twc <nx1> <nx2> <ny1> <ny2>
///   W1:   nx1*nx2 rows of ny1 probabilities, x1 major
///   W2:   nx1*nx2 rows of ny2 probabilities
/// '#' starts a comment; line breaks inside a section are free.
/// Errors are ValidationError with "line L, column C:" prefixes.
TwcChannel parse_channel(std::string_view text);

/// ISD structure format:
///   isd <nx1> <nx2> <nz1> <nz2> <nt1> <nt2> <ny1> <ny2>
///   g1: nx2*nz1 integers   f1: nx1*nt1   g2: nx1*nz2   f2: nx2*nt2
///   pz1: nz1 probabilities   pz2: nz2 probabilities
isd::IsdStructure parse_isd(std::string_view text);

/// A model file holds either format; an ISD file also yields its channel.
struct ModelFile {
  TwcChannel channel;
  std::optional<isd::IsdStructure> structure;
};
ModelFile parse_model(std::string_view text);

std::string read_file(const std::string& path);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, std::string_view contents);

/// 12 significant digits.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const CsvTable&) const = default;
};

std::string to_csv(const CsvTable& table);

/// RFC 4180 style reader; every row must match the header width.
CsvTable parse_csv(std::string_view text);

inline const std::vector<std::string> kRegionHeader{"group", "series", "index", "r1_nats",
                                                    "r2_nats"};
inline const std::vector<std::string> kScalarHeader{"name", "value"};

/// Accumulates region vertices and scalar results for one run.
class Report {
 public:
  void add_region(const std::string& group, const std::string& series, const RateRegion& r);
  void add_point(const std::string& group, const std::string& series, RatePair p);
  void add_scalar(const std::string& name, double value);
  void add_scalar(const std::string& name, const std::string& value);
  /// A scalar measured in nats (or nats/s); only these are converted for display in bits.
  void add_rate(const std::string& name, double value);
  void add_note(const std::string& note);

  CsvTable regions() const;
  CsvTable scalars() const;

  /// Human-readable lines followed by the name,value block.
  /// Notes, region summaries and the scalar block. `bits` converts rates
  /// for display only; files written from regions() and scalars() stay in nats.
  std::string text(bool bits = false) const;

  struct Series {
    std::string group;
    std::string series;
    std::vector<RatePair> points;
    bool is_point = false;
  };
  const std::vector<Series>& series() const noexcept { return series_; }

 private:
  std::vector<Series> series_;
  struct Scalar {
    std::string name;
    std::string value;
    std::optional<double> rate;
  };
  std::vector<Scalar> scalars_;
  std::vector<std::string> notes_;
};

struct SvgOptions {
  std::string title;
  std::string unit = "nats";
};

/// 800x600 plot: one polyline per region series, circles for points.
std::string render_svg(const Report& report, const SvgOptions& options);

}  // namespace twc::cli
