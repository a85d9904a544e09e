#include "twc/cli/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "twc/errors.hpp"

namespace twc::cli {

namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    Token t{"", line, column};
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#') {
      t.text += text[i];
      ++i;
      ++column;
    }
    // "W1:0.5" is a section marker followed by a value
    const auto colon = t.text.find(':');
    if (colon != std::string::npos && colon + 1 < t.text.size()) {
      tokens.push_back({t.text.substr(0, colon + 1), t.line, t.column});
      tokens.push_back({t.text.substr(colon + 1), t.line, t.column + colon + 1});
    } else {
      tokens.push_back(std::move(t));
    }
  }
  return tokens;
}

[[noreturn]] void fail_at(const Token& t, const std::string& message) {
  std::ostringstream os;
  os << "line " << t.line << ", column " << t.column << ": " << message;
  throw ValidationError(os.str());
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const noexcept { return pos_ >= tokens_.size(); }

  const Token& peek() const {
    if (done()) throw ValidationError(end_message("unexpected end of input"));
    return tokens_[pos_];
  }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  std::size_t next_count(const char* what) {
    const Token& t = next();
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size())
      fail_at(t, std::string("expected a nonnegative integer for ") + what + ", got '" +
                     t.text + "'");
    return v;
  }

  double next_probability(const char* what) {
    const Token& t = next();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size())
      fail_at(t, std::string("expected a number in ") + what + ", got '" + t.text + "'");
    if (!(v >= 0.0 && v <= 1.0))
      fail_at(t, std::string(what) + " entry " + t.text + " is not a probability");
    return v;
  }

  std::string end_message(const std::string& message) const {
    std::ostringstream os;
    if (tokens_.empty())
      os << "line 1: " << message;
    else
      os << "line " << tokens_.back().line << ": " << message;
    return os.str();
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::vector<double> read_rows(Cursor& cur, const char* section, std::size_t nx1, std::size_t nx2,
                              std::size_t ny) {
  std::vector<double> flat;
  flat.reserve(nx1 * nx2 * ny);
  for (std::size_t x1 = 0; x1 < nx1; ++x1) {
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      const Token first = cur.peek();
      double sum = 0.0;
      const std::size_t begin = flat.size();
      for (std::size_t y = 0; y < ny; ++y) {
        flat.push_back(cur.next_probability(section));
        sum += flat.back();
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(12);
        os << section << " row (x1=" << x1 << ", x2=" << x2 << ") sums to " << sum;
        fail_at(first, os.str());
      }
      for (std::size_t k = begin; k < flat.size(); ++k) flat[k] /= sum;
    }
  }
  return flat;
}

void expect_section(Cursor& cur, const std::string& name) {
  const Token& t = cur.next();
  if (t.text != name) fail_at(t, "expected section '" + name + "', got '" + t.text + "'");
}

void expect_end(const Cursor& cur) {
  if (!cur.done()) fail_at(cur.peek(), "unexpected trailing token '" + cur.peek().text + "'");
}

}  // namespace

TwcChannel parse_channel(std::string_view text) {
  Cursor cur(tokenize(text));
  const Token& magic = cur.next();
  if (magic.text != "twc") fail_at(magic, "channel files start with 'twc', got '" + magic.text + "'");
  ChannelShape shape;
  shape.nx1 = cur.next_count("nx1");
  shape.nx2 = cur.next_count("nx2");
  shape.ny1 = cur.next_count("ny1");
  shape.ny2 = cur.next_count("ny2");
  if (shape.nx1 == 0 || shape.nx2 == 0 || shape.ny1 == 0 || shape.ny2 == 0)
    fail_at(magic, "alphabet sizes must be positive");
  expect_section(cur, "W1:");
  auto w1 = read_rows(cur, "W1", shape.nx1, shape.nx2, shape.ny1);
  expect_section(cur, "W2:");
  auto w2 = read_rows(cur, "W2", shape.nx1, shape.nx2, shape.ny2);
  expect_end(cur);
  return make_channel(shape, std::move(w1), std::move(w2));
}

isd::IsdStructure parse_isd(std::string_view text) {
  Cursor cur(tokenize(text));
  const Token magic = cur.next();
  if (magic.text != "isd") fail_at(magic, "structure files start with 'isd', got '" + magic.text + "'");
  isd::IsdStructure s;
  for (auto* field : {&s.nx1, &s.nx2, &s.nz1, &s.nz2, &s.nt1, &s.nt2, &s.ny1, &s.ny2})
    *field = cur.next_count("alphabet size");
  for (std::size_t v : {s.nx1, s.nx2, s.nz1, s.nz2, s.nt1, s.nt2, s.ny1, s.ny2})
    if (v == 0) fail_at(magic, "alphabet sizes must be positive");

  auto table = [&](std::vector<std::size_t>& out, std::size_t rows, std::size_t cols,
                   std::size_t range, const char* name) {
    out.clear();
    for (std::size_t k = 0; k < rows * cols; ++k) {
      const Token t = cur.peek();
      const std::size_t v = cur.next_count(name);
      if (v >= range)
        fail_at(t, std::string(name) + " value " + t.text + " is outside 0.." +
                       std::to_string(range - 1));
      out.push_back(v);
    }
  };
  auto pmf = [&](std::size_t n, const char* name) {
    const Token first = cur.peek();
    std::vector<double> p;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      p.push_back(cur.next_probability(name));
      sum += p.back();
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream os;
      os.precision(12);
      os << name << " sums to " << sum;
      fail_at(first, os.str());
    }
    for (double& v : p) v /= sum;
    return info::Pmf(std::move(p));
  };

  std::vector<std::string> seen;
  while (!cur.done()) {
    const Token t = cur.next();
    if (std::find(seen.begin(), seen.end(), t.text) != seen.end())
      fail_at(t, "section '" + t.text + "' appears twice");
    if (t.text == "g1:") table(s.g1, s.nx2, s.nz1, s.nt1, "g1");
    else if (t.text == "f1:") table(s.f1, s.nx1, s.nt1, s.ny1, "f1");
    else if (t.text == "g2:") table(s.g2, s.nx1, s.nz2, s.nt2, "g2");
    else if (t.text == "f2:") table(s.f2, s.nx2, s.nt2, s.ny2, "f2");
    else if (t.text == "pz1:") s.pz1 = pmf(s.nz1, "pz1");
    else if (t.text == "pz2:") s.pz2 = pmf(s.nz2, "pz2");
    else fail_at(t, "unknown section '" + t.text + "'");
    seen.push_back(t.text);
  }
  for (const char* name : {"g1:", "f1:", "g2:", "f2:"})
    if (std::find(seen.begin(), seen.end(), name) == seen.end())
      throw ValidationError(cur.end_message(std::string("missing section '") + name + "'"));
  if (std::find(seen.begin(), seen.end(), "pz1:") == seen.end() && s.nz1 != 1)
    throw ValidationError(cur.end_message("missing section 'pz1:'"));
  if (std::find(seen.begin(), seen.end(), "pz2:") == seen.end() && s.nz2 != 1)
    throw ValidationError(cur.end_message("missing section 'pz2:'"));
  s.validate();
  return s;
}

ModelFile parse_model(std::string_view text) {
  const auto tokens = tokenize(text);
  if (!tokens.empty() && tokens.front().text == "isd") {
    auto s = parse_isd(text);
    auto ch = isd::induced_channel(s);
    return {std::move(ch), std::move(s)};
  }
  return {parse_channel(text), std::nullopt};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.flush()) throw ValidationError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += quote(fields[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_field();
      records.push_back(std::move(record));
      record.clear();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ValidationError("csv line " + std::to_string(line) + ": unterminated quote");
  if (field_started || !record.empty()) {
    end_field();
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ValidationError("csv is empty");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size())
      throw ValidationError("csv line " + std::to_string(r + 1) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(records[r].size()));
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

void Report::add_region(const std::string& group, const std::string& series, const RateRegion& r) {
  series_.push_back({group, series, r.vertices, false});
  for (const auto& n : r.notes) add_note(group + "/" + series + ": " + n);
}

void Report::add_point(const std::string& group, const std::string& series, RatePair p) {
  series_.push_back({group, series, {p}, true});
}

void Report::add_scalar(const std::string& name, double value) {
  scalars_.push_back({name, format_number(value), std::nullopt});
}

void Report::add_scalar(const std::string& name, const std::string& value) {
  scalars_.push_back({name, value, std::nullopt});
}

void Report::add_rate(const std::string& name, double value) {
  scalars_.push_back({name, format_number(value), value});
}

void Report::add_note(const std::string& note) {
  if (std::find(notes_.begin(), notes_.end(), note) == notes_.end()) notes_.push_back(note);
}

CsvTable Report::regions() const {
  CsvTable t{kRegionHeader, {}};
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.points.size(); ++i)
      t.rows.push_back({s.group, s.series, std::to_string(i), format_number(s.points[i].r1),
                        format_number(s.points[i].r2)});
  return t;
}

CsvTable Report::scalars() const {
  CsvTable t{kScalarHeader, {}};
  for (const auto& s : scalars_) t.rows.push_back({s.name, s.value});
  return t;
}

std::string Report::text(bool bits) const {
  const double unit = bits ? std::log(2.0) : 1.0;
  const auto show = [unit](double v) { return format_number(v / unit); };
  std::ostringstream os;
  if (bits) os << "# display unit: bits (written files stay in nats)\n";
  for (const auto& n : notes_) os << "# " << n << '\n';
  for (const auto& s : series_) {
    if (s.is_point) {
      os << "# " << s.group << "/" << s.series << ": (" << show(s.points[0].r1) << ", "
         << show(s.points[0].r2) << ")\n";
      continue;
    }
    double m1 = 0.0, m2 = 0.0;
    for (const auto& p : s.points) {
      m1 = std::max(m1, p.r1);
      m2 = std::max(m2, p.r2);
    }
    os << "# " << s.group << "/" << s.series << ": " << s.points.size() << " vertices, max r1 "
       << show(m1) << ", max r2 " << show(m2) << '\n';
  }
  CsvTable t{kScalarHeader, {}};
  for (const auto& s : scalars_) t.rows.push_back({s.name, s.rate ? show(*s.rate) : s.value});
  os << to_csv(t);
  return os.str();
}

std::string render_svg(const Report& report, const SvgOptions& options) {
  constexpr double width = 800, height = 600;
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  double xmax = 0.0, ymax = 0.0;
  for (const auto& s : report.series())
    for (const auto& p : s.points) {
      xmax = std::max(xmax, p.r1);
      ymax = std::max(ymax, p.r2);
    }
  xmax = xmax > 0.0 ? xmax * 1.05 : 1.0;
  ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;
  auto sx = [&](double v) { return left + v / xmax * (width - left - right); };
  auto sy = [&](double v) { return height - bottom - v / ymax * (height - top - bottom); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << options.title
     << "</text>\n";
  os << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(xmax))
     << "\" y2=\"" << num(sy(0)) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(0))
     << "\" y2=\"" << num(sy(ymax)) << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmax * k / 5.0, yv = ymax * k / 5.0;
    os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(sy(0) + 18)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(xv).substr(0, 7)
       << "</text>\n";
    os << "<text x=\"" << num(sx(0) - 6) << "\" y=\"" << num(sy(yv) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(yv).substr(0, 7)
       << "</text>\n";
  }
  os << "<text x=\"400\" y=\"585\" text-anchor=\"middle\" font-size=\"13\">R1 (" << options.unit
     << ")</text>\n";
  os << "<text x=\"18\" y=\"300\" text-anchor=\"middle\" font-size=\"13\" "
        "transform=\"rotate(-90 18 300)\">R2 ("
     << options.unit << ")</text>\n";

  std::size_t colour = 0;
  double legend_y = top + 10;
  for (const auto& s : report.series()) {
    const char* c = palette[colour++ % (sizeof palette / sizeof *palette)];
    if (s.is_point) {
      os << "<circle cx=\"" << num(sx(s.points[0].r1)) << "\" cy=\"" << num(sy(s.points[0].r2))
         << "\" r=\"4\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i)
        os << (i ? " " : "") << num(sx(s.points[i].r1)) << "," << num(sy(s.points[i].r2));
      os << "\"/>\n";
    }
    os << "<text x=\"" << num(width - right - 150) << "\" y=\"" << num(legend_y)
       << "\" font-size=\"11\" fill=\"" << c << "\">" << s.group << " " << s.series << "</text>\n";
    legend_y += 14;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace twc::cli
