#include <cerrno>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <type_traits>

#include "beamtrain/experiment.hpp"

namespace beamtrain {

namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <class T>
std::string optional_field(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>)
    return format_double(*v);
  else
    return std::to_string(*v);
}

// RFC 4180 records; quoted fields may contain separators and doubled quotes.
std::vector<std::vector<std::string>> split_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
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
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        record.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(record));
        record.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

template <class T>
std::optional<T> parse_number(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("csv: bad value '") + s + "' in column " + column);
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

void write_csv(std::span<const ResultRow> rows, std::ostream& out) {
  std::vector<ResultRow> sorted(rows.begin(), rows.end());
  sort_rows(sorted);
  out << kResultHeader << '\n';
  for (const ResultRow& r : sorted) {
    out << algorithm_name(r.algorithm) << ',' << format_double(r.snr_db) << ',' << r.budget << ','
        << optional_field(r.p_hat) << ',' << optional_field(r.ci_low) << ','
        << optional_field(r.ci_high) << ',' << optional_field(r.trials) << ','
        << optional_field(r.theory_exponent) << ',' << quote(r.status) << '\n';
  }
}

void write_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    const std::error_code ec(errno, std::generic_category());
    throw std::runtime_error("cannot write " + path.string() + ": " + ec.message());
  }
  write_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string() + ": stream error");
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  const auto records = split_records(text);
  if (records.empty()) throw std::runtime_error("csv: missing header");
  std::string header;
  for (const auto& f : records.front()) header += (header.empty() ? "" : ",") + f;
  if (header != kResultHeader) throw std::runtime_error("csv: unexpected header '" + header + "'");

  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9)
      throw std::runtime_error("csv: record " + std::to_string(i) + " has " +
                               std::to_string(f.size()) + " fields");
    ResultRow r;
    const auto algorithm = parse_algorithm(f[0]);
    if (!algorithm) throw std::runtime_error("csv: unknown algorithm '" + f[0] + "'");
    r.algorithm = *algorithm;
    r.snr_db = parse_number<double>(f[1], "snr_db").value_or(0.0);
    r.budget = parse_number<std::uint64_t>(f[2], "budget").value_or(0);
    r.p_hat = parse_number<double>(f[3], "p_hat");
    r.ci_low = parse_number<double>(f[4], "ci_low");
    r.ci_high = parse_number<double>(f[5], "ci_high");
    r.trials = parse_number<std::uint64_t>(f[6], "trials");
    r.theory_exponent = parse_number<double>(f[7], "theory_exponent");
    r.status = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv(text.str());
}

}  // namespace beamtrain
