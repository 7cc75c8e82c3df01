#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "srk/tableau.hpp"

namespace srk {

TableauParseError::TableauParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end)
    throw TableauParseError(line, "not a number: '" + std::string(token) + "'");
  return value;
}

// Decimal literal or p/q fraction.
double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) return parse_plain_number(token, line);
  const double num = parse_plain_number(token.substr(0, slash), line);
  const double den = parse_plain_number(token.substr(slash + 1), line);
  if (den == 0.0) throw TableauParseError(line, "zero denominator in '" + std::string(token) + "'");
  return num / den;
}

std::vector<double> parse_list(std::string_view text, std::size_t line) {
  std::vector<double> values;
  text = trim(text);
  if (text.empty()) throw TableauParseError(line, "empty coefficient list");
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_number(text.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

struct Field {
  std::vector<double> values;
  std::size_t line = 0;
};

}  // namespace

SrkTableau load_tableau(std::string_view text) {
  std::optional<std::size_t> stages;
  std::string name = "custom";
  std::optional<Field> alpha, b1, b2, c;
  std::vector<std::vector<double>> a_rows;
  std::vector<std::size_t> a_row_lines;
  std::size_t a_line = 0;
  bool reading_a = false;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      if (!reading_a) throw TableauParseError(line_no, "expected key=value");
      a_rows.push_back(parse_list(line, line_no));
      a_row_lines.push_back(line_no);
      continue;
    }
    reading_a = false;
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "name") {
      name = std::string(value);
    } else if (key == "s") {
      const double s = parse_plain_number(value, line_no);
      if (s < 1 || s != static_cast<double>(static_cast<std::size_t>(s)))
        throw TableauParseError(line_no, "s must be a positive integer");
      stages = static_cast<std::size_t>(s);
    } else if (key == "A") {
      reading_a = true;
      a_line = line_no;
      if (!value.empty()) {
        a_rows.push_back(parse_list(value, line_no));
        a_row_lines.push_back(line_no);
      }
    } else if (key == "alpha") {
      alpha = Field{parse_list(value, line_no), line_no};
    } else if (key == "b1") {
      b1 = Field{parse_list(value, line_no), line_no};
    } else if (key == "b2") {
      b2 = Field{parse_list(value, line_no), line_no};
    } else if (key == "c") {
      c = Field{parse_list(value, line_no), line_no};
    } else {
      throw TableauParseError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!stages) throw TableauParseError(0, "missing s");
  const std::size_t s = *stages;
  auto check_len = [s](const std::optional<Field>& f, const char* label) {
    if (!f) throw TableauParseError(0, std::string("missing ") + label);
    if (f->values.size() != s)
      throw TableauParseError(f->line, std::string("dimension mismatch: ") + label + " has " +
                                           std::to_string(f->values.size()) +
                                           " entries, s=" + std::to_string(s));
  };
  check_len(alpha, "alpha");
  check_len(b1, "b1");
  check_len(b2, "b2");
  if (c) check_len(c, "c");
  if (a_line == 0) throw TableauParseError(0, "missing A");
  if (a_rows.size() != s)
    throw TableauParseError(a_line, "dimension mismatch: A has " + std::to_string(a_rows.size()) +
                                        " rows, s=" + std::to_string(s));
  for (std::size_t i = 0; i < s; ++i)
    if (a_rows[i].size() != s)
      throw TableauParseError(a_row_lines[i], "dimension mismatch: A row " + std::to_string(i + 1) +
                                                  " has " + std::to_string(a_rows[i].size()) +
                                                  " entries, s=" + std::to_string(s));

  try {
    return SrkTableau::make(std::move(name), std::move(alpha->values), std::move(a_rows),
                            std::move(b1->values), std::move(b2->values),
                            c ? std::move(c->values) : std::vector<double>{});
  } catch (const std::invalid_argument& e) {
    throw TableauParseError(c ? c->line : 0, e.what());
  }
}

SrkTableau load_tableau_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TableauParseError(0, "cannot open tableau file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_tableau(buffer.str());
}

std::string format_tableau(const SrkTableau& t) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto list = [&](std::span<const double> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
    return out;
  };
  const std::size_t s = t.stages();
  std::string out = "name=" + t.name() + "\ns=" + std::to_string(s) + "\nalpha=" +
                    list(t.alpha()) + "\nA=\n";
  for (std::size_t i = 0; i < s; ++i) out += list(t.a_matrix().subspan(i * s, s)) + "\n";
  out += "b1=" + list(t.b1()) + "\nb2=" + list(t.b2()) + "\nc=" + list(t.c()) + "\n";
  return out;
}

}  // namespace srk
