#include "mpsched/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace mpsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double value) {
  if (value == kInf) return "inf";
  if (value == -kInf) return "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void append_terms(std::string& out,
                  const std::vector<std::pair<int, double>>& terms,
                  const std::vector<Column>& columns) {
  for (const auto& [col, coeff] : terms) {
    out += coeff < 0.0 ? " -" : " +";
    out += fmt(std::abs(coeff));
    out += ' ';
    out += columns[col].name;
  }
}

const char* sense_text(RowSense sense) {
  switch (sense) {
    case RowSense::le: return "<=";
    case RowSense::ge: return ">=";
    case RowSense::eq: return "=";
  }
  return "=";
}

}  // namespace

std::string export_lp_text(const LinearModel& model) {
  std::string out;
  out += "Minimize\n obj:";
  append_terms(out, model.objective(), model.columns());
  out += "\nSubject To\n";
  for (const Row& row : model.rows()) {
    out += ' ';
    out += row.name;
    out += ':';
    append_terms(out, row.coeffs, model.columns());
    out += ' ';
    out += sense_text(row.sense);
    out += ' ';
    out += fmt(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (const Column& col : model.columns()) {
    out += ' ';
    if (col.lower == -kInf && col.upper == kInf) {
      out += col.name + " free";
    } else if (col.upper == kInf) {
      out += fmt(col.lower) + " <= " + col.name;
    } else {
      out += fmt(col.lower) + " <= " + col.name + " <= " + fmt(col.upper);
    }
    out += '\n';
  }
  out += "Binaries\n";
  for (const Column& col : model.columns()) {
    if (col.type == VarType::binary) {
      out += ' ';
      out += col.name;
      out += '\n';
    }
  }
  out += "End\n";
  return out;
}

namespace {

enum class Section { none, objective, rows, bounds, binaries, done };

struct Token {
  enum Kind { ident, number, sign, sense, colon } kind;
  std::string text;
  double value = 0.0;
  RowSense sense_value = RowSense::le;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '(' || c == ')' || c == '[' || c == ']';
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("LP parse error: " + what);
}

std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\\') {
      break;  // comment to end of line
    } else if (c == ':') {
      tokens.push_back({Token::colon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      RowSense sense = RowSense::eq;
      std::size_t len = 1;
      if (c == '<') sense = RowSense::le;
      if (c == '>') sense = RowSense::ge;
      if (i + 1 < line.size() && line[i + 1] == '=') len = 2;
      tokens.push_back({Token::sense, std::string(line.substr(i, len)), 0.0, sense});
      i += len;
    } else if (c == '+' || c == '-') {
      tokens.push_back({Token::sign, std::string(1, c)});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isdigit(static_cast<unsigned char>(line[j])) ||
              line[j] == '.' || line[j] == 'e' || line[j] == 'E' ||
              ((line[j] == '+' || line[j] == '-') &&
               (line[j - 1] == 'e' || line[j - 1] == 'E'))))
        ++j;
      const auto text = line.substr(i, j - i);
      const auto value = parse_number(text);
      if (!value) bad("bad number '" + std::string(text) + "'");
      tokens.push_back({Token::number, std::string(text), *value});
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      tokens.push_back({Token::ident, std::string(line.substr(i, j - i))});
      i = j;
    } else {
      bad(std::string("unexpected character '") + c + "'");
    }
  }
  return tokens;
}

std::optional<Section> section_header(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens[0].kind != Token::ident) return std::nullopt;
  const std::string head = lower(tokens[0].text);
  if (head == "minimize" || head == "min" || head == "minimise")
    return tokens.size() == 1 ? std::optional(Section::objective) : std::nullopt;
  if (head == "maximize" || head == "max")
    bad("maximization objectives are not supported");
  if ((head == "subject" || head == "such") && tokens.size() == 2 &&
      tokens[1].kind == Token::ident && lower(tokens[1].text) == "to")
    return Section::rows;
  if ((head == "st" || head == "s.t.") && tokens.size() == 1)
    return Section::rows;
  if (head == "bounds" && tokens.size() == 1) return Section::bounds;
  if ((head == "binaries" || head == "binary" || head == "bin") &&
      tokens.size() == 1)
    return Section::binaries;
  if ((head == "general" || head == "generals" || head == "integers") &&
      tokens.size() == 1)
    bad("general integer variables are not supported");
  if (head == "end" && tokens.size() == 1) return Section::done;
  return std::nullopt;
}

struct ParsedBound {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
};

struct Builder {
  std::vector<std::pair<std::string, double>> objective;
  struct RawRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    RowSense sense;
    double rhs;
  };
  std::vector<RawRow> raw_rows;
  std::vector<ParsedBound> bounds;
  std::vector<std::string> binaries;
  int anon_rows = 0;
};

// Reads "[name:] terms [sense rhs]"; sense/rhs present for constraints.
void parse_algebraic_line(const std::vector<Token>& tokens, bool is_row,
                          Builder& out) {
  std::size_t i = 0;
  std::string name;
  if (tokens.size() >= 2 && tokens[0].kind == Token::ident &&
      tokens[1].kind == Token::colon) {
    name = tokens[0].text;
    i = 2;
  } else if (is_row) {
    name = "c" + std::to_string(++out.anon_rows);
  }

  std::vector<std::pair<std::string, double>> terms;
  std::optional<RowSense> sense;
  double rhs = 0.0;
  while (i < tokens.size()) {
    if (tokens[i].kind == Token::sense) {
      sense = tokens[i].sense_value;
      ++i;
      if (i >= tokens.size()) bad("missing right-hand side");
      double sign = 1.0;
      while (i < tokens.size() && tokens[i].kind == Token::sign) {
        if (tokens[i].text == "-") sign = -sign;
        ++i;
      }
      if (i >= tokens.size() || tokens[i].kind != Token::number)
        bad("right-hand side must be a number");
      rhs = sign * tokens[i].value;
      ++i;
      if (i != tokens.size()) bad("trailing tokens after right-hand side");
      break;
    }
    double sign = 1.0;
    while (i < tokens.size() && tokens[i].kind == Token::sign) {
      if (tokens[i].text == "-") sign = -sign;
      ++i;
    }
    double coeff = 1.0;
    if (i < tokens.size() && tokens[i].kind == Token::number) {
      coeff = tokens[i].value;
      ++i;
    }
    if (i >= tokens.size() || tokens[i].kind != Token::ident)
      bad("expected a variable name in '" + name + "'");
    terms.emplace_back(tokens[i].text, sign * coeff);
    ++i;
  }

  if (is_row) {
    if (!sense) bad("constraint '" + name + "' has no sense");
    out.raw_rows.push_back({std::move(name), std::move(terms), *sense, rhs});
  } else {
    if (sense) bad("unexpected relation in the objective");
    for (auto& term : terms) out.objective.push_back(std::move(term));
  }
}

double bound_value(const Token& token, double sign) {
  if (token.kind == Token::number) {
    const double v = sign * token.value;
    if (v >= 1e30) return kInf;
    if (v <= -1e30) return -kInf;
    return v;
  }
  const std::string word = lower(token.text);
  if (word == "inf" || word == "infinity") return sign * kInf;
  bad("expected a bound value, got '" + token.text + "'");
}

void parse_bounds_line(const std::vector<Token>& tokens, Builder& out) {
  // Forms: "x free" | "lb <= x <= ub" | "lb <= x" | "x <= ub" | "x >= lb"
  // | "x = v".
  if (tokens.size() == 2 && tokens[0].kind == Token::ident &&
      tokens[1].kind == Token::ident && lower(tokens[1].text) == "free") {
    out.bounds.push_back({tokens[0].text, -kInf, kInf});
    return;
  }

  auto value_at = [&](std::size_t& i) {
    double sign = 1.0;
    while (i < tokens.size() && tokens[i].kind == Token::sign) {
      if (tokens[i].text == "-") sign = -sign;
      ++i;
    }
    if (i >= tokens.size()) bad("truncated bounds line");
    const double v = bound_value(tokens[i], sign);
    ++i;
    return v;
  };

  std::size_t i = 0;
  if (tokens[0].kind == Token::ident && lower(tokens[0].text) != "inf" &&
      lower(tokens[0].text) != "infinity") {
    // "x sense value"
    const std::string name = tokens[0].text;
    i = 1;
    if (i >= tokens.size() || tokens[i].kind != Token::sense)
      bad("malformed bounds line for '" + name + "'");
    const RowSense sense = tokens[i].sense_value;
    ++i;
    const double v = value_at(i);
    if (i != tokens.size()) bad("trailing tokens in bounds line");
    ParsedBound b{name, 0.0, kInf};
    if (sense == RowSense::ge) b.lower = v;
    else if (sense == RowSense::le) b.upper = v;
    else { b.lower = v; b.upper = v; }
    out.bounds.push_back(std::move(b));
    return;
  }

  // "lb <= x [<= ub]"
  const double lb = value_at(i);
  if (i >= tokens.size() || tokens[i].kind != Token::sense ||
      tokens[i].sense_value != RowSense::le)
    bad("expected '<=' in bounds line");
  ++i;
  if (i >= tokens.size() || tokens[i].kind != Token::ident)
    bad("expected a variable name in bounds line");
  ParsedBound b{tokens[i].text, lb, kInf};
  ++i;
  if (i < tokens.size()) {
    if (tokens[i].kind != Token::sense || tokens[i].sense_value != RowSense::le)
      bad("expected '<=' in bounds line");
    ++i;
    b.upper = value_at(i);
    if (i != tokens.size()) bad("trailing tokens in bounds line");
  }
  out.bounds.push_back(std::move(b));
}

}  // namespace

LinearModel parse_lp_text(std::string_view text) {
  Builder builder;
  Section section = Section::none;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const auto tokens = tokenize_line(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (tokens.empty()) continue;
    if (const auto header = section_header(tokens)) {
      section = *header;
      continue;
    }
    switch (section) {
      case Section::none:
        bad("content before the objective section");
      case Section::objective:
        parse_algebraic_line(tokens, /*is_row=*/false, builder);
        break;
      case Section::rows:
        parse_algebraic_line(tokens, /*is_row=*/true, builder);
        break;
      case Section::bounds:
        parse_bounds_line(tokens, builder);
        break;
      case Section::binaries:
        for (const Token& t : tokens) {
          if (t.kind != Token::ident) bad("binary section expects names");
          builder.binaries.push_back(t.text);
        }
        break;
      case Section::done:
        bad("content after End");
    }
  }

  // Column order: the bounds section is authoritative (the exporter writes
  // every column there), then first appearance elsewhere.
  std::vector<std::string> order;
  std::unordered_map<std::string, int> index;
  auto note = [&](const std::string& name) {
    if (index.emplace(name, static_cast<int>(order.size())).second)
      order.push_back(name);
  };
  for (const auto& b : builder.bounds) note(b.name);
  for (const auto& [name, coeff] : builder.objective) { (void)coeff; note(name); }
  for (const auto& row : builder.raw_rows)
    for (const auto& [name, coeff] : row.terms) { (void)coeff; note(name); }
  for (const auto& name : builder.binaries) note(name);

  std::unordered_map<std::string, ParsedBound> bound_of;
  for (const auto& b : builder.bounds) {
    if (!bound_of.emplace(b.name, b).second)
      bad("duplicate bounds line for '" + b.name + "'");
  }
  std::unordered_map<std::string, bool> is_binary;
  for (const auto& name : builder.binaries) is_binary[name] = true;

  LinearModel model;
  for (const auto& name : order) {
    const bool binary = is_binary.contains(name);
    double lb = 0.0, ub = binary ? 1.0 : kInf;
    if (auto it = bound_of.find(name); it != bound_of.end()) {
      lb = it->second.lower;
      ub = it->second.upper;
    }
    model.add_column(name, lb, ub, binary ? VarType::binary : VarType::continuous);
  }

  std::vector<std::pair<int, double>> objective;
  objective.reserve(builder.objective.size());
  for (const auto& [name, coeff] : builder.objective)
    objective.emplace_back(model.column_index(name), coeff);
  model.set_objective(std::move(objective));

  for (auto& raw : builder.raw_rows) {
    std::vector<std::pair<int, double>> coeffs;
    coeffs.reserve(raw.terms.size());
    for (const auto& [name, coeff] : raw.terms)
      coeffs.emplace_back(model.column_index(name), coeff);
    model.add_row(std::move(raw.name), std::move(coeffs), raw.sense, raw.rhs);
  }
  return model;
}

}  // namespace mpsched
