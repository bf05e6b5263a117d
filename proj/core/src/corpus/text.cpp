#include "revdetect/corpus/text.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "revdetect/error.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::corpus {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

struct Line {
  std::size_t begin;  // offset of first byte
  std::size_t end;    // offset one past the terminating '\n' (or body end)
  std::string_view text;  // without the line terminator
};

std::vector<Line> split_lines(std::string_view body) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t nl = body.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? body.size() : nl + 1;
    std::string_view text = body.substr(pos, (nl == std::string_view::npos ? body.size() : nl) - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    lines.push_back({pos, end, text});
    pos = end;
  }
  return lines;
}

std::size_t leading_spaces(std::string_view s) {
  std::size_t n = 0;
  while (n < s.size() && s[n] == ' ') ++n;
  return n;
}

// Returns the ATX level (1-6) and title, or level 0.
std::pair<int, std::string_view> atx_heading(std::string_view line) {
  const std::size_t indent = leading_spaces(line);
  if (indent > 3) return {0, {}};
  std::string_view rest = line.substr(indent);
  int level = 0;
  while (level < static_cast<int>(rest.size()) && rest[level] == '#') ++level;
  if (level == 0 || level > 6) return {0, {}};
  rest.remove_prefix(level);
  if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') return {0, {}};
  rest = util::trim(rest);
  // Optional closing sequence of '#'.
  std::size_t close = rest.size();
  while (close > 0 && rest[close - 1] == '#') --close;
  if (close < rest.size() && (close == 0 || rest[close - 1] == ' ' || rest[close - 1] == '\t')) {
    rest = util::trim(rest.substr(0, close));
  }
  return {level, rest};
}

// Level 1 for '=' underlines, 2 for '-', 0 otherwise.
int setext_underline(std::string_view line) {
  const std::size_t indent = leading_spaces(line);
  if (indent > 3) return 0;
  std::string_view rest = util::trim(line.substr(indent));
  if (rest.empty()) return 0;
  const char c = rest.front();
  if (c != '=' && c != '-') return 0;
  if (!std::all_of(rest.begin(), rest.end(), [c](char x) { return x == c; })) return 0;
  return c == '=' ? 1 : 2;
}

bool is_fence(std::string_view line) {
  std::string_view t = line.substr(std::min(leading_spaces(line), line.size()));
  return t.starts_with("```") || t.starts_with("~~~");
}

struct Heading {
  std::size_t begin;
  int level;
  std::string title;
};

std::vector<Heading> find_headings(const std::vector<Line>& lines) {
  std::vector<Heading> headings;
  bool in_fence = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (is_fence(line.text)) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence) continue;
    if (auto [level, title] = atx_heading(line.text); level > 0) {
      headings.push_back({line.begin, level, std::string(title)});
      continue;
    }
    if (i + 1 < lines.size() && !util::trim(line.text).empty() &&
        leading_spaces(line.text) <= 3 && !is_fence(lines[i + 1].text)) {
      if (int level = setext_underline(lines[i + 1].text); level > 0) {
        headings.push_back({line.begin, level, std::string(util::trim(line.text))});
        ++i;
      }
    }
  }
  return headings;
}

std::string render_body(const SectionBody& body, bool itemize) {
  if (const auto* text = std::get_if<std::string>(&body)) {
    std::string_view t = *text;
    while (!t.empty() && is_ascii_space(t.back())) t.remove_suffix(1);
    while (!t.empty() && (t.front() == '\n' || t.front() == '\r')) t.remove_prefix(1);
    return std::string(t);
  }
  std::string out;
  for (const auto& item : std::get<std::vector<std::string>>(body)) {
    std::string_view t = util::trim(item);
    if (t.empty()) continue;
    if (!out.empty()) out += '\n';
    if (itemize) out += "- ";
    out += t;
  }
  return out;
}

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "e.g.", "i.e.", "et al.", "Fig.", "Figs.", "Eq.",  "Eqs.",   "Sec.",
    "Tab.", "Ref.", "Refs.",  "cf.",  "vs.",   "approx.", "resp.", "Dr.",
    "Prof.", "Mr.", "Ms.",    "Mrs.", "No.",   "Thm.", "Def.",   "Alg."};

bool starts_with_bytes(std::string_view s, std::size_t i, std::string_view bytes) {
  return s.substr(i, bytes.size()) == bytes;
}

// Length of a closing quote or bracket at position i, or 0.
std::size_t closer_length(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (starts_with_bytes(s, i, "\xE2\x80\x9D") || starts_with_bytes(s, i, "\xE2\x80\x99")) return 3;
  return 0;
}

bool opens_sentence(std::string_view s, std::size_t i) {
  const char c = s[i];
  if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '"' || c == '\'') return true;
  return starts_with_bytes(s, i, "\xE2\x80\x9C") || starts_with_bytes(s, i, "\xE2\x80\x98");
}

// True if the '.' at `dot` ends a listed abbreviation.
bool ends_abbreviation(std::string_view s, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_ascii_space(s[start - 1])) --start;
  std::string_view token = s.substr(start, dot + 1 - start);
  while (!token.empty() && (token.front() == '(' || token.front() == '[' || token.front() == '"')) {
    token.remove_prefix(1);
  }
  for (std::string_view abbr : kAbbreviations) {
    const auto space = abbr.find(' ');
    if (space == std::string_view::npos) {
      if (token == abbr) return true;
      continue;
    }
    // Two-token abbreviation such as "et al.".
    if (token != abbr.substr(space + 1)) continue;
    std::size_t prev_end = start;
    while (prev_end > 0 && is_ascii_space(s[prev_end - 1])) --prev_end;
    std::size_t prev_start = prev_end;
    while (prev_start > 0 && !is_ascii_space(s[prev_start - 1])) --prev_start;
    if (prev_end > prev_start && s.substr(prev_start, prev_end - prev_start) == abbr.substr(0, space)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string strip_excluded_sections(std::string_view body,
                                    std::span<const std::string> excluded) {
  if (excluded.empty()) return std::string(body);
  std::set<std::string> wanted;
  for (const auto& name : excluded) wanted.insert(normalize_section_name(name));

  const auto lines = split_lines(body);
  const auto headings = find_headings(lines);

  std::vector<std::pair<std::size_t, std::size_t>> cut;
  for (std::size_t h = 0; h < headings.size(); ++h) {
    if (!wanted.contains(normalize_section_name(headings[h].title))) continue;
    if (!cut.empty() && headings[h].begin < cut.back().second) continue;
    std::size_t end = body.size();
    for (std::size_t k = h + 1; k < headings.size(); ++k) {
      if (headings[k].level <= headings[h].level) {
        end = headings[k].begin;
        break;
      }
    }
    cut.emplace_back(headings[h].begin, end);
  }

  std::string out;
  out.reserve(body.size());
  std::size_t pos = 0;
  for (const auto& [b, e] : cut) {
    out.append(body.substr(pos, b - pos));
    pos = e;
  }
  out.append(body.substr(pos));
  if (util::trim(out).empty()) {
    throw InvalidArgument("manuscript body is empty after removing excluded sections");
  }
  return out;
}

void FormatConfig::validate(std::span<const std::string> known_sections) const {
  if (!section_filter) return;
  std::set<std::string> known;
  for (const auto& k : known_sections) known.insert(normalize_section_name(k));
  for (const auto& name : *section_filter) {
    if (!known.contains(normalize_section_name(name))) {
      throw InvalidArgument("section filter names unknown section '" + name + "'");
    }
  }
}

std::string FormatConfig::describe() const {
  std::string out = std::string("headings=") + (include_headings ? "on" : "off") +
                    ",itemize=" + (itemize_lists ? "on" : "off");
  const auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += '|';
      s += x;
    }
    return s;
  };
  if (section_order) out += ",order=" + join(*section_order);
  if (section_filter) out += ",filter=" + join(*section_filter);
  return out;
}

std::string format_review(const Review& review, const FormatConfig& cfg) {
  std::vector<const Section*> selected;
  if (cfg.section_filter) {
    std::set<std::string> keep;
    for (const auto& n : *cfg.section_filter) keep.insert(normalize_section_name(n));
    for (const auto& s : review.sections) {
      if (keep.contains(normalize_section_name(s.name))) selected.push_back(&s);
    }
    if (selected.empty()) {
      throw InvalidArgument("section filter excludes every section of review '" +
                            review.id + "'");
    }
  } else {
    for (const auto& s : review.sections) selected.push_back(&s);
  }
  if (selected.empty()) throw InvalidArgument("review '" + review.id + "' has no sections");

  std::vector<const Section*> ordered;
  if (cfg.section_order) {
    std::vector<bool> used(selected.size(), false);
    for (const auto& name : *cfg.section_order) {
      const std::string wanted = normalize_section_name(name);
      for (std::size_t i = 0; i < selected.size(); ++i) {
        if (!used[i] && normalize_section_name(selected[i]->name) == wanted) {
          ordered.push_back(selected[i]);
          used[i] = true;
        }
      }
    }
    for (std::size_t i = 0; i < selected.size(); ++i) {
      if (!used[i]) ordered.push_back(selected[i]);
    }
  } else {
    ordered = std::move(selected);
  }

  std::string out;
  for (const Section* s : ordered) {
    std::string chunk;
    if (cfg.include_headings) chunk = s->name;
    const std::string body = render_body(s->body, cfg.itemize_lists);
    if (!body.empty()) {
      if (!chunk.empty()) chunk += '\n';
      chunk += body;
    }
    if (chunk.empty()) continue;
    if (!out.empty()) out += "\n\n";
    out += chunk;
  }
  return out;
}

std::span<const std::string_view> sentence_abbreviations() { return kAbbreviations; }

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  const auto emit = [&](std::size_t begin, std::size_t end) {
    std::string s = normalize_whitespace(text.substr(begin, end - begin));
    if (!s.empty()) sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size()) {
      if (text[j] == '.' || text[j] == '!' || text[j] == '?') {
        ++j;
      } else if (std::size_t n = closer_length(text, j); n > 0) {
        j += n;
      } else {
        break;
      }
    }
    if (j >= text.size() || !is_ascii_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < text.size() && is_ascii_space(text[k])) ++k;
    if (k < text.size() && opens_sentence(text, k) &&
        !(c == '.' && j == i + 1 && ends_abbreviation(text, i))) {
      emit(start, j);
      start = j;
    }
    i = k;
  }
  emit(start, text.size());
  return sentences;
}

}  // namespace revdetect::corpus
