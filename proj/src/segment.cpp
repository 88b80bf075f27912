// Copyright 2026 The jguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jguard/segment.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "bundled_data.hpp"
#include "jguard/error.hpp"
#include "jguard/utf8.hpp"
#include "text_util.hpp"

namespace jguard {
namespace {

using text::is_alpha;
using text::is_digit;
using text::is_space;
using text::to_lower;

struct FoldEntry {
  char32_t from;
  char to;
};

// Sorted by code point for binary search.
constexpr std::array<FoldEntry, 47> kConfusables = {{
    {0x0391, 'A'}, {0x0392, 'B'}, {0x0395, 'E'}, {0x0396, 'Z'}, {0x0397, 'H'},
    {0x0399, 'I'}, {0x039A, 'K'}, {0x039C, 'M'}, {0x039D, 'N'}, {0x039F, 'O'},
    {0x03A1, 'P'}, {0x03A4, 'T'}, {0x03A5, 'Y'}, {0x03A7, 'X'}, {0x03BF, 'o'},
    {0x0405, 'S'}, {0x0406, 'I'}, {0x0408, 'J'}, {0x0410, 'A'}, {0x0412, 'B'},
    {0x0415, 'E'}, {0x041A, 'K'}, {0x041C, 'M'}, {0x041D, 'H'}, {0x041E, 'O'},
    {0x0420, 'P'}, {0x0421, 'C'}, {0x0422, 'T'}, {0x0423, 'Y'}, {0x0425, 'X'},
    {0x0430, 'a'}, {0x0435, 'e'}, {0x043E, 'o'}, {0x0440, 'p'}, {0x0441, 'c'},
    {0x0443, 'y'}, {0x0445, 'x'}, {0x0455, 's'}, {0x0456, 'i'}, {0x0458, 'j'},
    {0x04BB, 'h'}, {0x04C0, 'I'}, {0x0501, 'd'}, {0x051B, 'q'}, {0x051D, 'w'},
    {0x13A0, 'D'}, {0x13AA, 'G'},
}};

static_assert(std::is_sorted(kConfusables.begin(), kConfusables.end(),
                             [](const FoldEntry& a, const FoldEntry& b) { return a.from < b.from; }));

bool is_opening(char c) {
  return c == '(' || c == '[' || c == '{' || c == '<' || c == '"' || c == '`' || c == '$' ||
         c == '#' || c == '@';
}

bool is_closing(char c) {
  return c == ')' || c == ']' || c == '}' || c == '>' || c == '"' || c == '\'';
}

// Length of a UTF-8 curly quote at `pos`, or 0. left selects U+2018/U+201C,
// otherwise U+2019/U+201D.
std::size_t curly_quote_at(std::string_view s, std::size_t pos, bool left) {
  if (pos + 3 > s.size() || s[pos] != '\xE2' || s[pos + 1] != '\x80') return 0;
  const char c = s[pos + 2];
  if (left) return (c == '\x98' || c == '\x9C') ? 3 : 0;
  return (c == '\x99' || c == '\x9D') ? 3 : 0;
}

// Same as curly_quote_at but for a quote that *ends* at `end`.
std::size_t curly_quote_before(std::string_view s, std::size_t end) {
  if (end < 3) return 0;
  return curly_quote_at(s, end - 3, false);
}

bool is_internal_split(char c) {
  switch (c) {
    case ';': case '@': case '#': case '$': case '%': case '&': case '?': case '!':
    case '(': case ')': case '[': case ']': case '{': case '}': case '<': case '>':
    case '"':
      return true;
    default:
      return false;
  }
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

bool has_ascii_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_alpha(c); });
}

// The whitespace-delimited word ending at `end` (exclusive), without leading
// brackets or quotes.
std::string_view word_ending_at(std::string_view s, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && !is_space(s[b - 1])) --b;
  while (b < end && (is_opening(s[b]) || s[b] == '\'')) ++b;
  while (b < end) {
    const std::size_t q = curly_quote_at(s, b, true);
    if (q == 0) break;
    b += q;
  }
  return s.substr(b, end - b);
}

// Splits clitics off a word token: n't, 's, 'm, 'd, 're, 've, 'll.
void push_with_clitics(std::string_view word, std::vector<std::string>& out) {
  const std::string lower = to_lower(word);
  auto split_at = [&](std::size_t cut) {
    out.emplace_back(word.substr(0, cut));
    out.emplace_back(word.substr(cut));
  };
  auto ends_with = [&](std::string_view suffix) {
    return lower.size() > suffix.size() && std::string_view(lower).ends_with(suffix);
  };
  for (std::string_view apostrophe : {std::string_view("'"), std::string_view("\xE2\x80\x99")}) {
    const std::string nt = "n" + std::string(apostrophe) + "t";
    if (ends_with(nt) && is_alpha(lower[lower.size() - nt.size() - 1])) {
      split_at(word.size() - nt.size());
      return;
    }
    for (std::string_view tail : {"s", "m", "d", "re", "ve", "ll"}) {
      const std::string clitic = std::string(apostrophe) + std::string(tail);
      if (ends_with(clitic) && is_alpha(lower[lower.size() - clitic.size() - 1])) {
        split_at(word.size() - clitic.size());
        return;
      }
    }
  }
  out.emplace_back(word);
}

// Splits the middle of a chunk at internal punctuation.
void tokenize_body(std::string_view body, std::vector<std::string>& out) {
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) push_with_clitics(body.substr(start, end - start), out);
  };
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    const bool next_is_digit = i + 1 < body.size() && is_digit(body[i + 1]);
    std::size_t len = 0;
    if (is_internal_split(c)) {
      len = 1;
    } else if ((c == ',' || c == ':') && !next_is_digit) {
      len = 1;
    } else if (body.substr(i).starts_with("...")) {
      len = 3;
    } else if (body.substr(i).starts_with("--")) {
      len = 2;
    }
    if (len == 0) {
      ++i;
      continue;
    }
    flush(i);
    out.emplace_back(body.substr(i, len));
    i += len;
    start = i;
  }
  flush(body.size());
}

void tokenize_chunk(std::string_view chunk, bool last_chunk, const AbbreviationList& abbreviations,
                    std::vector<std::string>& out) {
  std::size_t b = 0, e = chunk.size();

  // Leading punctuation.
  while (b < e) {
    if (const std::size_t q = curly_quote_at(chunk, b, true); q > 0) {
      out.emplace_back(chunk.substr(b, q));
      b += q;
    } else if (is_opening(chunk[b]) ||
               (chunk[b] == '\'' && b + 1 < e && !is_digit(chunk[b + 1]))) {
      out.emplace_back(chunk.substr(b, 1));
      ++b;
    } else {
      break;
    }
  }

  // Trailing punctuation, collected in reverse.
  std::vector<std::string_view> trailing;
  bool period_taken = false;
  while (e > b) {
    const std::string_view rest = chunk.substr(b, e - b);
    if (const std::size_t q = curly_quote_before(chunk, e); q > 0 && e - q >= b) {
      trailing.push_back(chunk.substr(e - q, q));
      e -= q;
      continue;
    }
    const char c = chunk[e - 1];
    if (rest.size() >= 3 && rest.ends_with("...")) {
      trailing.push_back(chunk.substr(e - 3, 3));
      e -= 3;
      continue;
    }
    if (is_closing(c) || c == ',' || c == ';' || c == ':' || c == '!' || c == '?') {
      trailing.push_back(chunk.substr(e - 1, 1));
      --e;
      continue;
    }
    if (c == '.' && last_chunk && !period_taken && rest.size() > 1) {
      const std::string_view stem = rest.substr(0, rest.size() - 1);
      const bool keeps_periods = stem.find('.') != std::string_view::npos;
      if (!keeps_periods && !abbreviations.contains(rest)) {
        trailing.push_back(chunk.substr(e - 1, 1));
        --e;
        period_taken = true;
        continue;
      }
    }
    break;
  }

  if (e > b) tokenize_body(chunk.substr(b, e - b), out);
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.emplace_back(*it);
}

// --- tagging helpers -------------------------------------------------------

bool is_be_form(std::string_view lower) {
  return lower == "am" || lower == "is" || lower == "are" || lower == "was" || lower == "were" ||
         lower == "be" || lower == "been" || lower == "being";
}

bool is_perfect_or_passive_aux(std::string_view lower) {
  return is_be_form(lower) || lower == "has" || lower == "have" || lower == "had" ||
         lower == "having" || lower == "'s" || lower == "'re" || lower == "'m" ||
         lower == "'ve" || lower == "get" || lower == "got" || lower == "gets" ||
         lower == "getting";
}

bool is_infinitive_context(std::string_view lower) {
  return lower == "to" || lower == "do" || lower == "does" || lower == "did" || lower == "can" ||
         lower == "could" || lower == "will" || lower == "would" || lower == "shall" ||
         lower == "should" || lower == "may" || lower == "might" || lower == "must" ||
         lower == "'ll" || lower == "'d";
}

bool is_subject_pronoun(std::string_view lower) {
  return lower == "he" || lower == "she" || lower == "it" || lower == "they" || lower == "we" ||
         lower == "i" || lower == "you" || lower == "who";
}

bool is_adverb_like(std::string_view lower) {
  static const std::unordered_set<std::string_view> kWords = {
      "not", "n't", "never", "also", "already", "just", "still", "all", "both", "ever",
      "then", "only", "once", "now", "often", "soon", "later", "since", "again", "even",
      "first", "long", "so", "too", "almost", "well"};
  return kWords.contains(lower) || (lower.size() > 3 && lower.ends_with("ly"));
}

bool is_non_verb_ed(std::string_view lower) {
  static const std::unordered_set<std::string_view> kWords = {
      "need", "seed", "speed", "hundred", "sacred", "naked", "wicked", "indeed", "shred",
      "weed", "greed", "steed", "creed", "deed", "reed", "tweed", "kindred", "rugged",
      "ragged", "beloved", "bled", "fled", "sled", "embed", "infrared", "unprecedented",
      "bred", "biped", "jagged", "crooked", "learned", "wretched"};
  return kWords.contains(lower);
}

bool is_non_verb_ing(std::string_view lower) {
  static const std::unordered_set<std::string_view> kWords = {
      "thing", "king", "string", "wing", "nothing", "something", "anything", "everything",
      "during", "morning", "evening", "ceiling", "wedding", "pudding", "lightning", "ping",
      "sibling", "viking", "darling", "inkling", "spring", "offspring", "awning"};
  return kWords.contains(lower);
}

bool contains(const std::vector<PosTag>& tags, PosTag t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

PosTag parse_tag(std::string_view s) {
  if (s == "VB") return PosTag::kVB;
  if (s == "VBD") return PosTag::kVBD;
  if (s == "VBN") return PosTag::kVBN;
  if (s == "VBZ") return PosTag::kVBZ;
  if (s == "VBP") return PosTag::kVBP;
  if (s == "VBG") return PosTag::kVBG;
  if (s == "MD") return PosTag::kMD;
  throw DataError("unknown tag '" + std::string(s) + "' in verb lexicon");
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::kVB: return "VB";
    case PosTag::kVBD: return "VBD";
    case PosTag::kVBN: return "VBN";
    case PosTag::kVBZ: return "VBZ";
    case PosTag::kVBP: return "VBP";
    case PosTag::kVBG: return "VBG";
    case PosTag::kMD: return "MD";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

std::size_t SegmentedArticle::sentence_count() const {
  std::size_t n = 0;
  for (const Paragraph& p : paragraphs) n += p.sentences.size();
  return n;
}

AbbreviationList AbbreviationList::parse(std::string_view data) {
  AbbreviationList list;
  text::for_each_data_line(data, [&](std::string_view line) {
    list.entries_.insert(to_lower(line));
  });
  return list;
}

bool AbbreviationList::contains(std::string_view word) const {
  return entries_.contains(to_lower(word));
}

std::vector<std::string> AbbreviationList::entries() const {
  std::vector<std::string> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end());
  return out;
}

VerbLexicon VerbLexicon::parse(std::string_view data) {
  VerbLexicon lexicon;
  text::for_each_data_line(data, [&](std::string_view line) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw DataError("verb lexicon line without a tab: '" + std::string(line) + "'");
    }
    std::vector<PosTag> tags;
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const std::size_t bar = rest.find('|');
      tags.push_back(parse_tag(rest.substr(0, bar)));
      if (bar == std::string_view::npos) break;
      rest = rest.substr(bar + 1);
    }
    lexicon.entries_[to_lower(line.substr(0, tab))] = std::move(tags);
  });
  return lexicon;
}

const std::vector<PosTag>& VerbLexicon::lookup(std::string_view lower_form) const {
  static const std::vector<PosTag> kEmpty;
  auto it = entries_.find(std::string(lower_form));
  return it == entries_.end() ? kEmpty : it->second;
}

bool VerbLexicon::is_base_form(std::string_view lower_form) const {
  return contains(lookup(lower_form), PosTag::kVB);
}

const AbbreviationList& bundled_abbreviations() {
  static const AbbreviationList list = AbbreviationList::parse(data::kAbbreviations);
  return list;
}

const VerbLexicon& bundled_verb_lexicon() {
  static const VerbLexicon lexicon = VerbLexicon::parse(data::kVerbLexicon);
  return lexicon;
}

std::string fold_homoglyphs(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const utf8::Unit u = utf8::decode(text, pos);
    if (u.valid && u.code_point >= 0x0391) {
      auto it = std::lower_bound(
          kConfusables.begin(), kConfusables.end(), u.code_point,
          [](const FoldEntry& e, char32_t cp) { return e.from < cp; });
      if (it != kConfusables.end() && it->from == u.code_point) {
        out += it->to;
        pos += u.length;
        continue;
      }
    }
    out.append(text.substr(pos, u.length));
    pos += u.length;
  }
  return out;
}

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view piece = trim(text.substr(pos, end - pos));
    if (has_ascii_letter(piece)) out.emplace_back(piece);
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view paragraph,
                                         const AbbreviationList& abbreviations) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  auto emit = [&](std::size_t end) {
    const std::string_view s = trim(paragraph.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = end;
  };
  while (i < paragraph.size()) {
    const char c = paragraph[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    while (i < paragraph.size() &&
           (paragraph[i] == '.' || paragraph[i] == '!' || paragraph[i] == '?')) {
      ++i;
    }
    const std::size_t run_end = i;
    while (i < paragraph.size()) {
      if (is_closing(paragraph[i])) {
        ++i;
      } else if (const std::size_t q = curly_quote_at(paragraph, i, false); q > 0) {
        i += q;
      } else {
        break;
      }
    }
    if (i < paragraph.size() && !is_space(paragraph[i])) continue;
    if (run_end - run_begin == 1 && paragraph[run_begin] == '.') {
      const std::string_view word = word_ending_at(paragraph, run_end);
      if (abbreviations.contains(word)) continue;
      if (word.size() == 2 && is_alpha(word[0]) && text::is_upper(word[0])) continue;
    }
    const bool ellipsis = run_end - run_begin > 1 && paragraph.find_first_not_of('.', run_begin) >= run_end;
    if (ellipsis || i > run_end) {
      std::size_t next = i;
      while (next < paragraph.size() && is_space(paragraph[next])) ++next;
      if (next < paragraph.size() && is_alpha(paragraph[next]) && !text::is_upper(paragraph[next])) {
        continue;
      }
    }
    emit(i);
  }
  emit(paragraph.size());
  return out;
}

std::vector<std::string> tokenize_words(std::string_view sentence,
                                        const AbbreviationList& abbreviations) {
  std::vector<std::string_view> chunks;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    while (pos < sentence.size() && is_space(sentence[pos])) ++pos;
    const std::size_t begin = pos;
    while (pos < sentence.size() && !is_space(sentence[pos])) ++pos;
    if (pos > begin) chunks.push_back(sentence.substr(begin, pos - begin));
  }
  std::vector<std::string> out;
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    tokenize_chunk(chunks[k], k + 1 == chunks.size(), abbreviations, out);
  }
  return out;
}

std::vector<PosTag> pos_tag(const std::vector<std::string>& tokens, const VerbLexicon& lexicon) {
  const std::size_t n = tokens.size();
  std::vector<std::string> lower(n);
  for (std::size_t i = 0; i < n; ++i) lower[i] = to_lower(tokens[i]);

  // Nearest preceding token that is not adverb-like, within three positions.
  auto context_before = [&](std::size_t i) -> std::string_view {
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      const std::string& prev = lower[i - back];
      if (!is_adverb_like(prev)) return prev;
    }
    return {};
  };

  std::vector<PosTag> tags(n, PosTag::kOther);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = lower[i];
    if (!has_ascii_letter(w)) continue;

    std::vector<PosTag> candidates = lexicon.lookup(w);
    const bool proper_noun = i > 0 && text::is_upper(tokens[i][0]);
    if (candidates.empty() && !proper_noun && std::all_of(w.begin(), w.end(), is_alpha)) {
      if (w.size() >= 4 && w.ends_with("ed") && !is_non_verb_ed(w)) {
        candidates = {PosTag::kVBD, PosTag::kVBN};
      } else if (w.size() >= 5 && w.ends_with("ing") && !is_non_verb_ing(w)) {
        candidates = {PosTag::kVBG};
      } else if (w.size() >= 3 && w.ends_with('s') && !w.ends_with("ss")) {
        const std::string_view stem(w.data(), w.size() - 1);
        const bool known =
            lexicon.is_base_form(stem) ||
            (w.ends_with("es") && lexicon.is_base_form(stem.substr(0, stem.size() - 1))) ||
            (w.ends_with("ies") && lexicon.is_base_form(std::string(w, 0, w.size() - 3) + "y"));
        if (known) candidates = {PosTag::kVBZ};
      }
    }
    if (candidates.empty()) continue;
    if (candidates.size() == 1) {
      tags[i] = candidates.front();
      continue;
    }

    const std::string_view prev = context_before(i);
    const bool followed_by_by = i + 1 < n && lower[i + 1] == "by";
    PosTag chosen = candidates.front();
    if (contains(candidates, PosTag::kVBN) &&
        (is_perfect_or_passive_aux(prev) || followed_by_by)) {
      chosen = PosTag::kVBN;
    } else if (contains(candidates, PosTag::kVB) && is_infinitive_context(prev)) {
      chosen = PosTag::kVB;
    } else if (contains(candidates, PosTag::kVBD) &&
               (!contains(candidates, PosTag::kVB) || is_subject_pronoun(prev))) {
      chosen = PosTag::kVBD;
    } else if (contains(candidates, PosTag::kVB)) {
      chosen = PosTag::kVB;
    }
    tags[i] = chosen;
  }
  return tags;
}

bool is_past_tense(const std::vector<PosTag>& tags) {
  return std::any_of(tags.begin(), tags.end(),
                     [](PosTag t) { return t == PosTag::kVBD || t == PosTag::kVBN; });
}

bool is_passive(const std::vector<std::string>& tokens, const std::vector<PosTag>& tags) {
  if (tokens.size() != tags.size()) throw UsageError("tokens and tags differ in length");
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_be_form(to_lower(tokens[i]))) {
      for (std::size_t k = i + 1; k <= i + 3 && k < n; ++k) {
        if (tags[k] == PosTag::kVBN) return true;
      }
    }
    if (tags[i] == PosTag::kVBN && i + 1 < n && to_lower(tokens[i + 1]) == "by") return true;
  }
  return false;
}

SegmentedArticle segment(std::string_view article_text) {
  const std::string folded = fold_homoglyphs(article_text);
  SegmentedArticle article;
  for (std::string& para_text : split_paragraphs(folded)) {
    Paragraph paragraph;
    for (std::string& sent_text : split_sentences(para_text)) {
      Sentence sentence;
      sentence.tokens = tokenize_words(sent_text);
      if (sentence.tokens.empty()) continue;
      sentence.tags = pos_tag(sentence.tokens);
      sentence.text = std::move(sent_text);
      paragraph.sentences.push_back(std::move(sentence));
    }
    paragraph.text = std::move(para_text);
    article.paragraphs.push_back(std::move(paragraph));
  }
  return article;
}

}  // namespace jguard
