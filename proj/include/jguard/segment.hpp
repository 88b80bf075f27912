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

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace jguard {

/// Closed Penn-Treebank subset produced by the tagger. Everything that is not
/// a verb form collapses to kOther.
enum class PosTag { kVB, kVBD, kVBN, kVBZ, kVBP, kVBG, kMD, kOther };

std::string_view to_string(PosTag tag);

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<PosTag> tags;  // parallel to tokens

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Paragraph {
  std::string text;
  std::vector<Sentence> sentences;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct SegmentedArticle {
  std::vector<Paragraph> paragraphs;

  std::size_t sentence_count() const;
  friend bool operator==(const SegmentedArticle&, const SegmentedArticle&) = default;
};

/// Lowercase abbreviations (with their periods) that never end a sentence.
class AbbreviationList {
 public:
  /// Parses the stop-list data format: one entry per line, '#' comments.
  static AbbreviationList parse(std::string_view data);

  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> entries() const;

 private:
  std::unordered_set<std::string> entries_;
};

/// Lowercase verb form -> candidate tags, from the bundled lexicon.
class VerbLexicon {
 public:
  /// Parses "<form>\t<TAG>[|<TAG>...]" lines; '#' starts a comment line.
  static VerbLexicon parse(std::string_view data);

  /// Empty when the form is unknown.
  const std::vector<PosTag>& lookup(std::string_view lower_form) const;
  bool is_base_form(std::string_view lower_form) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<PosTag>> entries_;
};

/// The stop-list and lexicon shipped in data/, compiled into the library.
const AbbreviationList& bundled_abbreviations();
const VerbLexicon& bundled_verb_lexicon();

/// Replaces Latin look-alike Cyrillic and Greek code points with their Latin
/// counterparts. Idempotent; every other code point (and any invalid byte) is
/// copied through unchanged.
std::string fold_homoglyphs(std::string_view text);

/// Splits on '\n', trims surrounding whitespace, and drops pieces without an
/// ASCII letter.
std::vector<std::string> split_paragraphs(std::string_view text);

/// Rule-based sentence boundaries at '.', '!' and '?'.
///
/// A terminator run (plus any closing quotes or brackets) ends a sentence only
/// when followed by whitespace or the end of input. A run that is a single
/// '.' does not end a sentence when the word it closes is in the stop-list or
/// is a single-letter initial such as "J.". An ellipsis, or a terminator
/// inside closing quotes or brackets, followed by a lowercase word does not
/// end a sentence either.
std::vector<std::string> split_sentences(std::string_view paragraph,
                                         const AbbreviationList& abbreviations =
                                             bundled_abbreviations());

/// Treebank-style word tokens. Tokens are always substrings of the input, so
/// concatenating them reproduces the sentence with whitespace removed.
///
/// Punctuation splits off except inside numbers ("1,000", "8:30", "3.5");
/// clitics split as do|n't, it|'s, we|'re; a trailing period splits off the
/// last token unless that token is a stop-list abbreviation or keeps other
/// periods ("U.S.").
std::vector<std::string> tokenize_words(std::string_view sentence,
                                        const AbbreviationList& abbreviations =
                                            bundled_abbreviations());

/// Lexicon plus suffix-rule tagger. Ambiguous forms (VBD|VBN and friends) are
/// resolved from the preceding be/have/modal context and a following "by".
std::vector<PosTag> pos_tag(const std::vector<std::string>& tokens,
                            const VerbLexicon& lexicon = bundled_verb_lexicon());

bool is_past_tense(const std::vector<PosTag>& tags);

/// Be-form followed within three tokens by VBN, or VBN followed by "by".
bool is_passive(const std::vector<std::string>& tokens, const std::vector<PosTag>& tags);

/// fold_homoglyphs, then paragraphs, sentences, tokens and tags.
SegmentedArticle segment(std::string_view article_text);

}  // namespace jguard
